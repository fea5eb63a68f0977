#include "wlgnn/relu_net.hpp"

#include <algorithm>
#include <map>

#include "wlgnn/errors.hpp"

namespace wlgnn {

AffineLayer AffineLayer::dense(const std::vector<std::vector<Rational>>& weights, std::vector<Rational> bias,
                               bool apply_relu) {
  if (weights.size() != bias.size()) throw ParameterError("affine layer: weight rows and bias differ in length");
  AffineLayer layer;
  layer.in_dim = weights.empty() ? 0 : weights.front().size();
  layer.apply_relu = apply_relu;
  layer.bias = std::move(bias);
  layer.rows.resize(weights.size());
  for (std::size_t r = 0; r < weights.size(); ++r) {
    if (weights[r].size() != layer.in_dim) throw ParameterError("affine layer: ragged weight matrix");
    for (std::size_t c = 0; c < layer.in_dim; ++c)
      if (sgn(weights[r][c]) != 0) layer.rows[r].push_back({static_cast<std::uint32_t>(c), weights[r][c]});
  }
  return layer;
}

void AffineLayer::apply(std::span<const Rational> x, std::vector<Rational>& out) const {
  out.resize(rows.size());
  Rational term;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Rational& acc = out[r];
    acc = bias[r];
    for (const auto& e : rows[r]) {
      const Rational& xv = x[e.col];
      if (sgn(xv) == 0) continue;
      term = e.value * xv;
      acc += term;
    }
    if (apply_relu && sgn(acc) < 0) acc = 0;
  }
}

ReluNet::ReluNet(std::vector<AffineLayer> layers, std::optional<std::vector<IntInterval>> domain)
    : layers_(std::move(layers)) {
  if (layers_.empty()) throw ParameterError("relu net needs at least one layer");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& layer = layers_[i];
    if (layer.bias.size() != layer.rows.size()) throw ParameterError("layer bias length mismatch");
    if (i > 0 && layer.in_dim != layers_[i - 1].out_dim())
      throw ParameterError("layer " + std::to_string(i) + " input dimension does not chain");
    for (const auto& row : layer.rows)
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k].col >= layer.in_dim) throw ParameterError("weight column out of range");
        if (k > 0 && row[k - 1].col >= row[k].col) throw ParameterError("weight columns must be strictly increasing");
      }
  }
  set_declared_domain(std::move(domain));
}

void ReluNet::set_declared_domain(std::optional<std::vector<IntInterval>> domain) {
  if (domain && domain->size() != input_dim()) throw ParameterError("declared domain must cover every input");
  domain_ = std::move(domain);
}

std::vector<Rational> ReluNet::evaluate(std::span<const Rational> x) const {
  if (x.size() != input_dim())
    throw ParameterError("evaluate: expected " + std::to_string(input_dim()) + " inputs, got " +
                         std::to_string(x.size()));
  std::vector<Rational> cur(x.begin(), x.end());
  std::vector<Rational> next;
  for (const auto& layer : layers_) {
    layer.apply(cur, next);
    std::swap(cur, next);
  }
  return cur;
}

Rational ReluNet::evaluate_scalar(const Rational& x) const {
  auto out = evaluate(std::span<const Rational>(&x, 1));
  if (out.size() != 1) throw ParameterError("evaluate_scalar: net output is not scalar");
  return out.front();
}

std::vector<std::vector<Rational>> ReluNet::activations(std::span<const Rational> x) const {
  if (x.size() != input_dim()) throw ParameterError("activations: input dimension mismatch");
  std::vector<std::vector<Rational>> acts;
  acts.reserve(layers_.size() + 1);
  acts.emplace_back(x.begin(), x.end());
  for (const auto& layer : layers_) {
    std::vector<Rational> next;
    layer.apply(acts.back(), next);
    acts.push_back(std::move(next));
  }
  return acts;
}

NetStats ReluNet::stats() const {
  NetStats s;
  s.depth = layers_.size();
  for (const auto& layer : layers_) {
    if (layer.apply_relu) s.units += layer.out_dim();
    s.width = std::max(s.width, layer.out_dim());
    auto note = [&](const Rational& q) {
      s.max_weight_bits = std::max({s.max_weight_bits, bit_length(q.get_num()), bit_length(q.get_den())});
    };
    for (const auto& row : layer.rows)
      for (const auto& e : row) note(e.value);
    for (const auto& b : layer.bias) note(b);
  }
  return s;
}

ReluNet affine(const std::vector<std::vector<Rational>>& weights, std::vector<Rational> bias) {
  return ReluNet({AffineLayer::dense(weights, std::move(bias), false)});
}

ReluNet identity(std::size_t dim) {
  AffineLayer layer;
  layer.in_dim = dim;
  layer.rows.resize(dim);
  layer.bias.assign(dim, Rational(0));
  for (std::size_t i = 0; i < dim; ++i) layer.rows[i].push_back({static_cast<std::uint32_t>(i), Rational(1)});
  return ReluNet({std::move(layer)});
}

ReluNet compose(const ReluNet& a, const ReluNet& b) {
  if (a.output_dim() != b.input_dim())
    throw ParameterError("compose: output dimension " + std::to_string(a.output_dim()) +
                         " does not match input dimension " + std::to_string(b.input_dim()));
  std::vector<AffineLayer> layers = a.layers();
  layers.insert(layers.end(), b.layers().begin(), b.layers().end());
  return ReluNet(std::move(layers), a.declared_domain());
}

namespace {

// Row of (second * first): sum over entries (c, w) of second-row of w * first.rows[c].
std::vector<AffineLayer::Entry> combine_row(const std::vector<AffineLayer::Entry>& outer, const AffineLayer& inner,
                                            Rational& bias_out) {
  std::map<std::uint32_t, Rational> acc;
  for (const auto& e : outer) {
    bias_out += e.value * inner.bias[e.col];
    for (const auto& f : inner.rows[e.col]) acc[f.col] += e.value * f.value;
  }
  std::vector<AffineLayer::Entry> row;
  row.reserve(acc.size());
  for (auto& [col, value] : acc)
    if (sgn(value) != 0) row.push_back({col, std::move(value)});
  return row;
}

AffineLayer fuse_pair(const AffineLayer& first, const AffineLayer& second) {
  AffineLayer out;
  out.in_dim = first.in_dim;
  out.apply_relu = second.apply_relu;
  out.rows.resize(second.out_dim());
  out.bias = second.bias;
  for (std::size_t r = 0; r < second.out_dim(); ++r) out.rows[r] = combine_row(second.rows[r], first, out.bias[r]);
  return out;
}

std::size_t relu_layer_count(const ReluNet& net) {
  return static_cast<std::size_t>(std::count_if(net.layers().begin(), net.layers().end(),
                                                [](const AffineLayer& l) { return l.apply_relu; }));
}

// Prepends `count` identity ReLU layers acting on the raw input.
ReluNet pad_front(const ReluNet& net, std::size_t count) {
  if (count == 0) return net;
  const std::size_t d = net.input_dim();
  std::vector<AffineLayer> layers;
  for (std::size_t p = 0; p < count; ++p) {
    AffineLayer pad;
    pad.in_dim = p == 0 ? d : 2 * d;
    pad.apply_relu = true;
    pad.bias.assign(2 * d, Rational(0));
    pad.rows.resize(2 * d);
    for (std::size_t j = 0; j < d; ++j) {
      const auto pos = static_cast<std::uint32_t>(p == 0 ? j : 2 * j);
      if (p == 0) {
        pad.rows[2 * j] = {{pos, Rational(1)}};
        pad.rows[2 * j + 1] = {{pos, Rational(-1)}};
      } else {
        pad.rows[2 * j] = {{pos, Rational(1)}, {pos + 1, Rational(-1)}};
        pad.rows[2 * j + 1] = {{pos, Rational(-1)}, {pos + 1, Rational(1)}};
      }
    }
    layers.push_back(std::move(pad));
  }
  // Original first layer now reads (ReLU(x), ReLU(-x)) pairs.
  AffineLayer first = net.layers().front();
  first.in_dim = 2 * d;
  for (auto& row : first.rows) {
    std::vector<AffineLayer::Entry> split;
    split.reserve(2 * row.size());
    for (const auto& e : row) {
      split.push_back({2 * e.col, e.value});
      split.push_back({2 * e.col + 1, -e.value});
    }
    row = std::move(split);
  }
  layers.push_back(std::move(first));
  layers.insert(layers.end(), net.layers().begin() + 1, net.layers().end());
  return ReluNet(std::move(layers), net.declared_domain());
}

ReluNet append_identity(const ReluNet& net) { return compose(net, identity(net.output_dim())); }

}  // namespace

ReluNet fuse_linear(const ReluNet& net) {
  std::vector<AffineLayer> out;
  out.reserve(net.layers().size());
  std::optional<AffineLayer> pending;
  for (const auto& layer : net.layers()) {
    if (pending) {
      AffineLayer merged = fuse_pair(*pending, layer);
      pending.reset();
      if (merged.apply_relu) out.push_back(std::move(merged));
      else pending = std::move(merged);
    } else if (!layer.apply_relu) {
      pending = layer;
    } else {
      out.push_back(layer);
    }
  }
  if (pending) out.push_back(std::move(*pending));
  return ReluNet(std::move(out), net.declared_domain());
}

ReluNet parallel(const std::vector<ReluNet>& nets) {
  if (nets.empty()) throw ParameterError("parallel: no nets given");
  const std::size_t in_dim = nets.front().input_dim();
  for (const auto& n : nets)
    if (n.input_dim() != in_dim) throw ParameterError("parallel: nets must share the input dimension");

  std::vector<ReluNet> branches;
  branches.reserve(nets.size());
  for (const auto& n : nets) branches.push_back(fuse_linear(n));
  // After fusion each branch is R...R optionally followed by one linear layer.
  const bool any_linear_tail = std::any_of(branches.begin(), branches.end(),
                                           [](const ReluNet& n) { return !n.layers().back().apply_relu; });
  std::size_t max_relu = 0;
  for (const auto& n : branches) max_relu = std::max(max_relu, relu_layer_count(n));
  for (auto& n : branches) {
    if (any_linear_tail && n.layers().back().apply_relu) n = append_identity(n);
    n = pad_front(n, max_relu - relu_layer_count(n));
  }

  const std::size_t depth = branches.front().layers().size();
  std::vector<AffineLayer> merged(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    AffineLayer& layer = merged[i];
    layer.apply_relu = branches.front().layers()[i].apply_relu;
    std::uint32_t col_offset = 0;
    for (const auto& n : branches) {
      const AffineLayer& src = n.layers()[i];
      layer.in_dim = i == 0 ? in_dim : layer.in_dim + src.in_dim;
      for (std::size_t r = 0; r < src.out_dim(); ++r) {
        std::vector<AffineLayer::Entry> row = src.rows[r];
        if (i > 0)
          for (auto& e : row) e.col += col_offset;
        layer.rows.push_back(std::move(row));
        layer.bias.push_back(src.bias[r]);
      }
      if (i > 0) col_offset += static_cast<std::uint32_t>(src.in_dim);
    }
  }
  return ReluNet(std::move(merged), nets.front().declared_domain());
}

}  // namespace wlgnn
