#include "wlgnn/gadgets.hpp"

#include <algorithm>

#include "wlgnn/errors.hpp"

namespace wlgnn {
namespace {

Rational q(long num, long den = 1) { return make_rational(num, den); }

AffineLayer layer_of(std::size_t in_dim, std::vector<std::vector<AffineLayer::Entry>> rows, std::vector<Rational> bias,
                     bool relu) {
  AffineLayer l;
  l.in_dim = in_dim;
  l.rows = std::move(rows);
  l.bias = std::move(bias);
  l.apply_relu = relu;
  return l;
}

std::optional<std::vector<IntInterval>> scalar_domain(std::int64_t lo, std::int64_t hi) {
  return std::vector<IntInterval>{{lo, hi}};
}

}  // namespace

Rational triangular_wave_value(const Rational& half_period, const Rational& x) {
  const Rational period = 2 * half_period;
  // r = x - period * floor(x / period)
  Rational ratio = x / period;
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
  Rational r = x - period * Rational(fl);
  return r <= half_period ? r : period - r;
}

ReluNet build_triangular_wave(const Rational& half_period, std::int64_t domain_max) {
  if (sgn(half_period) <= 0) throw ParameterError("triangular wave: half period must be positive");
  const Rational d(domain_max);
  if (d < 2 * half_period) throw ParameterError("triangular wave: domain must cover at least one full period");

  const BigInt periods = ceil_of(d / (2 * half_period));
  BigInt padded = 1;
  int doublings = 0;
  while (padded < periods) {
    padded *= 2;
    ++doublings;
  }
  const int tents = doublings + 1;
  const Rational span_len = 2 * half_period * Rational(padded);

  std::vector<AffineLayer> layers;
  const Rational inv = 1 / span_len;
  layers.push_back(layer_of(1, {{{0, inv}}, {{0, inv}}}, {q(0), q(-1, 2)}, true));
  for (int i = 1; i < tents; ++i)
    layers.push_back(layer_of(2, {{{0, q(2)}, {1, q(-4)}}, {{0, q(2)}, {1, q(-4)}}}, {q(0), q(-1, 2)}, true));
  layers.push_back(layer_of(2, {{{0, 2 * half_period}, {1, -4 * half_period}}}, {q(0)}, false));
  return ReluNet(std::move(layers), scalar_domain(0, domain_max));
}

ReluNet build_modulus_net(std::int64_t modulus, std::int64_t domain_max) {
  if (modulus < 2) throw ParameterError("modulus net: modulus must be >= 2");
  if (domain_max < 0) throw ParameterError("modulus net: domain must be nonnegative");
  const Rational m(modulus);
  const std::int64_t wave_domain = domain_max + 2 * modulus;
  // Shift by -(M-1)/2, lifted by one full period 2M so every argument stays
  // inside [0, wave_domain].
  const Rational shift = 2 * m - (m - 1) / 2;

  const ReluNet shifted = affine({{q(1)}}, {shift});
  const ReluNet wave = build_triangular_wave(m, wave_domain);
  const ReluNet half_wave = build_triangular_wave(m / 2, wave_domain);
  const ReluNet branches = parallel({compose(shifted, wave), compose(shifted, half_wave), wave});

  // Inputs: (A, B, C) = (TW_M(s), TW_{M/2}(s), TW_M(z)).
  std::vector<AffineLayer> tail;
  // u = ReLU(1 - A + B); C >= 0 passes through unchanged.
  tail.push_back(layer_of(3, {{{0, q(-1)}, {1, q(1)}}, {{2, q(1)}}}, {q(1), q(0)}, true));
  // g = ReLU(1 - u) in {0, 1}.
  tail.push_back(layer_of(2, {{{0, q(-1)}}, {{1, q(1)}}}, {q(1), q(0)}, true));
  // ReLU(2M g - 2C), g, C.
  tail.push_back(layer_of(2, {{{0, 2 * m}, {1, q(-2)}}, {{0, q(1)}}, {{1, q(1)}}}, {q(0), q(0), q(0)}, true));
  tail.push_back(layer_of(3, {{{0, q(1)}, {1, -m}, {2, q(1)}}}, {q(0)}, false));

  ReluNet net = fuse_linear(compose(branches, ReluNet(std::move(tail))));
  net.set_declared_domain(scalar_domain(0, domain_max));
  return net;
}

ReluNet build_mod(std::int64_t F, std::int64_t domain_max) {
  if (F < 3 || F % 2 == 0) throw ParameterError("mod net: F must be an odd integer >= 3");
  if (domain_max < F) throw ParameterError("mod net: domain must be at least F");
  return build_modulus_net(F, domain_max);
}

ReluNet build_indicator(std::int64_t i) {
  const Rational target(i);
  std::vector<AffineLayer> layers;
  // r1 = ReLU(2(z-i) - 1/2), r2 = ReLU(2(z-i) + 1)
  layers.push_back(layer_of(1, {{{0, q(2)}}, {{0, q(2)}}}, {-2 * target - q(1, 2), -2 * target + 1}, true));
  // a = 1 - r1, b = r2: ReLU(a), ReLU(-a), ReLU(a - b)
  layers.push_back(layer_of(2, {{{0, q(-1)}}, {{0, q(1)}}, {{0, q(-1)}, {1, q(-1)}}}, {q(1), q(-1), q(1)}, true));
  // ReLU(min(a, b)) = ReLU(a - ReLU(a - b))
  layers.push_back(layer_of(3, {{{0, q(1)}, {1, q(-1)}, {2, q(-1)}}}, {q(0)}, true));
  return ReluNet(std::move(layers));
}

ReluNet build_threshold(std::span<const std::int64_t> a, std::int64_t theta, std::int64_t m) {
  if (a.empty()) throw ParameterError("threshold: need at least one input");
  const std::int64_t base = std::max<std::int64_t>(m, 2);
  const std::int64_t cap = base * base * base;
  auto check = [&](std::int64_t v) {
    if (v > cap || v < -cap)
      throw ParameterError("threshold: magnitude " + std::to_string(v) + " exceeds cap " + std::to_string(cap));
  };
  for (auto v : a) check(v);
  check(theta);
  std::vector<AffineLayer::Entry> row;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != 0) row.push_back({static_cast<std::uint32_t>(k), Rational(-a[k])});
  std::vector<AffineLayer> layers;
  layers.push_back(layer_of(a.size(), {std::move(row)}, {Rational(theta)}, true));
  layers.push_back(layer_of(1, {{{0, q(-1)}}}, {q(1)}, true));
  return ReluNet(std::move(layers));
}

ReluNet build_bit_extract(int j, std::int64_t F, std::int64_t n) {
  if (F < 2) throw ParameterError("bit extract: F must be >= 2");
  if (n < 1) throw ParameterError("bit extract: n must be >= 1");
  int max_bit = 0;
  while ((std::int64_t{1} << max_bit) < F) ++max_bit;
  if (j < 0 || j > max_bit) throw ParameterError("bit extract: j must lie in [0, ceil(log2 F)]");
  const std::int64_t modulus = std::int64_t{1} << (j + 1);
  const std::int64_t half = std::int64_t{1} << j;
  const std::int64_t one[] = {1};
  ReluNet net = fuse_linear(compose(build_modulus_net(modulus, n * F), build_threshold(one, half, modulus)));
  net.set_declared_domain(scalar_domain(0, n * F));
  return net;
}

namespace {

// Pre-activation values of layer `index` at x.
std::vector<Rational> pre_activation(const ReluNet& net, std::size_t index, const Rational& x) {
  std::vector<Rational> cur{x};
  std::vector<Rational> next;
  for (std::size_t i = 0; i < index; ++i) {
    net.layers()[i].apply(cur, next);
    std::swap(cur, next);
  }
  AffineLayer linear = net.layers()[index];
  linear.apply_relu = false;
  linear.apply(cur, next);
  return next;
}

}  // namespace

std::size_t count_breakpoints_1d(const ReluNet& net, const Rational& lo, const Rational& hi) {
  if (net.input_dim() != 1) throw ParameterError("breakpoints: net must have a single input");
  if (hi <= lo) throw ParameterError("breakpoints: empty interval");
  std::vector<Rational> cuts{lo, hi};
  for (std::size_t li = 0; li < net.layers().size(); ++li) {
    if (!net.layers()[li].apply_relu) continue;
    std::vector<std::vector<Rational>> pre;
    pre.reserve(cuts.size());
    for (const auto& c : cuts) pre.push_back(pre_activation(net, li, c));
    std::vector<Rational> roots;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      for (std::size_t u = 0; u < pre[i].size(); ++u) {
        const Rational& left = pre[i][u];
        const Rational& right = pre[i + 1][u];
        if ((sgn(left) < 0 && sgn(right) > 0) || (sgn(left) > 0 && sgn(right) < 0))
          roots.push_back(cuts[i] + (cuts[i + 1] - cuts[i]) * left / (left - right));
      }
    }
    cuts.insert(cuts.end(), roots.begin(), roots.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }
  std::vector<std::vector<Rational>> values;
  values.reserve(cuts.size());
  for (const auto& c : cuts) values.push_back(net.evaluate(std::span<const Rational>(&c, 1)));
  std::size_t breakpoints = 0;
  for (std::size_t i = 1; i + 1 < cuts.size(); ++i) {
    const Rational left_width = cuts[i] - cuts[i - 1];
    const Rational right_width = cuts[i + 1] - cuts[i];
    for (std::size_t o = 0; o < values[i].size(); ++o) {
      const Rational left_slope = (values[i][o] - values[i - 1][o]) / left_width;
      const Rational right_slope = (values[i + 1][o] - values[i][o]) / right_width;
      if (left_slope != right_slope) {
        ++breakpoints;
        break;
      }
    }
  }
  return breakpoints;
}

}  // namespace wlgnn
