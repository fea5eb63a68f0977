#include "wlgnn/construction.hpp"
#include "wlgnn/errors.hpp"
#include "wlgnn/gadgets.hpp"

namespace wlgnn {
namespace {

void check_size(std::int64_t F, std::int64_t n, const CompileOptions& opts) {
  if (F > opts.max_field)
    throw ParameterError("F = " + std::to_string(F) + " exceeds the compile cap of " + std::to_string(opts.max_field));
  if (n < 1) throw ParameterError("n must be positive");
}

ReluNet indicator_bank(std::int64_t F) {
  std::vector<ReluNet> bank;
  bank.reserve(static_cast<std::size_t>(F));
  for (std::int64_t i = 0; i < F; ++i) bank.push_back(build_indicator(i));
  return parallel(bank);
}

ReluNet dot_layer(const std::vector<Rational>& coeffs) {
  AffineLayer layer;
  layer.in_dim = coeffs.size();
  layer.rows.resize(1);
  layer.bias.assign(1, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (sgn(coeffs[i]) != 0) layer.rows[0].push_back({static_cast<std::uint32_t>(i), coeffs[i]});
  return ReluNet({std::move(layer)});
}

}  // namespace

ReluNet compile_phi_c1(const IterationWeights& w, std::int64_t F, std::int64_t n, const CompileOptions& opts) {
  check_size(F, n, opts);
  if (w.variant != Variant::C1 || w.F != F) throw ParameterError("weights do not match a C1 construction over F");
  std::vector<Rational> a(static_cast<std::size_t>(F));
  for (std::int64_t i = 0; i < F; ++i) a[static_cast<std::size_t>(i)] = Rational(static_cast<long>(w.a(i)));
  ReluNet net = fuse_linear(compose(compose(dot_layer(a), build_mod(F, n * F)), indicator_bank(F)));
  net.set_declared_domain(std::vector<IntInterval>(static_cast<std::size_t>(F), IntInterval{0, n}));
  return net;
}

ReluNet compile_phi_c2(const IterationWeights& w, std::int64_t F, std::int64_t n, int t, const CompileOptions& opts) {
  check_size(F, n, opts);
  if (w.variant != Variant::C2 || w.F != F || w.b.size() != static_cast<std::size_t>(t) ||
      w.bits.size() != static_cast<std::size_t>(t))
    throw ParameterError("weights do not match a C2 construction over F with width t");
  std::vector<Rational> b(static_cast<std::size_t>(t));
  for (int j = 0; j < t; ++j) b[static_cast<std::size_t>(j)] = Rational(static_cast<long>(w.b[static_cast<std::size_t>(j)]));

  // Selection: bit j = sum over i of a^j(i) * [z = i].
  AffineLayer select;
  select.in_dim = static_cast<std::size_t>(F);
  select.rows.resize(static_cast<std::size_t>(t));
  select.bias.assign(static_cast<std::size_t>(t), 0);
  for (int j = 0; j < t; ++j) {
    const auto table = w.bits[static_cast<std::size_t>(j)].materialize();
    for (std::int64_t i = 0; i < F; ++i)
      if (table[static_cast<std::size_t>(i)]) select.rows[static_cast<std::size_t>(j)].push_back({static_cast<std::uint32_t>(i), 1});
  }

  const std::int64_t domain = n * static_cast<std::int64_t>(t) * F;
  ReluNet net = fuse_linear(
      compose(compose(compose(dot_layer(b), build_mod(F, domain)), indicator_bank(F)), ReluNet({std::move(select)})));
  net.set_declared_domain(std::vector<IntInterval>(static_cast<std::size_t>(t), IntInterval{0, n}));
  return net;
}

}  // namespace wlgnn
