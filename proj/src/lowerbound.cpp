#include "wlgnn/lowerbound.hpp"

#include <cmath>
#include <set>

#include "wlgnn/errors.hpp"
#include "wlgnn/gadgets.hpp"
#include "wlgnn/generators.hpp"
#include "wlgnn/primes.hpp"
#include "wlgnn/random.hpp"
#include "wlgnn/small_bias.hpp"
#include "wlgnn/wl.hpp"

namespace wlgnn {
namespace {

void check_hash_pair(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y, std::int64_t F) {
  if (x.size() != y.size() || x.empty()) throw ParameterError("vectors must be nonempty and of equal length");
  if (x == y) throw ParameterError("vectors must differ");
  std::int64_t max_entry = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || y[i] < 0) throw ParameterError("entries must be nonnegative");
    max_entry = std::max({max_entry, x[i], y[i]});
  }
  if (F <= 2 * max_entry) throw ParameterError("F must exceed twice the largest entry");
  if (!is_prime(static_cast<std::uint64_t>(F))) throw ParameterError("F must be prime");
}

std::int64_t diff_dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& d, std::int64_t F) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = (s + a[i] * (d[i] % F + F)) % F;
  return s;
}

std::vector<std::int64_t> difference(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
  std::vector<std::int64_t> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return d;
}

Rational draw_weight(SplitMix& rng) { return make_rational(static_cast<long>(rng.below(65)) - 32, 16); }

void walsh_hadamard(std::vector<std::int64_t>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1)
    for (std::size_t i = 0; i < v.size(); i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
}

}  // namespace

CollisionReport hash_collision_rate(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y,
                                    std::int64_t F, std::int64_t samples, std::uint64_t seed) {
  check_hash_pair(x, y, F);
  if (samples < 1) throw ParameterError("samples must be positive");
  const auto d = difference(x, y);
  SplitMix rng(seed);
  std::vector<std::int64_t> a(x.size());
  CollisionReport r;
  r.trials = samples;
  r.bound = make_rational(1, static_cast<long>(F));
  r.context = "Monte-Carlo over uniform a in [F]^" + std::to_string(x.size()) + ", F = " + std::to_string(F);
  for (std::int64_t s = 0; s < samples; ++s) {
    for (auto& v : a) v = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(F)));
    if (diff_dot(a, d, F) == 0) ++r.collisions;
  }
  return r;
}

CollisionReport hash_collision_enum(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y,
                                    std::int64_t F) {
  check_hash_pair(x, y, F);
  std::int64_t total = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    total *= F;
    if (total > 10'000'000) throw ParameterError("F^dim too large for enumeration");
  }
  const auto d = difference(x, y);
  std::vector<std::int64_t> a(x.size(), 0);
  CollisionReport r;
  r.trials = total;
  r.bound = make_rational(1, static_cast<long>(F));
  r.context = "enumeration over all of [F]^" + std::to_string(x.size()) + ", F = " + std::to_string(F);
  for (std::int64_t s = 0; s < total; ++s) {
    if (diff_dot(a, d, F) == 0) ++r.collisions;
    for (std::size_t i = 0; i < a.size() && ++a[i] == F; ++i) a[i] = 0;
  }
  return r;
}

Rational inner_product_collision_enum(int m, const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
  if (m < 1 || m > 20) throw ParameterError("m must lie in [1, 20]");
  if (x.size() != static_cast<std::size_t>(m) || y.size() != static_cast<std::size_t>(m))
    throw ParameterError("vectors must have length m");
  if (x == y) throw ParameterError("vectors must differ");
  const auto d = difference(x, y);
  std::int64_t hits = 0;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t a = 0; a < total; ++a) {
    std::int64_t s = 0;
    for (int i = 0; i < m; ++i)
      if ((a >> i) & 1) s += d[static_cast<std::size_t>(i)];
    if (s == 0) ++hits;
  }
  return make_ratio(BigInt(static_cast<long>(hits)), BigInt(static_cast<unsigned long>(total)));
}

Rational max_bias_of_counts(std::vector<std::int64_t> counts, int F, Rational* singleton) {
  if (counts.size() != (std::size_t{1} << F)) throw ParameterError("count table must have 2^F entries");
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  if (total <= 0) throw ParameterError("empty distribution");
  walsh_hadamard(counts);
  std::int64_t best = 0, best_single = 0;
  for (std::size_t I = 1; I < counts.size(); ++I) {
    const std::int64_t v = std::abs(counts[I]);
    best = std::max(best, v);
    if ((I & (I - 1)) == 0) best_single = std::max(best_single, v);
  }
  if (singleton) *singleton = make_ratio(BigInt(static_cast<long>(best_single)), BigInt(static_cast<long>(total)));
  return make_ratio(BigInt(static_cast<long>(best)), BigInt(static_cast<long>(total)));
}

BiasReport aghp_bias_check(int F, const Rational& epsilon) {
  if (F < 1 || F > 16) throw ParameterError("aghp_bias_check supports 1 <= F <= 16");
  BiasReport r;
  r.k = aghp_degree(F, epsilon);
  if (r.k > 12) throw ParameterError("field too large for full seed enumeration");
  const Gf2k field(r.k);
  const std::uint64_t size = std::uint64_t{1} << r.k;
  std::vector<std::int64_t> counts(std::size_t{1} << F, 0);
  for (std::uint64_t x = 0; x < size; ++x)
    for (std::uint64_t y = 0; y < size; ++y) {
      const auto bits = BitSource::aghp(field, x, y, F).materialize();
      std::size_t s = 0;
      for (int i = 0; i < F; ++i) s |= static_cast<std::size_t>(bits[static_cast<std::size_t>(i)]) << i;
      ++counts[s];
    }
  r.seeds = size * size;
  r.max_bias = max_bias_of_counts(std::move(counts), F, &r.max_singleton_bias);
  r.analytic_bound = make_ratio(BigInt(F - 1), BigInt(static_cast<unsigned long>(size)));
  return r;
}

BiasReport uniform_bias_check(int F) {
  if (F < 1 || F > 20) throw ParameterError("uniform_bias_check supports 1 <= F <= 20");
  BiasReport r;
  r.seeds = std::uint64_t{1} << F;
  std::vector<std::int64_t> counts(r.seeds);
  for (std::uint64_t s = 0; s < r.seeds; ++s) {
    const auto table = BitSource::table([&] {
      std::vector<std::uint8_t> b(static_cast<std::size_t>(F));
      for (int i = 0; i < F; ++i) b[static_cast<std::size_t>(i)] = (s >> i) & 1;
      return b;
    }());
    std::size_t idx = 0;
    for (int i = 0; i < F; ++i) idx |= static_cast<std::size_t>(table.bit(i)) << i;
    ++counts[idx];
  }
  r.max_bias = max_bias_of_counts(std::move(counts), F, &r.max_singleton_bias);
  r.analytic_bound = 0;
  return r;
}

ReluNet random_combine_net(int t, int H, std::uint64_t seed) {
  if (t < 1 || H < 0) throw ParameterError("need t >= 1 and H >= 0");
  SplitMix rng(seed);
  auto dense = [&](std::size_t rows, std::size_t cols, bool relu) {
    std::vector<std::vector<Rational>> w(rows, std::vector<Rational>(cols));
    std::vector<Rational> b(rows);
    for (auto& row : w)
      for (auto& v : row) v = draw_weight(rng);
    for (auto& v : b) v = draw_weight(rng);
    return AffineLayer::dense(w, std::move(b), relu);
  };
  const auto ut = static_cast<std::size_t>(t);
  if (H == 0) return ReluNet({dense(1, ut, false)});
  return ReluNet({dense(static_cast<std::size_t>(H), ut, true), dense(1, static_cast<std::size_t>(H), false)});
}

PathPairReport path_pair_collision_experiment(int n0, std::int64_t F, int H, int trials, std::uint64_t seed, int t) {
  if (n0 < 1 || trials < 1 || t < 1 || H < 0) throw ParameterError("need n0, trials, t >= 1 and H >= 0");
  if (!is_prime(static_cast<std::uint64_t>(F)) || F < 3) throw ParameterError("F must be a prime >= 3");
  if (H > 30) throw ParameterError("H must be at most 30");
  PathPairReport out;
  out.report.trials = trials;
  out.report.context = "path pairs n0 = " + std::to_string(n0) + ", F = " + std::to_string(F) + ", H = " +
                       std::to_string(H) + ", t = " + std::to_string(t);
  // Lower bound on the per-pair collision probability, clipped at 0.
  Rational per_pair = 1 - make_ratio(BigInt(12) * (BigInt(1) << H), BigInt(static_cast<long>(F)));
  out.report.bound = per_pair < 0 ? Rational(0) : per_pair;

  for (int trial = 0; trial < trials; ++trial) {
    const PathPairs pp = gen_path_pairs(n0, F, t, derive_key(seed, {1, static_cast<std::uint64_t>(trial)}));
    const ReluNet phi = random_combine_net(t, H, derive_key(seed, {2, static_cast<std::uint64_t>(trial)}));
    const NodeId n = pp.graph.num_nodes();
    std::vector<Rational> value(static_cast<std::size_t>(n));
    std::vector<Rational> x(static_cast<std::size_t>(t));
    for (NodeId v = 0; v < n; ++v) {
      auto in = pp.input(v);
      for (int c = 0; c < t; ++c) x[static_cast<std::size_t>(c)] = Rational(static_cast<long>(in[static_cast<std::size_t>(c)]));
      value[static_cast<std::size_t>(v)] = phi.evaluate(x)[0];
    }
    auto z = [&](NodeId v) {
      Rational s = value[static_cast<std::size_t>(v)];
      for (NodeId u : pp.graph.neighbors(v)) s += value[static_cast<std::size_t>(u)];
      return s;
    };
    bool any = false;
    for (int j = 0; j < n0; ++j) {
      ++out.pairs;
      if (z(6 * j + 1) == z(6 * j + 4)) {
        ++out.pair_collisions;
        any = true;
      }
      // phi restricted to the line through (3a, b) and (3a + 2, b)
      AffineLayer line;
      line.in_dim = 1;
      line.rows.resize(static_cast<std::size_t>(t));
      line.bias.assign(static_cast<std::size_t>(t), 0);
      line.rows[0].push_back({0, 1});
      auto in = pp.input(6 * j);
      for (int c = 1; c < t; ++c) line.bias[static_cast<std::size_t>(c)] = Rational(static_cast<long>(in[static_cast<std::size_t>(c)]));
      const ReluNet restricted = compose(ReluNet({std::move(line)}), phi);
      const std::size_t bp = count_breakpoints_1d(restricted, Rational(0), Rational(static_cast<long>(F - 1)));
      out.max_breakpoints = std::max(out.max_breakpoints, bp);
      if (bp + 1 > (std::size_t{1} << H)) out.regions_within_bound = false;
    }
    if (any) ++out.report.collisions;
  }
  return out;
}

int star_forest_distinct_count(int m) {
  const StarForest sf = gen_star_forest(m);
  std::vector<std::int32_t> labels(static_cast<std::size_t>(sf.graph.num_nodes()), 0);
  for (int round = 0; round < 2; ++round) labels = wl_step(sf.graph, labels);
  std::set<std::int32_t> tops;
  for (NodeId u : sf.top) tops.insert(labels[static_cast<std::size_t>(u)]);
  return static_cast<int>(tops.size());
}

DescriptionBound description_lower_bound(std::int64_t n, std::int64_t F) {
  if (n < 0 || F < 2) throw ParameterError("need n >= 0 and F >= 2");
  DescriptionBound r;
  mpz_bin_uiui(r.multisets.get_mpz_t(), static_cast<unsigned long>(n + F), static_cast<unsigned long>(n));
  BigInt power = F;
  while (power <= r.multisets) {
    ++r.floor_value;
    power *= F;
  }
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, r.multisets.get_mpz_t());
  r.value = (std::log(mant) + static_cast<double>(exp2) * std::log(2.0)) / std::log(static_cast<double>(F));
  return r;
}

}  // namespace wlgnn
