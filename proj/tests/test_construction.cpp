#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "wlgnn/construction.hpp"
#include "wlgnn/errors.hpp"
#include "wlgnn/generators.hpp"
#include "wlgnn/primes.hpp"
#include "wlgnn/random.hpp"
#include "wlgnn/simulation.hpp"
#include "wlgnn/small_bias.hpp"

namespace wlgnn {
namespace {

std::int64_t next_prime_by_trial_division(std::int64_t from) {
  for (std::int64_t c = std::max<std::int64_t>(from, 2);; ++c) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= c; ++d)
      if (c % d == 0) {
        prime = false;
        break;
      }
    if (prime) return c;
  }
}

TEST(Primes, ChoosePrimeExamples) {
  EXPECT_EQ(choose_prime(100, 2), 10007);
  EXPECT_EQ(choose_prime(3, 1), 7);
  EXPECT_EQ(choose_prime(10, 2), 101);
  EXPECT_THROW(choose_prime(0, 2), ParameterError);
  EXPECT_THROW(choose_prime(1'000'000, 4), ParameterError);
}

TEST(Primes, ChoosePrimeMatchesTrialDivision) {
  for (std::int64_t n = 1; n <= 300; ++n)
    for (int e = 1; e <= 3; ++e) {
      std::int64_t pw = 1;
      for (int i = 0; i < e; ++i) pw *= n;
      ASSERT_EQ(choose_prime(n, e), next_prime_by_trial_division(std::max(2 * n + 1, pw))) << n << " " << e;
    }
}

TEST(Primes, MillerRabinLargeKnownValues) {
  EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(3215031751ULL));           // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(is_prime(18446744073709551615ULL));
  EXPECT_TRUE(is_prime(1'000'000'007ULL));
}

TEST(Primes, RequiredFieldSize) {
  EXPECT_EQ(required_field_size(100, 100, make_rational(1, 100)), BigInt(100'000'000));
  EXPECT_EQ(required_field_size(10, 10, 1), BigInt(1000));
  EXPECT_EQ(required_field_size(1, 1, 1), BigInt(1));
  EXPECT_EQ(required_field_size(3, 1, make_rational(2, 1)), BigInt(5));
}

// Irreducibility by trial division with every polynomial of degree 1..k/2.
bool irreducible_oracle(std::uint64_t p) {
  const int k = poly_degree(p);
  for (std::uint64_t q = 2; poly_degree(q) <= k / 2; ++q) {
    std::uint64_t r = p;
    const int dq = poly_degree(q);
    for (int d = poly_degree(r); d >= dq; d = poly_degree(r)) r ^= q << (d - dq);
    if (r == 0) return false;
  }
  return k >= 1;
}

TEST(SmallBias, IrreducibleMatchesOracle) {
  for (std::uint64_t p = 2; p < (1u << 13); ++p) ASSERT_EQ(is_irreducible(p), irreducible_oracle(p)) << p;
  EXPECT_EQ(smallest_irreducible(3), 0b1011u);
  EXPECT_EQ(smallest_irreducible(8), 0x11Bu);
  for (int k = 1; k <= 63; ++k) EXPECT_EQ(poly_degree(smallest_irreducible(k)), k);
}

TEST(SmallBias, FieldGroupOrder) {
  for (int k : {2, 3, 5, 8, 11}) {
    Gf2k f(k);
    const std::uint64_t order = (std::uint64_t{1} << k) - 1;
    for (std::uint64_t y = 1; y <= order; ++y) ASSERT_EQ(f.pow(y, order), 1u) << k << " " << y;
  }
  Gf2k big(61);
  EXPECT_EQ(big.pow(0x123456789abcdefULL, (std::uint64_t{1} << 61) - 1), 1u);
}

TEST(SmallBias, UniformTableLookup) {
  BitSource s = BitSource::table({0, 1, 1, 0});
  EXPECT_TRUE(eps_biased_bit(s, 2));
  EXPECT_FALSE(eps_biased_bit(s, 0));
  EXPECT_THROW(s.bit(4), ParameterError);
  EXPECT_THROW(s.bit(-1), ParameterError);
}

TEST(SmallBias, AghpHandExample) {
  Gf2k f(3, 0b1011);
  BitSource s = BitSource::aghp(f, 0b011, 0b010, 4);
  EXPECT_EQ(s.materialize(), (std::vector<std::uint8_t>{1, 1, 0, 0}));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(s.bit(i), s.materialize()[static_cast<std::size_t>(i)]);
}

TEST(SmallBias, AghpZeroYIsConstant) {
  Gf2k f(5);
  BitSource s = BitSource::aghp(f, 0b10111, 0, 20);
  auto bits = s.materialize();
  // y^0 = 1 reads bit 0 of x; every later power is 0.
  EXPECT_EQ(bits[0], 1);
  EXPECT_TRUE(std::all_of(bits.begin() + 1, bits.end(), [](std::uint8_t b) { return b == 0; }));
}

TEST(SmallBias, AghpDegreeRule) {
  EXPECT_EQ(aghp_degree(8, make_rational(1, 4)), 6);
  EXPECT_EQ(aghp_degree(7, make_rational(1, 4)), 6);
  EXPECT_EQ(aghp_degree(16, make_rational(1, 4)), 7);
  EXPECT_THROW(aghp_degree(8, 0), ParameterError);
  EXPECT_THROW(aghp_degree(8, 1), ParameterError);
}

TEST(SmallBias, HashedSourceIsBalancedAndDeterministic) {
  BitSource s = BitSource::hashed(99, 100000);
  auto bits = s.materialize();
  const auto ones = std::count(bits.begin(), bits.end(), 1);
  EXPECT_NEAR(static_cast<double>(ones), 50000.0, 4 * std::sqrt(25000.0));
  EXPECT_EQ(bits, BitSource::hashed(99, 100000).materialize());
  EXPECT_NE(bits, BitSource::hashed(100, 100000).materialize());
}

IterationWeights c1_weights(std::int64_t F, std::vector<std::int64_t> a) {
  IterationWeights w;
  w.variant = Variant::C1;
  w.F = F;
  w.a_table = std::move(a);
  return w;
}

LabelState c1_state(std::vector<std::int64_t> idx) {
  LabelState s;
  s.variant = Variant::C1;
  s.t = 1;
  s.index = std::move(idx);
  return s;
}

TEST(SemanticC1, HandExample) {
  // Middle node of a 3-path with labels (0, 0, 1) sees x = 2 e_0 + e_1.
  auto out = semantic_step_c1(make_path(3), c1_state({0, 0, 1}), c1_weights(5, {1, 2, 3, 4, 0}));
  EXPECT_EQ(out.index[1], 4);
  EXPECT_EQ(out.index[0], 2);  // {e_0, e_0}
  EXPECT_EQ(out.index[2], 3);  // {e_0, e_1}
  EXPECT_EQ(out.iteration, 1);
}

TEST(SemanticC1, IsolatedNodesAndEdge) {
  ConstructionConfig cfg;
  cfg.variant = Variant::C1;
  cfg.n = 2;
  cfg.F = 5;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    cfg.master_seed = seed;
    LabelState iso = LabelState::initial(cfg), edge = LabelState::initial(cfg);
    Graph empty = Graph::from_edges(2, {});
    Graph one = make_path(2);
    for (int k = 1; k <= 5; ++k) {
      auto w = IterationWeights::derive(cfg, k);
      iso = semantic_step_c1(empty, iso, w);
      edge = semantic_step_c1(one, edge, w);
      EXPECT_EQ(iso.index[0], iso.index[1]);
      EXPECT_EQ(edge.index[0], edge.index[1]);
    }
  }
}

TEST(SemanticC2, HandExample) {
  IterationWeights w;
  w.variant = Variant::C2;
  w.F = 7;
  w.b = {3, 5};
  w.bits = {BitSource::table({0, 1, 1, 0, 1, 0, 0}), BitSource::table({1, 0, 1, 1, 0, 0, 1})};
  LabelState s;
  s.variant = Variant::C2;
  s.t = 2;
  s.bits = {1, 0, 1, 0, 1, 0};
  Graph g = make_path(3);
  EXPECT_EQ(c2_hash_values(g, s, w), (std::vector<std::int64_t>{6, 2, 6}));
  auto out = semantic_step_c2(g, s, w);
  EXPECT_EQ(out.bits, (std::vector<std::uint8_t>{0, 1, 1, 1, 0, 1}));
}

TEST(SemanticC2, PathEndpointsSymbolic) {
  // First sums equal deg + 1, so z_a = z_c = 2 b_0 and z_b = 3 b_0 mod F.
  ConstructionConfig cfg;
  cfg.n = 3;
  cfg.F = 11;
  cfg.t = 4;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    cfg.master_seed = seed;
    auto w = IterationWeights::derive(cfg, 1);
    auto z = c2_hash_values(make_path(3), LabelState::initial(cfg), w);
    EXPECT_EQ(z[0], z[2]);
    EXPECT_EQ(z[0], 2 * w.b[0] % 11);
    EXPECT_EQ(z[1], 3 * w.b[0] % 11);
    EXPECT_EQ(z[0] == z[1], w.b[0] == 0);
  }
}

TEST(Config, Validation) {
  ConstructionConfig cfg;
  cfg.n = 10;
  cfg.F = 19;
  EXPECT_THROW(cfg.validate(), ParameterError);  // F must exceed 2n
  cfg.F = 21;
  EXPECT_THROW(cfg.validate(), ParameterError);  // not prime
  cfg.F = 23;
  EXPECT_NO_THROW(cfg.validate());
  cfg.t = 0;
  EXPECT_THROW(cfg.validate(), ParameterError);
}

TEST(Weights, DeterministicAndFreshPerIteration) {
  ConstructionConfig cfg;
  cfg.n = 50;
  cfg.F = choose_prime(50, 2);
  cfg.t = 16;
  cfg.master_seed = 7;
  auto w1 = IterationWeights::derive(cfg, 1);
  auto w1b = IterationWeights::derive(cfg, 1);
  auto w2 = IterationWeights::derive(cfg, 2);
  EXPECT_EQ(w1.b, w1b.b);
  EXPECT_NE(w1.b, w2.b);
  EXPECT_EQ(w1.bits[3].materialize(), w1b.bits[3].materialize());
  EXPECT_NE(w1.bits[3].materialize(), w2.bits[3].materialize());
  cfg.variant = Variant::C1;
  auto c1 = IterationWeights::derive(cfg, 1);
  auto c2 = IterationWeights::derive(cfg, 2);
  int differ = 0;
  for (int i = 0; i < 100; ++i) {
    EXPECT_GE(c1.a(i), 0);
    EXPECT_LT(c1.a(i), cfg.F);
    differ += c1.a(i) != c2.a(i);
  }
  EXPECT_GT(differ, 90);
}

// Independent soundness oracle: equal sorted multisets of previous labels
// over closed neighborhoods must map to equal new labels.
template <typename Row>
void check_soundness(const Graph& g, const std::vector<Row>& before, const std::vector<Row>& after) {
  std::map<std::vector<Row>, Row> seen;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    std::vector<Row> ms;
    for (NodeId u : g.closed_neighborhood(v)) ms.push_back(before[static_cast<std::size_t>(u)]);
    std::sort(ms.begin(), ms.end());
    auto [it, inserted] = seen.emplace(ms, after[static_cast<std::size_t>(v)]);
    ASSERT_TRUE(inserted || it->second == after[static_cast<std::size_t>(v)]);
  }
}

std::vector<std::vector<std::uint8_t>> rows_of(const LabelState& s) {
  std::vector<std::vector<std::uint8_t>> out;
  for (NodeId v = 0; v < s.num_nodes(); ++v) out.emplace_back(s.row(v).begin(), s.row(v).end());
  return out;
}

TEST(Properties, SoundnessAndCoarsening) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const NodeId n = static_cast<NodeId>(5 + seed % 30);
    Graph g = seed % 2 ? gen_erdos_renyi(n, 3, seed) : gen_scale_free(n, seed);
    WlTrace tr = wl_run(g, n + 1);
    for (Variant var : {Variant::C1, Variant::C2}) {
      ConstructionConfig cfg;
      cfg.variant = var;
      cfg.n = n;
      cfg.F = choose_prime(n, 1);  // small field so collisions actually happen
      cfg.t = 3;
      cfg.master_seed = seed;
      LabelState s = LabelState::initial(cfg);
      for (std::size_t k = 1; k < tr.partitions.size(); ++k) {
        LabelState next = semantic_step(g, s, IterationWeights::derive(cfg, static_cast<int>(k)));
        if (var == Variant::C1) check_soundness(g, s.index, next.index);
        else check_soundness(g, rows_of(s), rows_of(next));
        ASSERT_TRUE(next.partition().is_coarsening_of(tr.partitions[k]));
        s = std::move(next);
      }
    }
  }
}

TEST(Properties, PermutationEquivariance) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const NodeId n = 30;
    Graph g = gen_erdos_renyi(n, 4, seed);
    std::vector<NodeId> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    SplitMix rng(seed + 1000);
    for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    Graph h = g.permuted(perm);
    for (Variant var : {Variant::C1, Variant::C2}) {
      ConstructionConfig cfg;
      cfg.variant = var;
      cfg.n = n;
      cfg.F = choose_prime(n, 2);
      cfg.t = 8;
      cfg.master_seed = seed;
      LabelState a = LabelState::initial(cfg), b = LabelState::initial(cfg);
      for (int k = 1; k <= 4; ++k) {
        auto w = IterationWeights::derive(cfg, k);
        a = semantic_step(g, a, w);
        b = semantic_step(h, b, w);
        for (NodeId v = 0; v < n; ++v) {
          const NodeId pv = perm[static_cast<std::size_t>(v)];
          if (var == Variant::C1) ASSERT_EQ(a.index[static_cast<std::size_t>(v)], b.index[static_cast<std::size_t>(pv)]);
          else ASSERT_TRUE(std::ranges::equal(a.row(v), b.row(pv)));
        }
      }
    }
  }
}

TEST(Properties, FirstRoundNondegenerate) {
  // Path has closed-neighborhood sizes 2 and 3; z is constant only if b_0 = 0.
  ConstructionConfig cfg;
  cfg.n = 3;
  cfg.F = 101;
  cfg.t = 2;
  int constant = 0;
  const int seeds = 2000;
  for (int s = 0; s < seeds; ++s) {
    cfg.master_seed = static_cast<std::uint64_t>(s);
    auto z = c2_hash_values(make_path(3), LabelState::initial(cfg), IterationWeights::derive(cfg, 1));
    constant += z[0] == z[1];
  }
  EXPECT_LE(constant, 2 * seeds / 101);
}

TEST(Properties, Determinism) {
  Graph g = gen_scale_free(80, 3);
  ConstructionConfig cfg;
  cfg.n = 80;
  cfg.F = choose_prime(80, 3);
  cfg.t = 12;
  cfg.master_seed = 42;
  for (BiasMode mode : {BiasMode::UniformTable, BiasMode::Aghp}) {
    cfg.bias_mode = mode;
    auto a = run_simulation(g, cfg);
    auto b = run_simulation(g, cfg);
    EXPECT_EQ(a.construction, b.construction);
    EXPECT_EQ(a.success, b.success);
  }
}

std::vector<Rational> c1_dense_input(const Graph& g, const LabelState& s, NodeId v, std::int64_t F) {
  std::vector<Rational> x(static_cast<std::size_t>(F), 0);
  for (NodeId u : g.closed_neighborhood(v)) x[static_cast<std::size_t>(s.index[static_cast<std::size_t>(u)])] += 1;
  return x;
}

std::vector<Rational> c2_sum_input(const Graph& g, const LabelState& s, NodeId v) {
  std::vector<Rational> x(static_cast<std::size_t>(s.t), 0);
  for (NodeId u : g.closed_neighborhood(v))
    for (int j = 0; j < s.t; ++j) x[static_cast<std::size_t>(j)] += s.row(u)[static_cast<std::size_t>(j)];
  return x;
}

TEST(Compiled, MatchesSemanticOnTenNodeRuns) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const NodeId n = 10;
    Graph g = gen_erdos_renyi(n, 3, seed);
    WlTrace tr = wl_run(g, n + 1);
    for (Variant var : {Variant::C1, Variant::C2}) {
      for (BiasMode mode : {BiasMode::UniformTable, BiasMode::Aghp}) {
        if (var == Variant::C1 && mode == BiasMode::Aghp) continue;
        ConstructionConfig cfg;
        cfg.variant = var;
        cfg.n = n;
        cfg.F = choose_prime(n, 2);
        cfg.t = 6;
        cfg.bias_mode = mode;
        cfg.master_seed = seed;
        LabelState s = LabelState::initial(cfg);
        for (int k = 1; k <= std::max(tr.k0, 1); ++k) {
          auto w = IterationWeights::derive(cfg, k);
          LabelState next = semantic_step(g, s, w);
          if (var == Variant::C1) {
            ReluNet net = compile_phi_c1(w, cfg.F, n);
            for (NodeId v = 0; v < n; ++v) {
              auto out = net.evaluate(c1_dense_input(g, s, v, cfg.F));
              for (std::int64_t i = 0; i < cfg.F; ++i)
                ASSERT_EQ(out[static_cast<std::size_t>(i)], i == next.index[static_cast<std::size_t>(v)] ? 1 : 0);
            }
          } else {
            ReluNet net = compile_phi_c2(w, cfg.F, n, cfg.t);
            ASSERT_EQ(net.output_dim(), static_cast<std::size_t>(cfg.t));
            for (NodeId v = 0; v < n; ++v) {
              auto out = net.evaluate(c2_sum_input(g, s, v));
              for (int j = 0; j < cfg.t; ++j) ASSERT_EQ(out[static_cast<std::size_t>(j)], next.row(v)[static_cast<std::size_t>(j)]);
            }
          }
          s = std::move(next);
        }
      }
    }
  }
}

TEST(Compiled, ZeroInputIsFirstUnitVector) {
  ConstructionConfig cfg;
  cfg.variant = Variant::C1;
  cfg.n = 5;
  cfg.F = 11;
  ReluNet net = compile_phi_c1(IterationWeights::derive(cfg, 1), 11, 5);
  auto out = net.evaluate(std::vector<Rational>(11, 0));
  for (int i = 0; i < 11; ++i) EXPECT_EQ(out[static_cast<std::size_t>(i)], i == 0 ? 1 : 0);
}

TEST(Compiled, SizeAndGuard) {
  for (std::int64_t n : {10, 20, 40}) {
    ConstructionConfig cfg;
    cfg.variant = Variant::C1;
    cfg.n = static_cast<NodeId>(n);
    cfg.F = choose_prime(n, 2);
    NetStats s = compile_phi_c1(IterationWeights::derive(cfg, 1), cfg.F, n).stats();
    EXPECT_GE(s.units, static_cast<std::size_t>(cfg.F));
    EXPECT_LE(s.units, static_cast<std::size_t>(8 * cfg.F));
    EXPECT_LE(static_cast<double>(s.depth), 4 * std::log2(static_cast<double>(n * cfg.F)));
  }
  ConstructionConfig big;
  big.variant = Variant::C1;
  big.n = 200;
  big.F = choose_prime(200, 2);
  EXPECT_THROW(compile_phi_c1(IterationWeights::derive(big, 1), big.F, 200), ParameterError);
}

TEST(Simulation, CompleteGraphAlwaysSucceeds) {
  for (Variant var : {Variant::C1, Variant::C2})
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      ConstructionConfig cfg;
      cfg.variant = var;
      cfg.n = 9;
      cfg.F = 19;
      cfg.t = 1;
      cfg.master_seed = seed;
      auto r = run_simulation(make_complete(9), cfg);
      EXPECT_TRUE(r.success);
      EXPECT_EQ(r.k0, 1);
    }
}

TEST(Simulation, PathMostlySucceeds) {
  // Per-run failure sources on the 3-path: equal t-bit labels in either
  // round (2 / 2^t), an all-zero end label in round 2 (1 / 2^t) and the two
  // dot-product collisions (about 2 / F). With F = 29: t = 4 fails about 24%
  // of the time, t = 8 about 8%.
  for (auto [t, floor] : {std::pair{4, 60}, std::pair{8, 80}}) {
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      ConstructionConfig cfg;
      cfg.n = 3;
      cfg.F = choose_prime(3, kDefaultPrimeExponent);
      cfg.t = t;
      cfg.master_seed = seed;
      ok += run_simulation(make_path(3), cfg).success;
    }
    EXPECT_GE(ok, floor) << "t = " << t;
  }
}

TEST(Simulation, StarForestTopsSeparated) {
  StarForest sf = gen_star_forest(5);
  const NodeId n = sf.graph.num_nodes();
  ConstructionConfig cfg;
  cfg.n = n;
  cfg.F = choose_prime(n, kDefaultPrimeExponent);
  cfg.t = 3 * static_cast<int>(std::ceil(std::log2(static_cast<double>(n))));
  int good = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    cfg.master_seed = seed;
    auto r = run_simulation(sf.graph, cfg);
    const auto& p = r.construction.back();
    std::set<std::int32_t> tops;
    for (NodeId u : sf.top) tops.insert(p.class_of[static_cast<std::size_t>(u)]);
    good += tops.size() == sf.top.size();
  }
  EXPECT_GE(good, 9);
}

}  // namespace
}  // namespace wlgnn
