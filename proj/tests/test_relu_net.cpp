#include <gtest/gtest.h>

#include <set>

#include "wlgnn/errors.hpp"
#include "wlgnn/gadgets.hpp"
#include "wlgnn/gadgets.hpp"
#include "wlgnn/net_json.hpp"
#include "wlgnn/random.hpp"
#include "wlgnn/relu_net.hpp"

namespace wlgnn {
namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

ReluNet single_relu() { return ReluNet({AffineLayer::dense({{q(1)}}, {q(0)}, true)}); }

// Random net with one scalar input, hidden ReLU layers and a linear readout.
// Weights are multiples of 1/4 in [-2, 2].
ReluNet random_net(SplitMix& rng, std::size_t in_dim, const std::vector<std::size_t>& widths, std::size_t out_dim) {
  std::vector<AffineLayer> layers;
  std::size_t prev = in_dim;
  auto draw = [&] { return q(static_cast<long>(rng.below(17)) - 8, 4); };
  auto dense = [&](std::size_t rows, std::size_t cols, bool relu) {
    std::vector<std::vector<Rational>> w(rows, std::vector<Rational>(cols));
    std::vector<Rational> b(rows);
    for (auto& row : w)
      for (auto& x : row) x = draw();
    for (auto& x : b) x = draw();
    return AffineLayer::dense(w, b, relu);
  };
  for (auto w : widths) {
    layers.push_back(dense(w, prev, true));
    prev = w;
  }
  layers.push_back(dense(out_dim, prev, false));
  return ReluNet(std::move(layers));
}

std::vector<Rational> random_point(SplitMix& rng, std::size_t dim) {
  std::vector<Rational> x(dim);
  for (auto& v : x) v = q(static_cast<long>(rng.below(401)) - 200, static_cast<long>(1 + rng.below(12)));
  return x;
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("6/4"), q(3, 2));
  EXPECT_EQ(parse_rational("-7"), q(-7));
  EXPECT_EQ(format_rational(q(-3, 6)), "-1/2");
  EXPECT_EQ(format_rational(q(4)), "4/1");
  EXPECT_THROW(parse_rational("1/0"), ParameterError);
  EXPECT_THROW(parse_rational("abc"), ParameterError);
  EXPECT_THROW(parse_rational(""), ParameterError);
}

TEST(Evaluate, TrivialCases) {
  ReluNet id = identity(3);
  std::vector<Rational> x{q(1, 3), q(-2), q(0)};
  EXPECT_EQ(id.evaluate(x), x);
  EXPECT_EQ(single_relu().evaluate_scalar(q(-3)), 0);
  EXPECT_EQ(single_relu().evaluate_scalar(q(5, 2)), q(5, 2));
}

TEST(Evaluate, DimensionMismatch) {
  std::vector<Rational> x{q(1), q(2)};
  EXPECT_THROW(single_relu().evaluate(x), ParameterError);
  EXPECT_THROW(ReluNet({AffineLayer::dense({{q(1)}}, {q(0)}, true), AffineLayer::dense({{q(1), q(1)}}, {q(0)}, false)}),
               ParameterError);
  EXPECT_THROW(compose(identity(2), single_relu()), ParameterError);
}

TEST(Combinators, ComposeIdentityLaw) {
  SplitMix rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    ReluNet f = random_net(rng, 2, {3, 4}, 2);
    ReluNet g = compose(identity(2), f);
    for (int s = 0; s < 10; ++s) {
      auto x = random_point(rng, 2);
      EXPECT_EQ(g.evaluate(x), f.evaluate(x));
    }
  }
}

TEST(Combinators, ComposeIsSequentialEvaluation) {
  SplitMix rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    ReluNet a = random_net(rng, 2, {3}, 3);
    ReluNet b = random_net(rng, 3, {2, 2}, 2);
    ReluNet c = random_net(rng, 2, {4}, 1);
    ReluNet ab = compose(a, b);
    EXPECT_EQ(ab.stats().units, a.stats().units + b.stats().units);
    EXPECT_EQ(ab.stats().depth, a.stats().depth + b.stats().depth);
    ReluNet left = compose(compose(a, b), c);
    ReluNet right = compose(a, compose(b, c));
    for (int s = 0; s < 10; ++s) {
      auto x = random_point(rng, 2);
      EXPECT_EQ(ab.evaluate(x), b.evaluate(a.evaluate(x)));
      EXPECT_EQ(left.evaluate(x), right.evaluate(x));
    }
  }
}

TEST(Combinators, ParallelStacksOutputs) {
  SplitMix rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    ReluNet f = random_net(rng, 2, {3}, 2);
    ReluNet g = random_net(rng, 2, {2, 3, 2}, 3);
    ReluNet h = compose(affine({{q(1), q(-1)}}, {q(1, 2)}), single_relu());
    ReluNet p = parallel({f, g, h});
    ASSERT_EQ(p.output_dim(), 6u);
    EXPECT_GE(p.stats().units, f.stats().units + g.stats().units + h.stats().units);
    for (int s = 0; s < 10; ++s) {
      auto x = random_point(rng, 2);
      auto out = p.evaluate(x);
      auto fx = f.evaluate(x), gx = g.evaluate(x), hx = h.evaluate(x);
      std::vector<Rational> expect;
      expect.insert(expect.end(), fx.begin(), fx.end());
      expect.insert(expect.end(), gx.begin(), gx.end());
      expect.insert(expect.end(), hx.begin(), hx.end());
      EXPECT_EQ(out, expect);
    }
  }
  EXPECT_THROW(parallel({identity(1), identity(2)}), ParameterError);
  EXPECT_THROW(parallel({}), ParameterError);
}

TEST(Combinators, FuseLinearKeepsFunctionAndUnits) {
  SplitMix rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    ReluNet f = compose(compose(affine({{q(2), q(1)}, {q(0), q(-1, 3)}}, {q(1), q(0)}), random_net(rng, 2, {3, 2}, 2)),
                        affine({{q(1), q(1)}}, {q(-1)}));
    ReluNet g = fuse_linear(f);
    EXPECT_EQ(g.stats().units, f.stats().units);
    EXPECT_LT(g.stats().depth, f.stats().depth);
    for (int s = 0; s < 10; ++s) {
      auto x = random_point(rng, 2);
      EXPECT_EQ(g.evaluate(x), f.evaluate(x));
    }
  }
}

TEST(Stats, SingleWideLayer) {
  ReluNet n({AffineLayer::dense({{q(1)}, {q(2)}, {q(3)}}, {q(0), q(0), q(0)}, true)});
  NetStats s = n.stats();
  EXPECT_EQ(s.units, 3u);
  EXPECT_EQ(s.depth, 1u);
  EXPECT_EQ(s.width, 3u);
  EXPECT_EQ(s.max_weight_bits, 2u);
}

TEST(Json, RoundTrip) {
  SplitMix rng(5);
  ReluNet f = random_net(rng, 3, {4, 2}, 2);
  f.set_declared_domain(std::vector<IntInterval>{{0, 10}, {-3, 3}, {0, 0}});
  ReluNet g = deserialize_net(serialize_net(f));
  EXPECT_EQ(g, f);
  ReluNet m = build_mod(7, 70);
  EXPECT_EQ(deserialize_net(serialize_net(m)), m);
  EXPECT_THROW(deserialize_net("{\"layers\": 3}"), ParameterError);
  EXPECT_THROW(deserialize_net("not json"), ParameterError);
}

TEST(TriangularWave, Examples) {
  ReluNet tw = build_triangular_wave(q(5), 20);
  EXPECT_EQ(tw.evaluate_scalar(q(7)), 3);
  EXPECT_EQ(tw.evaluate_scalar(q(12)), 2);
  EXPECT_EQ(tw.evaluate_scalar(q(0)), 0);
  EXPECT_EQ(triangular_wave_value(q(5), q(7)), 3);
  EXPECT_THROW(build_triangular_wave(q(5), 9), ParameterError);
}

TEST(TriangularWave, ExactOnRationalGrid) {
  for (long P2 : {2L, 3L, 5L, 7L, 21L}) {  // half-periods P2 / 2
    const Rational P = q(P2, 2);
    for (std::int64_t D : {static_cast<std::int64_t>(P2), 3 * P2, 10 * P2 + 1, 64 * P2}) {
      ReluNet tw = build_triangular_wave(P, D);
      for (long k = 0; k <= 4 * D; ++k) {
        const Rational x = q(k, 4);
        // oracle: distance-to-nearest-multiple form of the wave
        Rational r = x - 2 * P * BigInt(x / (2 * P));
        while (r < 0) r += 2 * P;
        while (r >= 2 * P) r -= 2 * P;
        const Rational expect = r <= P ? r : 2 * P - r;
        ASSERT_EQ(tw.evaluate_scalar(x), expect) << "P=" << P << " D=" << D << " x=" << x;
      }
    }
  }
}

TEST(Mod, Examples) {
  ReluNet m = build_mod(5, 100);
  EXPECT_EQ(m.evaluate_scalar(q(13)), 3);
  EXPECT_EQ(m.evaluate_scalar(q(0)), 0);
  EXPECT_THROW(build_mod(4, 100), ParameterError);
  EXPECT_THROW(build_mod(1, 100), ParameterError);
}

TEST(Mod, ExhaustiveF31) {
  ReluNet m = build_mod(31, 31 * 20);
  for (long z = 0; z <= 31 * 20; ++z) ASSERT_EQ(m.evaluate_scalar(q(z)), z % 31) << z;
}

TEST(Mod, ExhaustiveUpToHundredThousand) {
  const std::vector<std::pair<std::int64_t, std::int64_t>> cases{{3, 1}, {3, 1000}, {7, 2000}, {101, 990}, {4099, 24}};
  for (auto [F, n] : cases) {
    ReluNet m = build_mod(F, F * n);
    for (std::int64_t z = 0; z <= F * n; ++z) ASSERT_EQ(m.evaluate_scalar(q(z)), z % F) << F << " " << z;
  }
}

TEST(Mod, EvenModulusNet) {
  for (std::int64_t M : {2, 4, 8, 16, 6}) {
    ReluNet m = build_modulus_net(M, 40 * M);
    for (std::int64_t z = 0; z <= 40 * M; ++z) ASSERT_EQ(m.evaluate_scalar(q(z)), z % M) << M << " " << z;
  }
}

TEST(Mod, UnitsAffineInLogDomain) {
  std::vector<long> units;
  for (int j = 3; j <= 10; ++j) units.push_back(static_cast<long>(build_mod(5, 5L << j).stats().units));
  const long step = units[1] - units[0];
  EXPECT_GT(step, 0);
  for (std::size_t i = 1; i < units.size(); ++i) EXPECT_EQ(units[i] - units[i - 1], step);
}

TEST(Mod, UnitsLogarithmicInF) {
  // Fixed n: doubling F adds a bounded number of units.
  std::vector<long> units;
  for (std::int64_t F : {9, 17, 33, 65, 129, 257, 513, 1025}) units.push_back(static_cast<long>(build_mod(F, F * 8).stats().units));
  for (std::size_t i = 1; i < units.size(); ++i) EXPECT_LE(units[i] - units[i - 1], 8);
  EXPECT_LE(units.back(), 8 * 12 + 40);
}

TEST(Indicator, Examples) {
  ReluNet z = build_indicator(0);
  EXPECT_EQ(z.evaluate_scalar(q(0)), 1);
  EXPECT_EQ(z.evaluate_scalar(q(1)), 0);
  ReluNet three = build_indicator(3);
  EXPECT_EQ(three.evaluate_scalar(q(3)), 1);
  EXPECT_EQ(three.evaluate_scalar(q(4)), 0);
  EXPECT_EQ(z.stats().units, 6u);
  EXPECT_EQ(z.stats().depth, 3u);
}

TEST(Indicator, ExhaustiveWindow) {
  for (std::int64_t i = -5; i <= 40; ++i) {
    ReluNet n = build_indicator(i);
    for (std::int64_t z = -50; z <= 100; ++z) ASSERT_EQ(n.evaluate_scalar(q(z)), z == i ? 1 : 0);
  }
}

TEST(Threshold, Examples) {
  const std::vector<std::int64_t> a1{1}, a2{2, -1}, a3{1, 1, 1};
  ReluNet t1 = build_threshold(a1, 1, 1);
  EXPECT_EQ(t1.evaluate_scalar(q(0)), 0);
  EXPECT_EQ(t1.evaluate_scalar(q(1)), 1);
  std::vector<Rational> x2{q(1), q(2)};
  EXPECT_EQ(build_threshold(a2, 0, 2).evaluate(x2)[0], 1);
  std::vector<Rational> x3{q(1), q(0), q(0)};
  EXPECT_EQ(build_threshold(a3, 2, 3).evaluate(x3)[0], 0);
}

TEST(Threshold, ExhaustiveSmallCube) {
  const std::vector<std::int64_t> a{3, -2, 1};
  for (std::int64_t theta = -6; theta <= 6; ++theta) {
    ReluNet t = build_threshold(a, theta, 3);
    for (long x0 = -2; x0 <= 2; ++x0)
      for (long x1 = -2; x1 <= 2; ++x1)
        for (long x2 = -2; x2 <= 2; ++x2) {
          std::vector<Rational> x{q(x0), q(x1), q(x2)};
          ASSERT_EQ(t.evaluate(x)[0], 3 * x0 - 2 * x1 + x2 >= theta ? 1 : 0);
        }
  }
  const std::vector<std::int64_t> big{100};
  EXPECT_THROW(build_threshold(big, 0, 3), ParameterError);
}

TEST(BitExtract, Examples) {
  EXPECT_EQ(build_bit_extract(0, 8).evaluate_scalar(q(5)), 1);
  EXPECT_EQ(build_bit_extract(2, 8).evaluate_scalar(q(5)), 1);
  EXPECT_EQ(build_bit_extract(3, 8).evaluate_scalar(q(5)), 0);
  EXPECT_THROW(build_bit_extract(5, 8), ParameterError);
}

TEST(BitExtract, Exhaustive) {
  for (std::int64_t F : {5, 31, 97}) {
    for (std::int64_t n : {1, 4}) {
      std::int64_t maxj = 0;
      while ((std::int64_t{1} << maxj) < F) ++maxj;
      for (int j = 0; j <= maxj; ++j) {
        ReluNet b = build_bit_extract(j, F, n);
        for (std::int64_t i = 0; i <= n * F; ++i) ASSERT_EQ(b.evaluate_scalar(q(i)), (i >> j) & 1) << F << " " << j << " " << i;
      }
    }
  }
}

TEST(Breakpoints, Examples) {
  EXPECT_EQ(count_breakpoints_1d(single_relu(), q(-1), q(1)), 1u);
  EXPECT_EQ(count_breakpoints_1d(single_relu(), q(1), q(3)), 0u);
  // g rises on [-1/2, 0], is flat to 1/4 and falls to 0 at 3/4.
  ReluNet ind = build_indicator(0);
  EXPECT_EQ(count_breakpoints_1d(ind, q(-1), q(1)), 4u);
  EXPECT_LE(count_breakpoints_1d(ind, q(-10), q(10)) + 1, std::size_t{1} << ind.stats().units);
  EXPECT_EQ(count_breakpoints_1d(affine({{q(3)}}, {q(1)}), q(-5), q(5)), 0u);
  EXPECT_THROW(count_breakpoints_1d(identity(2), q(0), q(1)), ParameterError);
}

TEST(Breakpoints, TriangularWaveCorners) {
  // TW_P on [0, D] has a corner at every multiple of P strictly inside.
  for (std::int64_t P : {1, 2, 3, 7}) {
    ReluNet tw = build_triangular_wave(q(P), 12 * P);
    EXPECT_EQ(count_breakpoints_1d(tw, q(0), q(12 * P)), 11u);
  }
}

// Sampling oracle: slope changes between consecutive cells of a fine grid.
// Every detected change implies at least one true breakpoint inside the
// neighbouring cells, so this undercounts only when corners share a cell.
std::size_t grid_slope_changes(const ReluNet& net, const Rational& lo, const Rational& hi, long cells) {
  const Rational h = (hi - lo) / cells;
  std::vector<Rational> ys;
  for (long i = 0; i <= cells; ++i) ys.push_back(net.evaluate_scalar(lo + h * i));
  std::size_t changes = 0;
  for (long i = 1; i < cells; ++i)
    if (ys[i] - ys[i - 1] != ys[i + 1] - ys[i]) ++changes;
  return changes;
}

TEST(Breakpoints, RegionBoundOnRandomNets) {
  SplitMix rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t H = 1 + rng.below(12);
    std::vector<std::size_t> widths;
    std::size_t left = H;
    while (left > 0) {
      const std::size_t w = 1 + rng.below(left);
      widths.push_back(w);
      left -= w;
    }
    ReluNet net = random_net(rng, 1, widths, 1);
    ASSERT_EQ(net.stats().units, H);
    const std::size_t exact = count_breakpoints_1d(net, q(-8), q(8));
    EXPECT_LE(exact + 1, std::size_t{1} << H);
    EXPECT_GE(exact, grid_slope_changes(net, q(-8), q(8), 512) / 2);
  }
}

TEST(Breakpoints, AgreesWithGridOnSingleLayer) {
  // One hidden layer with distinct dyadic kinks: each unit contributes one corner.
  SplitMix rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<Rational>> w;
    std::vector<Rational> b, out;
    std::set<long> kinks;
    while (kinks.size() < 5) kinks.insert(static_cast<long>(rng.below(60)) - 30);
    for (long k : kinks) {
      w.push_back({q(1)});
      b.push_back(q(-k, 4));
      out.push_back(q(static_cast<long>(1 + rng.below(3)) * (rng.below(2) ? 1 : -1)));
    }
    ReluNet net({AffineLayer::dense(w, b, true), AffineLayer::dense({out}, {q(0)}, false)});
    EXPECT_EQ(count_breakpoints_1d(net, q(-10), q(10)), 5u);
    EXPECT_EQ(grid_slope_changes(net, q(-10), q(10), 80), 5u);
  }
}

}  // namespace
}  // namespace wlgnn
