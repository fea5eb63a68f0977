#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlgnn/rational.hpp"
#include "wlgnn/relu_net.hpp"

namespace wlgnn {

struct CollisionReport {
  std::int64_t trials = 0;
  std::int64_t collisions = 0;
  Rational bound;  // theoretical reference value
  std::string context;

  Rational rate() const { return trials ? make_ratio(BigInt(static_cast<long>(collisions)), BigInt(static_cast<long>(trials))) : Rational(0); }
};

// Pr over uniform a in [F]^dim that <a, x> = <a, y> mod F.
// Monte-Carlo with `samples` draws:
CollisionReport hash_collision_rate(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y,
                                    std::int64_t F, std::int64_t samples, std::uint64_t seed);
// Exact, by enumerating all F^dim vectors (at most 10^7):
CollisionReport hash_collision_enum(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y,
                                    std::int64_t F);

// Exact Pr over uniform a in {0,1}^m that integer dot products coincide.
Rational inner_product_collision_enum(int m, const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y);

struct BiasReport {
  int k = 0;                   // field degree (0 for the uniform source)
  std::uint64_t seeds = 0;     // number of enumerated seeds
  Rational max_bias;           // over all non-empty I
  Rational max_singleton_bias; // over |I| = 1
  Rational analytic_bound;     // (F - 1) / 2^k for aghp, 0 for uniform
};

// Full enumeration of the powering generator with k = aghp_degree(F, eps).
BiasReport aghp_bias_check(int F, const Rational& epsilon);
// The same computation over all 2^F uniform tables.
BiasReport uniform_bias_check(int F);
// max over non-empty I of |P[sum_I = 0] - P[sum_I = 1]| for a tally of
// F-bit outcomes (counts[s] for bitstring s, bit i = coordinate i).
Rational max_bias_of_counts(std::vector<std::int64_t> counts, int F, Rational* singleton = nullptr);

struct PathPairReport {
  CollisionReport report;  // trials with at least one colliding pair
  std::int64_t pair_collisions = 0;
  std::int64_t pairs = 0;
  std::size_t max_breakpoints = 0;  // along first-coordinate lines, over all sampled nets
  bool regions_within_bound = true; // breakpoints + 1 <= 2^H for every net
};

// Random net [F]^t -> R with one hidden layer of H ReLUs (H = 0: affine);
// weights and biases uniform over multiples of 1/16 in [-2, 2].
ReluNet random_combine_net(int t, int H, std::uint64_t seed);

PathPairReport path_pair_collision_experiment(int n0, std::int64_t F, int H, int trials, std::uint64_t seed, int t = 2);

// WL labels after two rounds on the star forest; number of distinct labels
// among the top nodes u_1..u_m.
int star_forest_distinct_count(int m);

struct DescriptionBound {
  BigInt multisets;  // N = C(n + F, n)
  std::int64_t floor_value = 0;  // largest k with F^k <= N
  double value = 0;  // log N / log F
};
DescriptionBound description_lower_bound(std::int64_t n, std::int64_t F);

}  // namespace wlgnn
