#pragma once

#include <cstdint>

#include "wlgnn/rational.hpp"

namespace wlgnn {

// Exponent used when a field size is not given explicitly.
inline constexpr int kDefaultPrimeExponent = 3;

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// Smallest prime >= max(2n + 1, n^exponent).
std::int64_t choose_prime(std::int64_t n, int exponent);

// ceil(n^2 T / delta): field size at which a union bound over n^2 pairs and
// T rounds keeps the failure probability below delta.
BigInt required_field_size(std::int64_t n, std::int64_t T, const Rational& delta);

}  // namespace wlgnn
