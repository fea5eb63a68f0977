#pragma once

#include <cstdint>
#include <span>

#include "wlgnn/relu_net.hpp"

namespace wlgnn {

// Reference triangular wave: period 2*half_period, rising to half_period.
// TW_P(x) = r if r <= P, else 2P - r, where r = x mod 2P.
Rational triangular_wave_value(const Rational& half_period, const Rational& x);

// Exact TW_P on the real interval [0, domain_max]; requires
// domain_max >= 2P. Built from ceil(log2 #periods) + 1 composed tent maps,
// with the period count padded up to a power of two. 2 ReLU units per tent.
ReluNet build_triangular_wave(const Rational& half_period, std::int64_t domain_max);

// z mod M for every integer z in [0, domain_max], for any modulus M >= 2.
// Uses TW_M and TW_{M/2} evaluated at z + 2M - (M-1)/2 to derive the wrap
// gate, then z mod M = ReLU(2M g - 2 TW_M(z)) - M g + TW_M(z).
ReluNet build_modulus_net(std::int64_t modulus, std::int64_t domain_max);

// Same as build_modulus_net but only for odd F >= 3, the case the mod-F
// hashing layers use.
ReluNet build_mod(std::int64_t F, std::int64_t domain_max);

// 1 on integer input i, 0 on every other integer. Computes
// g(z - i) with g(x) = ReLU(min(1 - ReLU(2x - 1/2), ReLU(2x + 1))), min
// expanded through max(a, b) = ReLU(a - b) + b. 6 units, depth 3.
ReluNet build_indicator(std::int64_t i);

// Threshold gate [sum a_k x_k >= theta] on integer inputs via the step
// ReLU(1 - ReLU(theta - s)). Weights and theta must satisfy
// |a_k|, |theta| <= max(m, 2)^3.
ReluNet build_threshold(std::span<const std::int64_t> a, std::int64_t theta, std::int64_t m);

// Bit j of an integer i in [0, n*F]: (i mod 2^(j+1)) >= 2^j. Requires
// 0 <= j <= ceil(log2 F).
ReluNet build_bit_extract(int j, std::int64_t F, std::int64_t n = 1);

// Number of points strictly inside (lo, hi) where a 1-input net changes
// slope, found by exact layer-by-layer breakpoint propagation.
std::size_t count_breakpoints_1d(const ReluNet& net, const Rational& lo, const Rational& hi);

}  // namespace wlgnn
