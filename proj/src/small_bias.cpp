#include "wlgnn/small_bias.hpp"

#include <bit>

#include "wlgnn/errors.hpp"
#include "wlgnn/random.hpp"

namespace wlgnn {
namespace {

// a * b mod m for polynomials with deg a, deg b < deg m = k.
std::uint64_t polymulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m, int k) {
  const std::uint64_t top = std::uint64_t{1} << (k - 1);
  const std::uint64_t low = m & ~(std::uint64_t{1} << k);  // m without x^k (k <= 63)
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    const bool carry = (a & top) != 0;
    a = (a << 1) & ((top << 1) - 1);
    if (carry) a ^= low;
  }
  return r;
}

std::uint64_t polymod(std::uint64_t a, std::uint64_t m) {
  const int dm = poly_degree(m);
  for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) a ^= m << (d - dm);
  return a;
}

std::uint64_t polygcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = polymod(a, b);
    std::swap(a, b);
  }
  return a;
}

// x^(2^e) mod m
std::uint64_t frobenius(std::uint64_t m, int k, int e) {
  std::uint64_t r = k > 1 ? 0b10 : polymod(0b10, m);
  for (int i = 0; i < e; ++i) r = polymulmod(r, r, m, k);
  return r;
}

}  // namespace

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

// Rabin's test: x^(2^k) = x mod p, and gcd(x^(2^(k/q)) - x, p) = 1 for
// every prime q dividing k.
bool is_irreducible(std::uint64_t p) {
  const int k = poly_degree(p);
  if (k < 1) return false;
  if (k == 1) return true;
  if (frobenius(p, k, k) != 0b10) return false;
  int rest = k;
  for (int q = 2; q <= rest; ++q) {
    if (rest % q) continue;
    while (rest % q == 0) rest /= q;
    if (polygcd(p, frobenius(p, k, k / q) ^ 0b10) != 1) return false;
  }
  return true;
}

std::uint64_t smallest_irreducible(int k) {
  if (k < 1 || k > 63) throw ParameterError("field degree must be in [1, 63]");
  const std::uint64_t lead = std::uint64_t{1} << k;
  for (std::uint64_t low = 0; low < lead; ++low) {
    if (is_irreducible(lead | low)) return lead | low;
  }
  throw ParameterError("no irreducible polynomial found");
}

Gf2k::Gf2k(int k) : Gf2k(k, smallest_irreducible(k)) {}

Gf2k::Gf2k(int k, std::uint64_t modulus) : k_(k), modulus_(modulus) {
  if (k < 1 || k > 63 || poly_degree(modulus) != k) throw ParameterError("modulus degree must equal k in [1, 63]");
}

std::uint64_t Gf2k::mul(std::uint64_t a, std::uint64_t b) const { return polymulmod(a, b, modulus_, k_); }

std::uint64_t Gf2k::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

int aghp_degree(std::int64_t F, const Rational& epsilon) {
  if (F < 1) throw ParameterError("F must be positive");
  if (sgn(epsilon) <= 0 || epsilon >= 1) throw ParameterError("epsilon must lie in (0, 1)");
  const Rational ratio = Rational(static_cast<long>(F)) / epsilon;
  int k = 0;
  BigInt pow2 = 1;
  while (pow2 < ratio) {
    pow2 *= 2;
    ++k;
  }
  if (k + 1 > 63) throw ParameterError("F / epsilon too large for a 63-bit field");
  return k + 1;
}

BitSource BitSource::table(std::vector<std::uint8_t> bits) {
  BitSource s;
  s.kind_ = Kind::Table;
  s.length_ = static_cast<std::int64_t>(bits.size());
  for (auto b : bits)
    if (b > 1) throw ParameterError("bit table entries must be 0 or 1");
  s.bits_ = std::move(bits);
  return s;
}

BitSource BitSource::hashed(std::uint64_t key, std::int64_t length) {
  if (length < 1) throw ParameterError("bit source length must be positive");
  BitSource s;
  s.kind_ = Kind::Hashed;
  s.length_ = length;
  s.key_ = key;
  return s;
}

BitSource BitSource::aghp(const Gf2k& field, std::uint64_t x, std::uint64_t y, std::int64_t length) {
  if (length < 1) throw ParameterError("bit source length must be positive");
  const std::uint64_t mask = (std::uint64_t{1} << field.degree()) - 1;
  if ((x & ~mask) || (y & ~mask)) throw ParameterError("aghp seed element outside the field");
  BitSource s;
  s.kind_ = Kind::Aghp;
  s.length_ = length;
  s.field_ = field;
  s.x_ = x;
  s.y_ = y;
  return s;
}

bool BitSource::bit(std::int64_t i) const {
  if (i < 0 || i >= length_) throw ParameterError("bit index out of range");
  switch (kind_) {
    case Kind::Table:
      return bits_[static_cast<std::size_t>(i)] != 0;
    case Kind::Hashed: {
      const std::uint64_t word = mix64(key_ ^ mix64(static_cast<std::uint64_t>(i) >> 6));
      return (word >> (i & 63)) & 1;
    }
    case Kind::Aghp:
      return std::popcount(x_ & field_.pow(y_, static_cast<std::uint64_t>(i))) & 1;
  }
  return false;
}

std::vector<std::uint8_t> BitSource::materialize() const {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(length_));
  if (kind_ == Kind::Aghp) {
    std::uint64_t yi = 1;
    for (std::int64_t i = 0; i < length_; ++i) {
      out[static_cast<std::size_t>(i)] = std::popcount(x_ & yi) & 1;
      yi = field_.mul(yi, y_);
    }
    return out;
  }
  for (std::int64_t i = 0; i < length_; ++i) out[static_cast<std::size_t>(i)] = bit(i);
  return out;
}

}  // namespace wlgnn
