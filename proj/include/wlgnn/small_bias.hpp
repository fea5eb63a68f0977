#pragma once

#include <cstdint>
#include <vector>

#include "wlgnn/rational.hpp"

namespace wlgnn {

// GF(2)[x] polynomials packed into a word, bit i = coefficient of x^i.
// Degrees up to 63 are supported.
int poly_degree(std::uint64_t p);
bool is_irreducible(std::uint64_t p);
// Smallest (as an integer) irreducible polynomial of exact degree k.
std::uint64_t smallest_irreducible(int k);

// Arithmetic in GF(2^k) = GF(2)[x] / (modulus).
class Gf2k {
 public:
  explicit Gf2k(int k);
  Gf2k(int k, std::uint64_t modulus);

  int degree() const noexcept { return k_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

 private:
  int k_;
  std::uint64_t modulus_;
};

// Field degree for the powering generator: ceil(log2(F / eps)) + 1.
int aghp_degree(std::int64_t F, const Rational& epsilon);

enum class BiasMode { UniformTable, Aghp };

// One source of F pseudo-random bits indexed by i in [0, F).
//  - table: an explicit bit string
//  - hashed: a uniformly random string, generated lazily from a key
//  - aghp: bit i = <x, y^i> mod 2 over GF(2^k)
class BitSource {
 public:
  static BitSource table(std::vector<std::uint8_t> bits);
  static BitSource hashed(std::uint64_t key, std::int64_t length);
  static BitSource aghp(const Gf2k& field, std::uint64_t x, std::uint64_t y, std::int64_t length);

  std::int64_t length() const noexcept { return length_; }
  bool bit(std::int64_t i) const;
  std::vector<std::uint8_t> materialize() const;

 private:
  enum class Kind { Table, Hashed, Aghp };
  Kind kind_ = Kind::Table;
  std::int64_t length_ = 0;
  std::vector<std::uint8_t> bits_;
  std::uint64_t key_ = 0;
  Gf2k field_{1, 0b11};
  std::uint64_t x_ = 0, y_ = 0;
};

inline bool eps_biased_bit(const BitSource& source, std::int64_t i) { return source.bit(i); }

}  // namespace wlgnn
