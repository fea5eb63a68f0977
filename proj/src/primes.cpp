#include "wlgnn/primes.hpp"

#include <limits>

#include "wlgnn/errors.hpp"

namespace wlgnn {
namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : bases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : bases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::int64_t choose_prime(std::int64_t n, int exponent) {
  if (n < 1 || exponent < 1) throw ParameterError("choose_prime needs n >= 1 and exponent >= 1");
  constexpr auto limit = static_cast<u128>(std::numeric_limits<std::int64_t>::max());
  u128 power = 1;
  for (int i = 0; i < exponent; ++i) {
    power *= static_cast<u128>(n);
    if (power > limit) throw ParameterError("n^exponent overflows 64 bits");
  }
  u128 start = std::max<u128>(power, 2 * static_cast<u128>(n) + 1);
  for (u128 c = start; c <= limit; ++c) {
    if (is_prime(static_cast<std::uint64_t>(c))) return static_cast<std::int64_t>(c);
  }
  throw ParameterError("no prime below the 64-bit limit");
}

BigInt required_field_size(std::int64_t n, std::int64_t T, const Rational& delta) {
  if (n < 1 || T < 1 || sgn(delta) <= 0) throw ParameterError("required_field_size needs positive arguments");
  BigInt nn(static_cast<long>(n));
  Rational bound = Rational(nn * nn * BigInt(static_cast<long>(T))) / delta;
  return ceil_of(bound);
}

}  // namespace wlgnn
