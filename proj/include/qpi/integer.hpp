#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qpi/error.hpp"

namespace qpi {

// Overflow-checked 64-bit helpers. Overflow is reported as a resource error.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("integer overflow in addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw ResourceError("integer overflow in subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("integer overflow in multiplication");
  return r;
}

inline std::int64_t abs_checked(std::int64_t a) {
  if (a == INT64_MIN) throw ResourceError("integer overflow in abs");
  return a < 0 ? -a : a;
}

/// Nonnegative gcd; gcd(0, x) = |x|.
inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
  return std::gcd(abs_checked(a), abs_checked(b));
}

inline std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::int64_t g = gcd(a, b);
  return checked_mul(abs_checked(a) / g, abs_checked(b));
}

/// Representative of a mod m in [0, m), for m > 0.
inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

struct ExtendedGcd {
  std::int64_t gcd;
  std::int64_t x; ///< a*x + b*y == gcd
  std::int64_t y;
};

/// Iterative extended Euclid. The returned gcd is nonnegative.
inline ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t quotient = old_r / r;
    std::tie(old_r, r) = std::pair{r, checked_sub(old_r, checked_mul(quotient, r))};
    std::tie(old_s, s) = std::pair{s, checked_sub(old_s, checked_mul(quotient, s))};
    std::tie(old_t, t) = std::pair{t, checked_sub(old_t, checked_mul(quotient, t))};
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Prime factorization by trial division, primes ascending.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> factors;
  n = abs_checked(n);
  for (std::int64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

/// Positive divisors of n > 0, ascending.
inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d <= n / d; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline std::int64_t ipow(std::int64_t base, int exponent) {
  std::int64_t r = 1;
  for (int i = 0; i < exponent; ++i) r = checked_mul(r, base);
  return r;
}

} // namespace qpi
