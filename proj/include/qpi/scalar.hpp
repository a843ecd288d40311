#pragma once

/**
 * @file scalar.hpp
 * @brief Exact coefficients in Q(zeta_L)[q, q^-1].
 *
 * A Scalar is a finitely supported sum of r * q^k * zeta_L^j with rational
 * r. Zeta powers are kept reduced modulo the L-th cyclotomic polynomial, so
 * two scalars are equal exactly when their canonical term maps agree after
 * lifting to a common conductor. Under a root-of-unity QSpec of order N the
 * parameter q is folded into zeta_L^{L/N} and never appears in the terms.
 */

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qpi/error.hpp"
#include "qpi/integer.hpp"

namespace qpi {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Conductor cap

namespace detail {
inline std::atomic<std::int64_t>& conductor_cap_storage() {
  static std::atomic<std::int64_t> cap{10000};
  return cap;
}
} // namespace detail

inline std::int64_t max_conductor() { return detail::conductor_cap_storage().load(); }

inline void set_max_conductor(std::int64_t cap) {
  if (cap < 1) throw DomainError("conductor cap must be positive");
  detail::conductor_cap_storage().store(cap);
}

inline void check_conductor(std::int64_t conductor) {
  if (conductor > max_conductor()) {
    throw ResourceError("conductor " + std::to_string(conductor) + " exceeds cap " +
                        std::to_string(max_conductor()));
  }
}

// ---------------------------------------------------------------------------
// QSpec

/// Arithmetic nature of the quantum parameter q.
class QSpec {
public:
  enum class Kind { transcendental, root_of_unity };

  static QSpec transcendental() { return QSpec(Kind::transcendental, 0); }

  /// q a primitive N-th root of unity. q^2 = 1 is excluded, so N >= 3.
  static QSpec root_of_unity(std::int64_t order) {
    if (order < 3) {
      throw DomainError("root of unity order must be >= 3 (q^2 != 1), got " +
                        std::to_string(order));
    }
    return QSpec(Kind::root_of_unity, order);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_root_of_unity() const noexcept { return kind_ == Kind::root_of_unity; }
  /// N for a root of unity, 0 when transcendental.
  std::int64_t order() const noexcept { return order_; }

  bool q_power_is_one(std::int64_t k) const noexcept {
    return is_root_of_unity() ? k % order_ == 0 : k == 0;
  }

  std::string to_string() const {
    return is_root_of_unity() ? "root " + std::to_string(order_) : "transcendental";
  }

  friend bool operator==(const QSpec&, const QSpec&) = default;

private:
  QSpec(Kind kind, std::int64_t order) : kind_(kind), order_(order) {}

  Kind kind_;
  std::int64_t order_;
};

inline bool q_power_is_one(std::int64_t k, const QSpec& spec) { return spec.q_power_is_one(k); }

// ---------------------------------------------------------------------------
// Integer polynomials and cyclotomic polynomials

/// Dense integer polynomial, coefficient of t^i at index i.
using IntPoly = std::vector<std::int64_t>;

namespace detail {

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Exact quotient num / den for monic den. Throws if the division leaves a
/// remainder.
inline IntPoly divide_exact_monic(IntPoly num, const IntPoly& den) {
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) throw ConsistencyError("non-exact polynomial division");
  IntPoly quotient(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const std::int64_t c = num[i];
    if (c == 0) continue;
    quotient[i - dd] = c;
    for (std::size_t k = 0; k <= dd; ++k) {
      num[i - dd + k] = checked_sub(num[i - dd + k], checked_mul(c, den[k]));
    }
  }
  for (std::size_t i = 0; i < dd; ++i) {
    if (num[i] != 0) throw ConsistencyError("non-exact polynomial division");
  }
  return quotient;
}

} // namespace detail

/// The N-th cyclotomic polynomial, obtained by dividing t^N - 1 by Phi_d for
/// every proper divisor d of N. Results are memoized process-wide.
inline const IntPoly& cyclotomic_poly(std::int64_t n) {
  if (n < 1) throw DomainError("cyclotomic_poly requires N >= 1");
  check_conductor(n);

  static std::mutex mutex;
  static std::map<std::int64_t, IntPoly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }

  IntPoly poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d : divisors(n)) {
    if (d == n) break;
    poly = detail::divide_exact_monic(std::move(poly), cyclotomic_poly(d));
  }

  std::lock_guard lock(mutex);
  return cache.try_emplace(n, std::move(poly)).first->second;
}

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (auto [p, e] : factorize(n)) result = result / p * (p - 1);
  return result;
}

// ---------------------------------------------------------------------------
// Scalar

class Scalar;
std::string format_rational(const Rational& r);

/// Element of Q(zeta_L)[q, q^-1] in canonical form.
class Scalar {
public:
  /// (power of q, power of zeta)
  using Key = std::pair<std::int64_t, std::int64_t>;
  using Terms = std::map<Key, Rational>;

  Scalar() = default;
  Scalar(std::int64_t value) : Scalar(Rational(value)) {}
  explicit Scalar(const Rational& value) {
    if (value != 0) terms_.emplace(Key{0, 0}, value);
  }

  /// Canonicalizes an arbitrary term map at the given conductor. Zeta powers
  /// may be any integers; they are reduced mod L and then mod Phi_L.
  static Scalar from_terms(std::int64_t conductor, const Terms& raw) {
    if (conductor < 1) throw DomainError("conductor must be positive");
    check_conductor(conductor);
    Scalar s;
    s.conductor_ = conductor;
    if (conductor == 1) {
      for (const auto& [key, c] : raw) s.terms_[{key.first, 0}] += c;
      std::erase_if(s.terms_, [](const auto& kv) { return kv.second == 0; });
      return s;
    }

    const IntPoly& phi = cyclotomic_poly(conductor);
    const std::size_t degree = phi.size() - 1;
    const std::size_t len = static_cast<std::size_t>(conductor);

    std::map<std::int64_t, std::vector<Rational>> by_q;
    for (const auto& [key, c] : raw) {
      if (c == 0) continue;
      auto& dense = by_q[key.first];
      if (dense.empty()) dense.assign(len, Rational(0));
      dense[static_cast<std::size_t>(floor_mod(key.second, conductor))] += c;
    }
    for (auto& [qpow, dense] : by_q) {
      for (std::size_t e = len; e-- > degree;) {
        if (dense[e] == 0) continue;
        const Rational c = dense[e];
        dense[e] = 0;
        for (std::size_t k = 0; k < degree; ++k) {
          if (phi[k] != 0) dense[e - degree + k] -= c * phi[k];
        }
      }
      for (std::size_t e = 0; e < degree; ++e) {
        if (dense[e] != 0) s.terms_.emplace(Key{qpow, static_cast<std::int64_t>(e)}, dense[e]);
      }
    }
    return s;
  }

  /// zeta_L^power.
  static Scalar zeta(std::int64_t conductor, std::int64_t power) {
    return from_terms(conductor, {{Key{0, power}, Rational(1)}});
  }

  /// q^k, folded into zeta_N^k when q is an N-th root of unity.
  static Scalar q_power(std::int64_t k, const QSpec& spec) {
    if (spec.is_root_of_unity()) return zeta(spec.order(), k);
    Scalar s;
    s.terms_.emplace(Key{k, 0}, Rational(1));
    return s;
  }

  std::int64_t conductor() const noexcept { return conductor_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Value as a rational, if the scalar has no q or zeta dependence.
  std::optional<Rational> as_rational() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_.begin()->first == Key{0, 0}) return terms_.begin()->second;
    return std::nullopt;
  }

  bool is_one() const {
    auto r = as_rational();
    return r && *r == 1;
  }

  /// Same value represented at a multiple of the current conductor.
  Scalar lifted(std::int64_t conductor) const {
    if (conductor % conductor_ != 0) {
      throw DomainError("cannot lift conductor " + std::to_string(conductor_) + " to " +
                        std::to_string(conductor));
    }
    if (conductor == conductor_) return *this;
    const std::int64_t step = conductor / conductor_;
    Terms raw;
    for (const auto& [key, c] : terms_) raw.emplace(Key{key.first, key.second * step}, c);
    return from_terms(conductor, raw);
  }

  /// Folds q-powers into zeta-powers under a root-of-unity spec.
  Scalar specialized(const QSpec& spec) const {
    if (!spec.is_root_of_unity()) return *this;
    const std::int64_t conductor = lcm(conductor_, spec.order());
    check_conductor(conductor);
    const std::int64_t zeta_step = conductor / conductor_;
    const std::int64_t q_step = conductor / spec.order();
    Terms raw;
    for (const auto& [key, c] : terms_) {
      const std::int64_t z =
          floor_mod(checked_add(checked_mul(key.second, zeta_step),
                                checked_mul(floor_mod(key.first, spec.order()), q_step)),
                    conductor);
      raw[Key{0, z}] += c;
    }
    return from_terms(conductor, raw);
  }

  Scalar pow(std::uint64_t exponent) const {
    Scalar result(1);
    Scalar base = *this;
    while (exponent != 0) {
      if (exponent & 1U) result = result * base;
      exponent >>= 1U;
      if (exponent != 0) base = base * base;
    }
    return result;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (b.is_zero() && a.conductor_ % b.conductor_ == 0) return a;
    if (a.is_zero() && b.conductor_ % a.conductor_ == 0) return b;
    const std::int64_t conductor = lcm(a.conductor_, b.conductor_);
    check_conductor(conductor);
    const std::int64_t sa = conductor / a.conductor_, sb = conductor / b.conductor_;
    Terms raw;
    for (const auto& [key, c] : a.terms_) raw[Key{key.first, key.second * sa}] += c;
    for (const auto& [key, c] : b.terms_) raw[Key{key.first, key.second * sb}] += c;
    return from_terms(conductor, raw);
  }

  friend Scalar operator-(const Scalar& a) {
    Scalar r = a;
    for (auto& [key, c] : r.terms_) c = -c;
    return r;
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    const std::int64_t conductor = lcm(a.conductor_, b.conductor_);
    check_conductor(conductor);
    if (a.is_zero() || b.is_zero()) {
      Scalar zero;
      zero.conductor_ = conductor;
      return zero;
    }
    const std::int64_t sa = conductor / a.conductor_, sb = conductor / b.conductor_;
    Terms raw;
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) {
        raw[Key{checked_add(ka.first, kb.first),
                floor_mod(ka.second * sa + kb.second * sb, conductor)}] += ca * cb;
      }
    }
    return from_terms(conductor, raw);
  }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  /// Mathematical equality (independent of the stored conductor).
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.conductor_ == b.conductor_) return a.terms_ == b.terms_;
    return (a - b).is_zero();
  }

  /// Text form, e.g. `conductor=12; 1/2*q^-1*z^3 + 2`. The conductor prefix
  /// is omitted for conductor 1 or when `with_conductor` is false.
  std::string to_string(bool with_conductor = true) const;

private:
  std::int64_t conductor_ = 1;
  Terms terms_;
};

inline std::string format_rational(const Rational& r) {
  std::string s = boost::multiprecision::numerator(r).str();
  const BigInt den = boost::multiprecision::denominator(r);
  if (den != 1) s += "/" + den.str();
  return s;
}

namespace detail {

/// Body of a single term r * q^k * z^j * (extra factors), without sign.
inline std::string term_body(const Rational& magnitude, std::int64_t qpow, std::int64_t zpow,
                             const std::string& extra) {
  std::vector<std::string> factors;
  if (qpow == 1) factors.emplace_back("q");
  else if (qpow != 0) factors.push_back("q^" + std::to_string(qpow));
  if (zpow == 1) factors.emplace_back("z");
  else if (zpow != 0) factors.push_back("z^" + std::to_string(zpow));
  if (!extra.empty()) factors.push_back(extra);

  std::string out;
  if (magnitude != 1 || factors.empty()) out = format_rational(magnitude);
  for (const auto& f : factors) {
    if (!out.empty()) out += "*";
    out += f;
  }
  return out;
}

inline void append_signed(std::string& out, bool negative, const std::string& body) {
  if (out.empty()) out = negative ? "-" + body : body;
  else out += (negative ? " - " : " + ") + body;
}

} // namespace detail

inline std::string Scalar::to_string(bool with_conductor) const {
  std::string out;
  for (const auto& [key, c] : terms_) {
    detail::append_signed(out, c < 0, detail::term_body(abs(c), key.first, key.second, ""));
  }
  if (out.empty()) out = "0";
  if (with_conductor && conductor_ > 1) out = "conductor=" + std::to_string(conductor_) + "; " + out;
  return out;
}

// ---------------------------------------------------------------------------
// Unit

/// Invertible monomial r * q^k * zeta_L^j, r != 0. Kept unreduced so that
/// powers and inverses stay monomials.
struct Unit {
  Rational coeff{1};
  std::int64_t q_exp = 0;
  std::int64_t conductor = 1;
  std::int64_t zeta_exp = 0;

  static Unit root_of_unity(std::int64_t order, std::int64_t power) {
    if (order < 1) throw DomainError("root of unity order must be positive");
    return Unit{Rational(1), 0, order, floor_mod(power, order)};
  }

  static Unit rational(const Rational& r) {
    if (r == 0) throw DomainError("zero is not a unit");
    return Unit{r, 0, 1, 0};
  }

  Unit pow(std::int64_t e) const {
    Rational c = 1;
    const Rational base = e >= 0 ? coeff : Rational(1) / coeff;
    for (std::int64_t i = 0, n = e >= 0 ? e : -e; i < n; ++i) c *= base;
    return Unit{c, checked_mul(q_exp, e), conductor,
                floor_mod(checked_mul(floor_mod(zeta_exp, conductor), floor_mod(e, conductor)),
                          conductor)};
  }

  Unit inverse() const { return pow(-1); }

  friend Unit operator*(const Unit& a, const Unit& b) {
    const std::int64_t conductor = lcm(a.conductor, b.conductor);
    const std::int64_t z = a.zeta_exp * (conductor / a.conductor) +
                           b.zeta_exp * (conductor / b.conductor);
    return Unit{a.coeff * b.coeff, checked_add(a.q_exp, b.q_exp), conductor,
                floor_mod(z, conductor)};
  }

  Scalar to_scalar(const QSpec& spec) const {
    Scalar s = Scalar::from_terms(conductor, {{Scalar::Key{q_exp, zeta_exp}, coeff}});
    return s.specialized(spec);
  }
};

} // namespace qpi
