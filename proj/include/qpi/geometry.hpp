#pragma once

// Intersections of the binomial curves F: x^a y^b = 1 and G: x^c y^d = 1.
// In P^2 the curves meet in |ad - bc| transversal affine points plus the two
// points at infinity (0:1:0) and (1:0:0).

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "qpi/error.hpp"
#include "qpi/integer.hpp"
#include "qpi/qplane.hpp"
#include "qpi/scalar.hpp"
#include "qpi/torus.hpp"

namespace qpi {

struct CurvePair {
  std::int64_t a, b, c, d;

  std::int64_t determinant() const { return checked_sub(checked_mul(a, d), checked_mul(b, c)); }
};

namespace detail {

inline void require_positive(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (a < 1 || b < 1 || c < 1 || d < 1) throw DomainError("curve exponents must be positive");
}

inline void require_nondegenerate(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (checked_mul(a, d) == checked_mul(b, c)) {
    throw DomainError("DegenerateSystem: ad - bc = 0 (common component)");
  }
}

inline void require_coprime(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (gcd(a, b) != 1 || gcd(c, d) != 1) {
    throw DomainError("BadInput: coprime form requires gcd(a,b) = gcd(c,d) = 1");
  }
}

} // namespace detail

/// ((F,G) at (0:1:0), (F,G) at (1:0:0)) for irreducible F and G.
inline std::array<std::int64_t, 2> mult_at_infinity_coprime(std::int64_t a, std::int64_t b,
                                                            std::int64_t c, std::int64_t d) {
  detail::require_positive(a, b, c, d);
  detail::require_nondegenerate(a, b, c, d);
  detail::require_coprime(a, b, c, d);
  const std::int64_t cross = std::min(checked_mul(b, c), checked_mul(a, d));
  return {checked_add(checked_mul(a, c), cross), checked_add(checked_mul(b, d), cross)};
}

namespace detail {

/// Order in t of sum coeff * X^e1 * Z^e2 after X = t^px, Z = t^pz.
inline std::int64_t pullback_order(const std::map<std::array<std::int64_t, 2>, std::int64_t>& poly,
                                   std::int64_t px, std::int64_t pz) {
  std::map<std::int64_t, std::int64_t> by_order;
  for (const auto& [e, coeff] : poly) {
    by_order[checked_add(checked_mul(e[0], px), checked_mul(e[1], pz))] += coeff;
  }
  for (const auto& [order, coeff] : by_order) {
    if (coeff != 0) return order;
  }
  throw ConsistencyError("pullback vanishes identically");
}

} // namespace detail

/// (F,G) at (0:1:0) via the branch t -> (x, z) = (t^{a+b}, t^a) of
/// x^a = z^{a+b} pulled back into x^c - z^{c+d}.
inline std::int64_t puiseux_order_oracle(std::int64_t a, std::int64_t b, std::int64_t c,
                                         std::int64_t d) {
  detail::require_positive(a, b, c, d);
  detail::require_nondegenerate(a, b, c, d);
  detail::require_coprime(a, b, c, d);
  const std::map<std::array<std::int64_t, 2>, std::int64_t> g_bar{{{c, 0}, 1},
                                                                  {{0, c + d}, -1}};
  return detail::pullback_order(g_bar, a + b, a);
}

/// Same at (1:0:0): branch (y, z) = (t^{a+b}, t^b) pulled back into y^d - z^{c+d}.
inline std::int64_t puiseux_order_oracle_at_100(std::int64_t a, std::int64_t b, std::int64_t c,
                                                std::int64_t d) {
  detail::require_positive(a, b, c, d);
  detail::require_nondegenerate(a, b, c, d);
  detail::require_coprime(a, b, c, d);
  const std::map<std::array<std::int64_t, 2>, std::int64_t> g_bar{{{d, 0}, 1},
                                                                  {{0, c + d}, -1}};
  return detail::pullback_order(g_bar, a + b, b);
}

struct BranchDecomposition {
  std::int64_t d1 = 1; ///< gcd(a, b): components of F
  std::int64_t d2 = 1; ///< gcd(c, d): components of G
  std::array<std::int64_t, 4> primed{0, 0, 0, 0};
};

inline BranchDecomposition branch_decomposition(std::int64_t a, std::int64_t b, std::int64_t c,
                                                std::int64_t d) {
  BranchDecomposition r;
  r.d1 = gcd(a, b);
  r.d2 = gcd(c, d);
  r.primed = {a / r.d1, b / r.d1, c / r.d2, d / r.d2};
  return r;
}

/// Each of the d1 components of F meets each of the d2 components of G at
/// both points at infinity with the coprime multiplicities of the primed pair.
inline std::array<std::int64_t, 2> mult_at_infinity_general(std::int64_t a, std::int64_t b,
                                                            std::int64_t c, std::int64_t d) {
  detail::require_positive(a, b, c, d);
  detail::require_nondegenerate(a, b, c, d);
  const BranchDecomposition br = branch_decomposition(a, b, c, d);
  const auto [ap, bp, cp, dp] = br.primed;
  const std::int64_t pairs = checked_mul(br.d1, br.d2);
  const std::int64_t cross = std::min(checked_mul(bp, cp), checked_mul(ap, dp));
  return {checked_mul(pairs, checked_add(checked_mul(ap, cp), cross)),
          checked_mul(pairs, checked_add(checked_mul(bp, dp), cross))};
}

struct BezoutLedger {
  std::int64_t total = 0;        ///< (a+b)(c+d)
  std::int64_t affine_count = 0; ///< |ad - bc|
  std::int64_t mult_at_010 = 0;
  std::int64_t mult_at_100 = 0;

  bool balanced() const { return total == affine_count + mult_at_010 + mult_at_100; }
  friend bool operator==(const BezoutLedger&, const BezoutLedger&) = default;
};

inline BezoutLedger bezout_ledger(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  detail::require_positive(a, b, c, d);
  detail::require_nondegenerate(a, b, c, d);
  const auto [m010, m100] = mult_at_infinity_general(a, b, c, d);
  BezoutLedger ledger{checked_mul(a + b, c + d),
                      abs_checked(CurvePair{a, b, c, d}.determinant()), m010, m100};
  if (!ledger.balanced()) throw ConsistencyError("Bezout ledger does not balance");
  return ledger;
}

/// (ad - bc) x0^{a+c-1} y0^{b+d-1} evaluated exactly at a torsion point.
inline Scalar tangent_determinant(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                                  const TorsionPoint& p) {
  const Unit x0 = Unit::root_of_unity(p.den(), p.num1());
  const Unit y0 = Unit::root_of_unity(p.den(), p.num2());
  const Unit u = x0.pow(a + c - 1) * y0.pow(b + d - 1);
  return Scalar(CurvePair{a, b, c, d}.determinant()) * u.to_scalar(QSpec::transcendental());
}

/// All affine intersection points; each is checked to be transversal.
/// Zero exponents are accepted here.
inline std::vector<TorsionPoint> affine_intersection_points(std::int64_t a, std::int64_t b,
                                                            std::int64_t c, std::int64_t d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) throw DomainError("exponents must be nonnegative");
  detail::require_nondegenerate(a, b, c, d);
  const std::array<Character, 2> rows{Character{a, b}, Character{c, d}};
  const GroupReport report = solve_constraints(rows);
  std::vector<TorsionPoint> points = enumerate_group(report.generators);
  if (static_cast<std::int64_t>(points.size()) != abs_checked(CurvePair{a, b, c, d}.determinant())) {
    throw ConsistencyError("affine point count differs from |ad - bc|");
  }
  for (const TorsionPoint& p : points) {
    if (tangent_determinant(a, b, c, d, p).is_zero()) {
      throw ConsistencyError("non-transversal affine intersection at " + p.to_string());
    }
  }
  return points;
}

struct IntersectionReport {
  std::array<std::int64_t, 2> degrees{0, 0};
  BezoutLedger ledger;
  std::vector<TorsionPoint> points;
  BranchDecomposition branches;
};

inline IntersectionReport intersect(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  IntersectionReport r;
  r.ledger = bezout_ledger(a, b, c, d);
  r.degrees = {a + b, c + d};
  r.points = affine_intersection_points(a, b, c, d);
  r.branches = branch_decomposition(a, b, c, d);
  return r;
}

} // namespace qpi
