#pragma once

/**
 * @file torus.hpp
 * @brief Characters of the two-dimensional torus and their common kernels.
 *
 * A character (m, n) stands for the equation mu1^m mu2^n = 1. Torsion points
 * of (k*)^2 are written additively as pairs in (Q/Z)^2, so the equation
 * becomes m*u + n*v = 0 mod 1. The kernel of a set of characters is the
 * annihilator of the lattice they span; its structure comes from the Smith
 * normal form of the exponent matrix.
 */

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qpi/error.hpp"
#include "qpi/integer.hpp"

namespace qpi {

struct Character {
  std::int64_t m = 0;
  std::int64_t n = 0;

  bool is_trivial() const noexcept { return m == 0 && n == 0; }

  /// (m, n) and (-m, -n) have the same kernel; keep the one whose first
  /// nonzero entry is positive.
  Character normalized() const {
    if (m < 0 || (m == 0 && n < 0)) return {-m, -n};
    return *this;
  }

  friend auto operator<=>(const Character&, const Character&) = default;
};

/// Sign-normalizes, drops trivial characters, sorts and deduplicates.
inline std::vector<Character> ingest(std::span<const Character> chars) {
  std::vector<Character> out;
  for (const Character& c : chars) {
    if (!c.is_trivial()) out.push_back(c.normalized());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Point (num1/den, num2/den) of (Q/Z)^2 in lowest terms; den is its order.
class TorsionPoint {
public:
  TorsionPoint() = default;

  TorsionPoint(std::int64_t num1, std::int64_t num2, std::int64_t den) {
    if (den == 0) throw DomainError("torsion point with zero denominator");
    if (den < 0) {
      den = -den;
      num1 = -num1;
      num2 = -num2;
    }
    num1 = floor_mod(num1, den);
    num2 = floor_mod(num2, den);
    const std::int64_t g = gcd(gcd(num1, num2), den);
    num1_ = num1 / g;
    num2_ = num2 / g;
    den_ = den / g;
  }

  /// (n1/d1, n2/d2) with arbitrary signs.
  static TorsionPoint from_fractions(std::int64_t n1, std::int64_t d1, std::int64_t n2,
                                     std::int64_t d2) {
    if (d1 == 0 || d2 == 0) throw DomainError("torsion point with zero denominator");
    const std::int64_t den = lcm(d1, d2);
    return TorsionPoint(checked_mul(n1, den / d1), checked_mul(n2, den / d2), den);
  }

  std::int64_t num1() const noexcept { return num1_; }
  std::int64_t num2() const noexcept { return num2_; }
  std::int64_t den() const noexcept { return den_; }
  std::int64_t order() const noexcept { return den_; }

  friend TorsionPoint operator+(const TorsionPoint& a, const TorsionPoint& b) {
    const std::int64_t den = lcm(a.den_, b.den_);
    return TorsionPoint(a.num1_ * (den / a.den_) + b.num1_ * (den / b.den_),
                        a.num2_ * (den / a.den_) + b.num2_ * (den / b.den_), den);
  }

  friend TorsionPoint operator-(const TorsionPoint& a) {
    return TorsionPoint(-a.num1_, -a.num2_, a.den_);
  }

  TorsionPoint scaled(std::int64_t k) const {
    return TorsionPoint(checked_mul(floor_mod(k, den_), num1_), checked_mul(floor_mod(k, den_), num2_),
                        den_);
  }

  std::string to_string() const {
    return "(" + std::to_string(num1_) + "/" + std::to_string(den_) + ", " +
           std::to_string(num2_) + "/" + std::to_string(den_) + ")";
  }

  friend auto operator<=>(const TorsionPoint&, const TorsionPoint&) = default;

private:
  std::int64_t num1_ = 0;
  std::int64_t num2_ = 0;
  std::int64_t den_ = 1;
};

/// m*u + n*v in Z.
inline bool char_eval(const Character& c, const TorsionPoint& p) {
  const std::int64_t k = floor_mod(c.m, p.den());
  const std::int64_t l = floor_mod(c.n, p.den());
  return floor_mod(checked_add(checked_mul(k, p.num1()), checked_mul(l, p.num2())), p.den()) == 0;
}

inline bool satisfies_all(std::span<const Character> chars, const TorsionPoint& p) {
  return std::all_of(chars.begin(), chars.end(), [&](const Character& c) { return char_eval(c, p); });
}

inline bool minors_all_zero(std::span<const Character> chars) {
  for (std::size_t i = 0; i < chars.size(); ++i) {
    for (std::size_t j = i + 1; j < chars.size(); ++j) {
      if (checked_mul(chars[i].m, chars[j].n) != checked_mul(chars[j].m, chars[i].n)) return false;
    }
  }
  return true;
}

/// When all minors vanish, (gcd m_i, gcd n_i) with the sign of the common
/// direction; mu1^m mu2^n - 1 then divides every mu1^{m_i} mu2^{n_i} - 1.
inline std::optional<Character> common_binomial_factor(std::span<const Character> chars) {
  const std::vector<Character> active = ingest(chars);
  if (active.empty() || !minors_all_zero(active)) return std::nullopt;
  std::int64_t m = 0, n = 0;
  bool negative_n = false;
  for (const Character& c : active) {
    m = gcd(m, c.m);
    n = gcd(n, c.n);
    if (c.n < 0) negative_n = true;
  }
  return Character{m, negative_n ? -n : n};
}

/// b with c = b * factor, for a character on the factor's line.
inline std::int64_t cofactor_degree(const Character& factor, const Character& c) {
  const Character nc = c.normalized();
  return factor.m != 0 ? nc.m / factor.m : nc.n / factor.n;
}

/// Exponents of the cofactor sum_{l=0}^{b-1} (mu1^m mu2^n)^l.
inline std::vector<Character> geometric_cofactor(const Character& factor, std::int64_t b) {
  std::vector<Character> exps;
  for (std::int64_t l = 0; l < b; ++l) {
    exps.push_back({checked_mul(l, factor.m), checked_mul(l, factor.n)});
  }
  return exps;
}

// ---------------------------------------------------------------------------
// Smith normal form

using Matrix2 = std::array<std::array<std::int64_t, 2>, 2>;

struct SmithForm {
  int rank = 0;
  /// s1 | s2; entries past the rank are zero.
  std::array<std::int64_t, 2> diagonal{0, 0};
  /// Unimodular V with U * A * V = diag. The solution group is V applied to
  /// (Z/s1 x Z/s2) scaled by 1/s_i.
  Matrix2 column_transform{{{1, 0}, {0, 1}}};
};

/// SNF of the k x 2 matrix whose rows are the characters. Pivot choice:
/// smallest absolute nonzero entry, row-major ties.
inline SmithForm smith_normal_form(std::span<const Character> chars) {
  std::vector<std::array<std::int64_t, 2>> a;
  for (const Character& c : chars) a.push_back({c.m, c.n});
  SmithForm result;
  Matrix2& v = result.column_transform;
  const std::size_t rows = a.size();

  auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (auto& row : a) std::swap(row[c1], row[c2]);
    for (auto& row : v) std::swap(row[c1], row[c2]);
  };
  auto sub_col = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (auto& row : a) row[dst] = checked_sub(row[dst], checked_mul(q, row[src]));
    for (auto& row : v) row[dst] = checked_sub(row[dst], checked_mul(q, row[src]));
  };
  auto sub_row = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (std::size_t j = 0; j < 2; ++j) a[dst][j] = checked_sub(a[dst][j], checked_mul(q, a[src][j]));
  };

  for (std::size_t t = 0; t < 2 && t < rows; ++t) {
    bool found = false;
    for (;;) {
      std::size_t pi = 0, pj = 0;
      std::int64_t best = 0;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < 2; ++j) {
          const std::int64_t e = abs_checked(a[i][j]);
          if (e != 0 && (best == 0 || e < best)) {
            best = e;
            pi = i;
            pj = j;
          }
        }
      }
      if (best == 0) break;
      found = true;
      std::swap(a[t], a[pi]);
      swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        sub_row(i, t, a[i][t] / a[t][t]);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < 2; ++j) {
        if (a[t][j] == 0) continue;
        sub_col(j, t, a[t][j] / a[t][t]);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < 2; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = 0; k < 2; ++k) a[t][k] = checked_add(a[t][k], a[i][k]);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (!found) break;
    if (a[t][t] < 0) {
      for (auto& e : a[t]) e = -e;
    }
    result.diagonal[t] = a[t][t];
    result.rank = static_cast<int>(t) + 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Group reports

enum class Classification { full_torus, infinite, finite };

inline const char* to_string(Classification c) {
  switch (c) {
  case Classification::full_torus: return "FullTorus";
  case Classification::infinite: return "Infinite";
  case Classification::finite: return "Finite";
  }
  return "?";
}

struct GroupReport {
  Classification classification = Classification::full_torus;
  /// Number of k* factors: 2 minus the rank of the character lattice.
  int torus_rank = 2;
  /// (d1, d2) with d2 | d1; the torsion part is Z_d1 + Z_d2.
  std::array<std::int64_t, 2> torsion_invariants{1, 1};
  /// Finite case only.
  std::optional<std::int64_t> order;
  /// Finite: generating set. Infinite: generators of the torsion part.
  std::vector<TorsionPoint> generators;
  /// Infinite case: the common factor divided by its content.
  std::optional<Character> primitive_character;

  friend bool operator==(const GroupReport&, const GroupReport&) = default;
};

/// Invariant-factor form (d1, d2), d2 | d1, of Z_a + Z_b.
inline std::array<std::int64_t, 2> canonical_invariants(std::int64_t a, std::int64_t b) {
  return {lcm(a, b), gcd(a, b)};
}

/// Solution group of mu1^{m_i} mu2^{n_i} = 1 for all i.
inline GroupReport solve_constraints(std::span<const Character> chars) {
  const std::vector<Character> active = ingest(chars);
  GroupReport report;
  if (active.empty()) return report;

  const SmithForm snf = smith_normal_form(active);
  const Matrix2& v = snf.column_transform;
  auto column_point = [&](std::size_t col, std::int64_t s) {
    return TorsionPoint(v[0][col], v[1][col], s);
  };

  if (snf.rank == 1) {
    const std::int64_t g = snf.diagonal[0];
    report.classification = Classification::infinite;
    report.torus_rank = 1;
    report.torsion_invariants = {g, 1};
    if (g > 1) report.generators.push_back(column_point(0, g));
    const auto factor = common_binomial_factor(active);
    if (!factor) throw ConsistencyError("rank-1 character lattice without a common factor");
    const std::int64_t content = gcd(factor->m, factor->n);
    if (content != g) {
      throw ConsistencyError("common factor content " + std::to_string(content) +
                             " disagrees with Smith invariant " + std::to_string(g));
    }
    report.primitive_character = Character{factor->m / content, factor->n / content};
  } else {
    const std::int64_t s1 = snf.diagonal[0], s2 = snf.diagonal[1];
    report.classification = Classification::finite;
    report.torus_rank = 0;
    report.torsion_invariants = {s2, s1};
    report.order = checked_mul(s1, s2);
    if (s2 > 1) report.generators.push_back(column_point(1, s2));
    if (s1 > 1) report.generators.push_back(column_point(0, s1));
  }

  for (const TorsionPoint& p : report.generators) {
    if (!satisfies_all(active, p)) {
      throw ConsistencyError("generator " + p.to_string() + " violates a constraint");
    }
  }
  return report;
}

/// All (u/M, v/M), 0 <= u, v < M, satisfying every character.
inline std::vector<TorsionPoint> brute_force_solutions(std::span<const Character> chars,
                                                       std::int64_t bound) {
  if (bound < 1) throw DomainError("brute force bound must be >= 1");
  std::vector<TorsionPoint> out;
  for (std::int64_t u = 0; u < bound; ++u) {
    for (std::int64_t w = 0; w < bound; ++w) {
      bool ok = true;
      for (const Character& c : chars) {
        if (floor_mod(checked_add(checked_mul(c.m, u), checked_mul(c.n, w)), bound) != 0) {
          ok = false;
          break;
        }
      }
      if (ok) out.emplace_back(u, w, bound);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Closure of the generators under addition, sorted.
inline std::vector<TorsionPoint> enumerate_group(std::span<const TorsionPoint> generators) {
  std::set<TorsionPoint> seen{TorsionPoint()};
  std::vector<TorsionPoint> frontier{TorsionPoint()};
  while (!frontier.empty()) {
    std::vector<TorsionPoint> next;
    for (const TorsionPoint& p : frontier) {
      for (const TorsionPoint& g : generators) {
        const TorsionPoint s = p + g;
        if (seen.insert(s).second) next.push_back(s);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

/// Order of the subgroup generated by the given points, via the index of the
/// lattice they span together with D*Z^2 (D the common denominator).
inline std::int64_t subgroup_order(std::span<const TorsionPoint> generators) {
  std::int64_t den = 1;
  for (const TorsionPoint& p : generators) den = lcm(den, p.den());
  std::vector<Character> rows{{den, 0}, {0, den}};
  for (const TorsionPoint& p : generators) {
    rows.push_back({p.num1() * (den / p.den()), p.num2() * (den / p.den())});
  }
  const SmithForm snf = smith_normal_form(rows);
  return checked_mul(den / snf.diagonal[0], den / snf.diagonal[1]);
}

/// (exponent, |S| / exponent) of a finite subgroup S of (Q/Z)^2, which is
/// its invariant-factor form since such subgroups have rank <= 2.
inline std::array<std::int64_t, 2> invariants_of_group(std::span<const TorsionPoint> elements) {
  std::int64_t exponent = 1;
  for (const TorsionPoint& p : elements) exponent = lcm(exponent, p.order());
  return {exponent, static_cast<std::int64_t>(elements.size()) / exponent};
}

// ---------------------------------------------------------------------------
// Two-equation closed form

struct TwoEquationStructure {
  std::int64_t k = 1; ///< gcd(a, b, c, d)
  std::int64_t r = 1; ///< gcd(a/k, c/k)
  std::int64_t s = 1; ///< gcd(b/k, d/k)
  std::int64_t p = 1; ///< (ad - bc) / (k^2 r s), signed
  std::int64_t bezout_m = 0;
  std::int64_t bezout_n = 0;
  /// (k r |p|, k s) as presented by the closed form.
  std::array<std::int64_t, 2> closed_form{1, 1};
  /// Invariant-factor form of Z_{closed_form[0]} + Z_{closed_form[1]}.
  std::array<std::int64_t, 2> canonical{1, 1};
  std::int64_t order = 1; ///< |ad - bc|
  TorsionPoint z1;
  TorsionPoint z2;
  /// |<z1, z2>|
  std::int64_t generated_order = 1;
  /// Invariant factors of the actual solution group (Smith normal form).
  std::array<std::int64_t, 2> smith_invariants{1, 1};
  bool agrees_with_smith_form = true;
};

/// Closed-form structure of x^a y^b = 1, x^c y^d = 1 with the explicit
/// generators z1 = (xi_{kr}, 1)(xi_{krp}^{sl}, xi_{ksp}^s) and
/// z2 = (xi_{kr}^r, xi_{ks}), l = -m b1 - n d1 where a1 m + c1 n = 1.
/// Zero entries are allowed (gcd(0, x) = x).
inline TwoEquationStructure two_equation_structure(std::int64_t a, std::int64_t b, std::int64_t c,
                                                   std::int64_t d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) throw DomainError("exponents must be nonnegative");
  const std::int64_t det = checked_sub(checked_mul(a, d), checked_mul(b, c));
  if (det == 0) throw DomainError("DegenerateSystem: ad - bc = 0");

  TwoEquationStructure t;
  t.k = gcd(gcd(a, b), gcd(c, d));
  const std::int64_t a0 = a / t.k, b0 = b / t.k, c0 = c / t.k, d0 = d / t.k;
  t.r = gcd(a0, c0);
  t.s = gcd(b0, d0);
  const std::int64_t a1 = a0 / t.r, c1 = c0 / t.r, b1 = b0 / t.s, d1 = d0 / t.s;
  t.p = checked_sub(checked_mul(a1, d1), checked_mul(b1, c1));
  if (checked_mul(checked_mul(t.k, t.k), checked_mul(checked_mul(t.r, t.s), t.p)) != det) {
    throw ConsistencyError("closed-form factorization of ad - bc failed");
  }

  const ExtendedGcd eg = extended_gcd(a1, c1);
  if (eg.gcd != 1) throw ConsistencyError("gcd(a1, c1) != 1");
  t.bezout_m = eg.x;
  t.bezout_n = eg.y;
  const std::int64_t l =
      checked_sub(-checked_mul(t.bezout_m, b1), checked_mul(t.bezout_n, d1));

  const std::int64_t kr = checked_mul(t.k, t.r), ks = checked_mul(t.k, t.s);
  // z1 = (1/(kr) + s l/(k r p), s/(k s p))
  t.z1 = TorsionPoint::from_fractions(checked_add(t.p, checked_mul(t.s, l)), checked_mul(kr, t.p),
                                      1, checked_mul(t.k, t.p));
  // z2 = (r/(kr), 1/(ks))
  t.z2 = TorsionPoint::from_fractions(1, t.k, 1, ks);

  t.closed_form = {checked_mul(kr, abs_checked(t.p)), ks};
  t.canonical = canonical_invariants(t.closed_form[0], t.closed_form[1]);
  t.order = abs_checked(det);
  const std::array<TorsionPoint, 2> gens{t.z1, t.z2};
  t.generated_order = subgroup_order(gens);

  const std::array<Character, 2> rows{Character{a, b}, Character{c, d}};
  const GroupReport actual = solve_constraints(rows);
  t.smith_invariants = actual.torsion_invariants;
  t.agrees_with_smith_form = t.smith_invariants == t.canonical;
  for (const TorsionPoint& z : gens) {
    if (!satisfies_all(rows, z)) throw ConsistencyError("closed-form generator is not a solution");
  }
  return t;
}

} // namespace qpi
