#pragma once

/**
 * @file isotropy.hpp
 * @brief Isotropy groups Aut_delta(A) of derivations of the quantum plane.
 *
 * For q^2 != 1 every automorphism is diagonal, so Aut_delta(A) is the set of
 * torus points (mu1, mu2) on which a finite list of characters vanishes.
 * The characters are read either from the inner part w of
 * delta = ad_w + a D_x + b D_y, or directly from the images delta(x), delta(y).
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpi/error.hpp"
#include "qpi/integer.hpp"
#include "qpi/qplane.hpp"
#include "qpi/scalar.hpp"
#include "qpi/torus.hpp"

namespace qpi {

enum class SolvePath { inner_shortcut, general_images };

inline const char* to_string(SolvePath p) {
  return p == SolvePath::inner_shortcut ? "InnerShortcut" : "GeneralImages";
}

struct IsotropyResult {
  GroupReport report;
  /// Active constraints after q-filtering, ingested.
  std::vector<Character> constraints;
  SolvePath path = SolvePath::general_images;
};

/// One character (i, j) per monomial c_ij x^i y^j of w, except those with
/// q^i = q^j = 1 (central monomials), whose commutators vanish.
inline std::vector<Character> constraints_from_inner(const QPoly& w, const QSpec& spec) {
  std::vector<Character> chars;
  for (const auto& [m, c] : w.terms()) {
    if (spec.q_power_is_one(m.i) && spec.q_power_is_one(m.j)) continue;
    chars.push_back({m.i, m.j});
  }
  return ingest(chars);
}

/// (i - 1, j) per monomial of delta(x) and (i, j - 1) per monomial of delta(y).
inline std::vector<Character> constraints_from_images(const Derivation& delta) {
  std::vector<Character> chars;
  for (const auto& [m, c] : delta.dx().terms()) chars.push_back({std::int64_t{m.i} - 1, m.j});
  for (const auto& [m, c] : delta.dy().terms()) chars.push_back({m.i, std::int64_t{m.j} - 1});
  return ingest(chars);
}

/// Uses the inner shortcut when delta carries its (w, a, b) decomposition
/// and cross-checks it against the image route.
inline IsotropyResult isotropy_group(const Derivation& delta, const QSpec& spec) {
  IsotropyResult general;
  general.constraints = constraints_from_images(delta);
  general.report = solve_constraints(general.constraints);
  if (!delta.provenance()) return general;

  IsotropyResult inner;
  inner.constraints = constraints_from_inner(delta.provenance()->w, spec);
  inner.report = solve_constraints(inner.constraints);
  inner.path = SolvePath::inner_shortcut;
  if (inner.constraints != general.constraints || !(inner.report == general.report)) {
    throw ConsistencyError("inner-part and image constraints disagree");
  }
  return inner;
}

inline IsotropyResult isotropy_group(const QPoly& w, const Scalar& a, const Scalar& b,
                                     const QSpec& spec) {
  return isotropy_group(make_derivation(w, a, b, spec), spec);
}

/// The finiteness criterion read off the support of w: two surviving
/// monomials (i, j), (r, s) with is - rj != 0. Under a root of unity of
/// order n, monomials in nZ x nZ do not survive, nor do coefficients that
/// vanish once q is specialized.
inline bool finiteness_check(const QPoly& w, const QSpec& spec) {
  const QPoly sw = w.specialized(spec);
  std::vector<Monomial> survivors;
  for (const auto& [m, c] : sw.terms()) {
    if (spec.is_root_of_unity() && m.i % spec.order() == 0 && m.j % spec.order() == 0) continue;
    survivors.push_back(m);
  }
  for (std::size_t u = 0; u < survivors.size(); ++u) {
    for (std::size_t v = u + 1; v < survivors.size(); ++v) {
      const std::int64_t minor = std::int64_t{survivors[u].i} * survivors[v].j -
                                 std::int64_t{survivors[v].i} * survivors[u].j;
      if (minor != 0) return true;
    }
  }
  return false;
}

/// rho with (mu1, mu2) the roots of unity encoded by p.
inline DiagonalAutomorphism automorphism_at(const TorsionPoint& p) {
  return DiagonalAutomorphism::from_roots(p.den(), p.num1(), p.num2());
}

/// Splits lcm(r, s) into coprime r' | r, s' | s: each prime goes to the side
/// with the larger exponent, ties to r'.
inline std::pair<std::int64_t, std::int64_t> coprime_lcm_split(std::int64_t r, std::int64_t s) {
  if (r < 1 || s < 1) throw DomainError("coprime_lcm_split requires r, s >= 1");
  std::int64_t r_part = 1, s_part = 1;
  auto valuation = [](std::int64_t n, std::int64_t p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    return e;
  };
  auto primes = factorize(r);
  for (auto f : factorize(s)) primes.push_back(f);
  std::vector<std::int64_t> seen;
  for (auto [p, e] : primes) {
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
    seen.push_back(p);
    const int er = valuation(r, p), es = valuation(s, p);
    if (er >= es) r_part = checked_mul(r_part, ipow(p, er));
    else s_part = checked_mul(s_part, ipow(p, es));
  }
  return {r_part, s_part};
}

struct RealizabilityVerdict {
  enum class Status { realizable, not_realizable, unknown };

  Status status = Status::unknown;
  std::optional<QPoly> witness;
  std::string reason;
  /// Isotropy group of ad_witness, when it was computed.
  std::optional<GroupReport> verified_group;
};

inline const char* to_string(RealizabilityVerdict::Status s) {
  switch (s) {
  case RealizabilityVerdict::Status::realizable: return "Realizable";
  case RealizabilityVerdict::Status::not_realizable: return "NotRealizable";
  case RealizabilityVerdict::Status::unknown: return "Unknown";
  }
  return "?";
}

/// Is Z_{n1} + Z_{n2} (n2 | n1) the isotropy group of some derivation?
inline RealizabilityVerdict realize_group(std::int64_t n1, std::int64_t n2, const QSpec& spec) {
  if (n1 < 1 || n2 < 1) throw DomainError("BadInput: group orders must be positive");
  if (n1 % n2 != 0) {
    throw DomainError("BadInput: n2 = " + std::to_string(n2) + " does not divide n1 = " +
                      std::to_string(n1));
  }
  RealizabilityVerdict verdict;
  if (spec.is_root_of_unity() && n1 % spec.order() == 0 && n2 % spec.order() == 0) {
    verdict.status = RealizabilityVerdict::Status::not_realizable;
    verdict.reason = "q has order " + std::to_string(spec.order()) +
                     ", which divides both invariants; every active character would need "
                     "both exponents divisible by it";
    return verdict;
  }
  if (spec.q_power_is_one(n1)) {
    verdict.reason = "q^" + std::to_string(n1) + " = 1 and the order of q does not divide " +
                     std::to_string(n2) + "; no construction is known";
    return verdict;
  }

  const QPoly w = QPoly::monomial(checked_exponent(n1), 0) +
                  QPoly::monomial(0, checked_exponent(n2));
  const IsotropyResult result = isotropy_group(w, Scalar(0), Scalar(0), spec);
  verdict.witness = w;
  verdict.verified_group = result.report;
  const std::array<std::int64_t, 2> target{n1, n2};
  if (result.report.classification == Classification::finite &&
      result.report.torsion_invariants == target) {
    verdict.status = RealizabilityVerdict::Status::realizable;
    verdict.reason = "ad_w with w = " + w.to_string() + " has isotropy group Z_" +
                     std::to_string(n1) + " + Z_" + std::to_string(n2);
  } else {
    verdict.reason = "direct computation for w = " + w.to_string() +
                     " did not produce the target group";
  }
  return verdict;
}

struct ObstructionWitness {
  std::int64_t n = 0;
  /// true: q^n != 1 and q2^n = 1 (first algebra realizes Z_n + Z_n);
  /// false: the reverse.
  bool forward = true;
};

/// Least n with q^n != 1 and q2^n = 1, falling back to the reverse
/// direction; none when the two specs cannot be told apart this way.
inline std::optional<ObstructionWitness> find_obstruction(const QSpec& q, const QSpec& q2) {
  auto least = [](const QSpec& realizing, const QSpec& blocked) -> std::optional<std::int64_t> {
    if (!blocked.is_root_of_unity()) return std::nullopt;
    const std::int64_t n = blocked.order();
    if (!realizing.is_root_of_unity()) return n;
    // every multiple of n is a multiple of realizing.order() iff it divides n
    if (n % realizing.order() == 0) return std::nullopt;
    return n;
  };
  if (auto n = least(q, q2)) return ObstructionWitness{*n, true};
  if (auto n = least(q2, q)) return ObstructionWitness{*n, false};
  return std::nullopt;
}

inline std::optional<std::int64_t> isomorphism_obstruction(const QSpec& q, const QSpec& q2) {
  if (auto w = find_obstruction(q, q2)) return w->n;
  return std::nullopt;
}

} // namespace qpi
