#pragma once

// The acceptance criteria as runnable checks. Each returns a pass/fail
// verdict with a one-line detail; selfcheck and the acceptance tests share
// this code.

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qpi/check/oracles.hpp"
#include "qpi/geometry.hpp"
#include "qpi/isotropy.hpp"
#include "qpi/qplane.hpp"
#include "qpi/text.hpp"
#include "qpi/torus.hpp"

namespace qpi::check {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  /// Exponent bound of the two-equation sweep.
  std::int64_t sweep_bound = 8;
  std::uint64_t seed = 20240601;
  int random_derivations = 500;
  int commutation_instances = 100;
  int soundness_checks = 100;
  int multiplication_pairs = 500;
};

namespace detail {

inline std::string show(const std::array<std::int64_t, 2>& v) {
  return "(" + std::to_string(v[0]) + ", " + std::to_string(v[1]) + ")";
}

inline std::string quad(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," +
         std::to_string(d) + ")";
}

/// Collects failures; keeps the first message.
struct Tally {
  std::int64_t checked = 0;
  std::int64_t failed = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (failed++ == 0) first = what;
  }

  bool ok() const { return failed == 0; }

  std::string summary() const {
    std::string s = std::to_string(checked - failed) + "/" + std::to_string(checked) + " checks";
    if (failed != 0) s += "; first failure: " + first;
    return s;
  }
};

inline bool is_finite(const GroupReport& r, std::array<std::int64_t, 2> inv) {
  return r.classification == Classification::finite && r.torsion_invariants == inv &&
         r.order == inv[0] * inv[1];
}

} // namespace detail

inline CriterionResult criterion_worked_example() {
  detail::Tally t;
  const QSpec trans = QSpec::transcendental();
  const IsotropyResult iso = isotropy_group(parse_qpoly("x^3*y + x^2*y^2"), 0, 0, trans);
  t.expect(detail::is_finite(iso.report, {4, 1}),
           "isotropy invariants " + detail::show(iso.report.torsion_invariants));
  t.expect(enumerate_group(iso.report.generators).size() == 4, "group does not have 4 elements");
  const auto mult = mult_at_infinity_general(3, 1, 2, 2);
  t.expect(mult == std::array<std::int64_t, 2>{8, 4}, "multiplicities " + detail::show(mult));
  t.expect(bezout_ledger(3, 1, 2, 2) == BezoutLedger{16, 4, 8, 4}, "ledger for (3,1,2,2)");
  t.expect(affine_intersection_points(3, 1, 2, 2).size() == 4, "affine point count");
  return {1, "x^3*y + x^2*y^2 isotropy and its curve pair", t.ok(), t.summary()};
}

inline CriterionResult criterion_ledger_example() {
  detail::Tally t;
  const BezoutLedger l = bezout_ledger(2, 4, 3, 9);
  t.expect(l == BezoutLedger{72, 6, 18, 48},
           "ledger {" + std::to_string(l.total) + ", " + std::to_string(l.affine_count) + ", " +
               std::to_string(l.mult_at_010) + ", " + std::to_string(l.mult_at_100) + "}");
  const auto m = mult_at_infinity_coprime(1, 2, 1, 3);
  t.expect(m == std::array<std::int64_t, 2>{3, 8}, "coprime (1,2,1,3) gives " + detail::show(m));
  t.expect(puiseux_order_oracle(1, 2, 1, 3) == 3 && puiseux_order_oracle_at_100(1, 2, 1, 3) == 8,
           "Puiseux orders for (1,2,1,3)");
  return {2, "ledger (2,4,3,9) and branch pair (1,2,1,3)", t.ok(), t.summary()};
}

inline CriterionResult criterion_example_table() {
  detail::Tally t;
  const QSpec trans = QSpec::transcendental();
  auto group = [&](const QPoly& w) { return isotropy_group(w, 0, 0, trans).report; };

  const GroupReport rx = group(QPoly::x());
  t.expect(rx.classification == Classification::infinite && rx.torus_rank == 1 &&
               rx.torsion_invariants == std::array<std::int64_t, 2>{1, 1},
           "w = x");
  for (std::uint32_t m = 1; m <= 10; ++m) {
    const GroupReport r = group(QPoly::monomial(m, 0));
    t.expect(r.classification == Classification::infinite && r.torus_rank == 1 &&
                 r.torsion_invariants == std::array<std::int64_t, 2>{m, 1},
             "w = x^" + std::to_string(m) + ": " + detail::show(r.torsion_invariants));
  }
  for (std::uint32_t m = 1; m <= 10; ++m) {
    for (std::uint32_t n = 1; n <= 10; ++n) {
      const GroupReport r = group(QPoly::monomial(m, 0) + QPoly::monomial(0, n));
      const std::array<std::int64_t, 2> expected{std::lcm<std::int64_t>(m, n),
                                                 std::gcd<std::int64_t>(m, n)};
      t.expect(detail::is_finite(r, expected) && *r.order == std::int64_t{m} * n,
               "w = x^" + std::to_string(m) + " + y^" + std::to_string(n) + ": " +
                   detail::show(r.torsion_invariants));
    }
  }
  for (std::uint32_t i = 0; i <= 10; ++i) {
    for (std::uint32_t j = 0; j <= 10; ++j) {
      if (i == 0 && j == 0) continue;
      const GroupReport r = group(QPoly::monomial(i, j, Scalar(3)));
      t.expect(r.classification == Classification::infinite && r.torus_rank == 1,
               "w = 3*x^" + std::to_string(i) + "*y^" + std::to_string(j) + " not Infinite");
    }
  }
  for (const QPoly& w : {QPoly(), QPoly(Scalar(7))}) {
    const GroupReport r = group(w);
    t.expect(r.classification == Classification::full_torus && r.torus_rank == 2,
             "constant w = " + w.to_string() + " not FullTorus");
  }
  return {3, "monomial and binomial table", t.ok(), t.summary()};
}

/// Closed form, Smith form and brute-force enumeration on every quadruple in
/// [1, bound]^4 with ad != bc.
inline CriterionResult criterion_triple_route(std::int64_t bound) {
  detail::Tally smith_vs_brute, order, bezout, closed;
  std::int64_t quadruples = 0;
  for (std::int64_t a = 1; a <= bound; ++a) {
    for (std::int64_t b = 1; b <= bound; ++b) {
      for (std::int64_t c = 1; c <= bound; ++c) {
        for (std::int64_t d = 1; d <= bound; ++d) {
          if (a * d == b * c) continue;
          ++quadruples;
          const std::string tag = detail::quad(a, b, c, d);
          const std::int64_t det = std::abs(a * d - b * c);
          const std::array<Character, 2> rows{Character{a, b}, Character{c, d}};
          const GroupReport smith = solve_constraints(rows);
          const auto brute = brute_force_solutions(rows, det);
          const auto brute_inv = invariants_of_group(brute);
          smith_vs_brute.expect(smith.torsion_invariants == brute_inv,
                                tag + " Smith " + detail::show(smith.torsion_invariants) +
                                    " vs enumeration " + detail::show(brute_inv));
          order.expect(smith.order == det && static_cast<std::int64_t>(brute.size()) == det,
                       tag + " order differs from |ad - bc|");
          const TwoEquationStructure s = two_equation_structure(a, b, c, d);
          closed.expect(s.canonical == brute_inv && s.order == det,
                        tag + " closed form Z_" + std::to_string(s.closed_form[0]) + " + Z_" +
                            std::to_string(s.closed_form[1]) + " = " + detail::show(s.canonical) +
                            ", enumeration " + detail::show(brute_inv));
          const BezoutLedger l = bezout_ledger(a, b, c, d);
          bezout.expect(l.balanced() && l.total == (a + b) * (c + d), tag + " ledger");
        }
      }
    }
  }
  const bool passed = smith_vs_brute.ok() && order.ok() && bezout.ok() && closed.ok();
  std::ostringstream out;
  out << quadruples << " quadruples; Smith vs enumeration " << smith_vs_brute.summary()
      << "; order " << order.summary() << "; Bezout " << bezout.summary()
      << "; closed form (k,r,s,p) " << closed.summary();
  return {4, "two-equation triple-route sweep, bound " + std::to_string(bound), passed, out.str()};
}

inline CriterionResult criterion_realization() {
  detail::Tally t;
  const std::array<QSpec, 3> specs{QSpec::transcendental(), QSpec::root_of_unity(5),
                                   QSpec::root_of_unity(7)};
  for (const QSpec& spec : specs) {
    for (std::int64_t n1 = 1; n1 <= 12; ++n1) {
      if (spec.q_power_is_one(n1)) continue;
      for (std::int64_t n2 : divisors(n1)) {
        const std::string tag = "(" + std::to_string(n1) + ", " + std::to_string(n2) + ", " +
                                spec.to_string() + ")";
        const QPoly w = QPoly::monomial(static_cast<std::uint32_t>(n1), 0) +
                        QPoly::monomial(0, static_cast<std::uint32_t>(n2));
        const GroupReport r = isotropy_group(w, 0, 0, spec).report;
        t.expect(detail::is_finite(r, {n1, n2}), tag + " gives " + detail::show(r.torsion_invariants));
        const RealizabilityVerdict v = realize_group(n1, n2, spec);
        t.expect(v.status == RealizabilityVerdict::Status::realizable, tag + " verdict " +
                                                                           to_string(v.status));
      }
    }
  }
  return {5, "realization by x^n1 + y^n2", t.ok(), t.summary()};
}

inline CriterionResult criterion_obstruction(const AcceptanceOptions& opt) {
  detail::Tally t;
  Rng rng(opt.seed);
  for (std::int64_t p = 3; p <= 5; ++p) {
    const QSpec spec = QSpec::root_of_unity(p);
    std::set<std::array<std::int64_t, 2>> targets;
    for (std::int64_t r = 1; r <= 3; ++r) {
      for (std::int64_t s = 1; s <= 3; ++s) {
        const auto inv = canonical_invariants(p * r, p * s);
        targets.insert(inv);
        const RealizabilityVerdict v = realize_group(inv[0], inv[1], spec);
        t.expect(v.status == RealizabilityVerdict::Status::not_realizable,
                 "realize " + detail::show(inv) + " at root " + std::to_string(p) + ": " +
                     to_string(v.status));
      }
    }
    for (int k = 0; k < opt.random_derivations; ++k) {
      const QPoly w = random_qpoly(rng, 4, 3 * p);
      const Scalar a = uniform(rng, -2, 2), b = uniform(rng, -2, 2);
      const GroupReport r = isotropy_group(w, a, b, spec).report;
      t.expect(!(r.classification == Classification::finite && targets.count(r.torsion_invariants)),
               "w = " + w.to_string() + " realizes " + detail::show(r.torsion_invariants) +
                   " at root " + std::to_string(p));
    }
  }
  return {6, "root-of-unity obstruction", t.ok(), t.summary()};
}

inline CriterionResult criterion_commutation(const AcceptanceOptions& opt) {
  detail::Tally t;
  Rng rng(opt.seed + 7);
  int instances = 0;
  while (instances < opt.commutation_instances) {
    const QSpec spec = random_spec(rng);
    const QPoly w = random_qpoly(rng, 3, 4);
    const Derivation delta = make_derivation(w, uniform(rng, -2, 2), uniform(rng, -2, 2), spec);
    const IsotropyResult iso = isotropy_group(delta, spec);
    if (iso.report.classification != Classification::finite) continue;
    ++instances;
    const std::string tag = "w = " + w.to_string() + " at " + spec.to_string();
    for (const TorsionPoint& g : iso.report.generators) {
      t.expect(commutes(automorphism_at(g), delta, spec),
               tag + ": generator " + g.to_string() + " does not commute");
    }
    // a non-member: refine the grid until some point violates a constraint
    const std::int64_t grid = 2 * *iso.report.order;
    for (;;) {
      const TorsionPoint p(uniform(rng, 0, grid - 1), uniform(rng, 0, grid - 1), grid);
      if (satisfies_all(iso.constraints, p)) continue;
      t.expect(!commutes(automorphism_at(p), delta, spec),
               tag + ": non-member " + p.to_string() + " commutes");
      break;
    }
  }
  return {7, "generators commute symbolically, non-members do not", t.ok(), t.summary()};
}

inline CriterionResult criterion_soundness(const AcceptanceOptions& opt) {
  detail::Tally t;
  Rng rng(opt.seed + 13);
  for (int k = 0; k < opt.soundness_checks; ++k) {
    const QSpec spec = random_spec(rng);
    const QPoly w = random_qpoly(rng, 4, 4);
    const Scalar a = random_coefficient(rng), b = random_coefficient(rng);
    const std::string tag = "w = " + w.to_string() + " at " + spec.to_string();
    const Derivation delta = make_derivation(w, a, b, spec);
    t.expect(derivation_residual(delta.dx(), delta.dy(), spec).is_zero(), tag + " residual");
    bool rebuilt = true;
    try {
      (void)make_derivation_from_images(delta.dx(), delta.dy(), spec);
    } catch (const NotADerivation&) {
      rebuilt = false;
    }
    t.expect(rebuilt, tag + " images rejected");
    bool planted_rejected = false;
    try {
      (void)make_derivation_from_images(QPoly::y(), QPoly(), spec);
    } catch (const NotADerivation&) {
      planted_rejected = true;
    }
    t.expect(planted_rejected, "dx = y, dy = 0 accepted at " + spec.to_string());
  }
  const QSpec trans = QSpec::transcendental();
  for (int k = 0; k < opt.multiplication_pairs; ++k) {
    const QPoly f = random_qpoly(rng, 3, 3), g = random_qpoly(rng, 3, 3);
    t.expect(multiply(f, g, trans) == rewriting_product(f, g),
             "(" + f.to_string() + ") * (" + g.to_string() + ")");
  }
  return {8, "derivation well-definedness and multiplication oracle", t.ok(), t.summary()};
}

inline CriterionResult criterion_lcm_split() {
  detail::Tally t;
  for (std::int64_t r = 1; r <= 50; ++r) {
    for (std::int64_t s = 1; s <= 50; ++s) {
      const auto [rp, sp] = coprime_lcm_split(r, s);
      const std::int64_t l = std::lcm(r, s);
      const std::string tag = "(" + std::to_string(r) + ", " + std::to_string(s) + ")";
      t.expect(std::gcd(rp, sp) == 1 && rp * sp == l && r % rp == 0 && s % sp == 0,
               tag + " split (" + std::to_string(rp) + ", " + std::to_string(sp) + ")");
      const Unit product = Unit::root_of_unity(r, r / rp) * Unit::root_of_unity(s, s / sp);
      t.expect(root_order(product.conductor, product.zeta_exp) == l &&
                   has_exact_order(product, l),
               tag + " product order is not lcm");
    }
  }
  return {9, "coprime lcm split", t.ok(), t.summary()};
}

inline constexpr int criterion_count = 9;

/// Runs one criterion and times it; over-budget runs fail.
inline CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {}) {
  if (id < 1 || id > criterion_count) {
    throw DomainError("no acceptance criterion " + std::to_string(id));
  }
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  double budget = 0;
  try {
    switch (id) {
    case 1: r = criterion_worked_example(); budget = 1; break;
    case 2: r = criterion_ledger_example(); budget = 1; break;
    case 3: r = criterion_example_table(); break;
    case 4: r = criterion_triple_route(opt.sweep_bound); budget = 60; break;
    case 5: r = criterion_realization(); break;
    case 6: r = criterion_obstruction(opt); break;
    case 7: r = criterion_commutation(opt); budget = 30; break;
    case 8: r = criterion_soundness(opt); break;
    case 9: r = criterion_lcm_split(); break;
    }
  } catch (const Error& e) {
    r = {id, "criterion " + std::to_string(id), false,
         std::string("unexpected ") + e.category_name() + ": " + e.what()};
  }
  r.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget > 0 && r.seconds > budget) {
    r.passed = false;
    r.detail += "; took " + std::to_string(r.seconds) + " s, budget " + std::to_string(budget) + " s";
  }
  return r;
}

} // namespace qpi::check
