#pragma once

// Reference implementations used only to cross-check the library. Each one
// takes a different route from the code it checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qpi/integer.hpp"
#include "qpi/qplane.hpp"
#include "qpi/scalar.hpp"
#include "qpi/torus.hpp"

namespace qpi::check {

// --- Free-algebra rewriting ---------------------------------------------------

/// Laurent polynomial in q with rational coefficients.
using LaurentQ = std::map<std::int64_t, Rational>;

/// Noncommutative polynomial: word over {x, y} -> coefficient.
using WordPoly = std::map<std::string, LaurentQ>;

inline std::string word_of(const Monomial& m) {
  return std::string(m.i, 'x') + std::string(m.j, 'y');
}

/// Lifts a polynomial with coefficients in Q[q, q^-1] into the free algebra.
inline WordPoly to_words(const QPoly& f) {
  WordPoly out;
  for (const auto& [m, c] : f.terms()) {
    if (c.conductor() != 1) throw DomainError("rewriting oracle handles conductor 1 only");
    for (const auto& [key, r] : c.terms()) out[word_of(m)][key.first] += r;
  }
  return out;
}

/// Rewrites every occurrence of "yx" to q*"xy" until all words are sorted.
inline WordPoly rewrite_normal(WordPoly p) {
  WordPoly done;
  while (!p.empty()) {
    auto node = p.extract(p.begin());
    std::string& w = node.key();
    LaurentQ& coeff = node.mapped();
    const auto at = w.find("yx");
    if (at == std::string::npos) {
      for (const auto& [e, r] : coeff) done[w][e] += r;
      continue;
    }
    w[at] = 'x';
    w[at + 1] = 'y';
    LaurentQ shifted;
    for (const auto& [e, r] : coeff) shifted[e + 1] += r;
    for (const auto& [e, r] : shifted) p[w][e] += r;
  }
  return done;
}

inline WordPoly word_product(const WordPoly& f, const WordPoly& g) {
  WordPoly out;
  for (const auto& [wf, cf] : f) {
    for (const auto& [wg, cg] : g) {
      LaurentQ& slot = out[wf + wg];
      for (const auto& [ef, rf] : cf) {
        for (const auto& [eg, rg] : cg) slot[ef + eg] += rf * rg;
      }
    }
  }
  return out;
}

inline QPoly from_sorted_words(const WordPoly& p) {
  QPoly out;
  for (const auto& [w, coeff] : p) {
    const auto i = static_cast<std::uint32_t>(std::count(w.begin(), w.end(), 'x'));
    Scalar::Terms raw;
    for (const auto& [e, r] : coeff) raw[{e, 0}] += r;
    out.add_term({i, static_cast<std::uint32_t>(w.size()) - i}, Scalar::from_terms(1, raw));
  }
  return out;
}

/// f * g computed by concatenation and rewriting in k<x, y, q^{+-1}>.
inline QPoly rewriting_product(const QPoly& f, const QPoly& g) {
  return from_sorted_words(rewrite_normal(word_product(to_words(f), to_words(g))));
}

// --- Cyclotomic polynomials -------------------------------------------------

inline int moebius(std::int64_t n) {
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

/// Phi_n = prod_{d | n} (1 - t^d)^{mu(n/d)} for n > 1, as a power series
/// truncated at degree phi(n).
inline IntPoly moebius_cyclotomic(std::int64_t n) {
  if (n == 1) return {-1, 1};
  std::size_t degree = 1;
  for (auto [p, e] : factorize(n)) degree *= static_cast<std::size_t>(ipow(p, e - 1) * (p - 1));
  IntPoly series(degree + 1, 0);
  series[0] = 1;
  for (std::int64_t d : divisors(n)) {
    const int mu = moebius(n / d);
    const auto step = static_cast<std::size_t>(d);
    if (mu == 1) {
      for (std::size_t k = degree + 1; k-- > step;) series[k] -= series[k - step];
    } else if (mu == -1) {
      for (std::size_t k = step; k <= degree; ++k) series[k] += series[k - step];
    }
  }
  return series;
}

/// Order of zeta_L^j computed from integers alone: L / gcd(L, j).
inline std::int64_t root_order(std::int64_t conductor, std::int64_t power) {
  return conductor / gcd(conductor, floor_mod(power, conductor));
}

/// u^n = 1 and u^{n/p} != 1 for every prime p | n, each power reduced in
/// the cyclotomic field.
inline bool has_exact_order(const Unit& u, std::int64_t n) {
  if (!u.pow(n).to_scalar(QSpec::transcendental()).is_one()) return false;
  for (auto [p, e] : factorize(n)) {
    if (u.pow(n / p).to_scalar(QSpec::transcendental()).is_one()) return false;
  }
  return true;
}

// --- Random inputs ----------------------------------------------------------

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Small nonzero rational times a power of q in [-2, 2].
inline Scalar random_coefficient(Rng& rng) {
  std::int64_t num = 0;
  while (num == 0) num = uniform(rng, -5, 5);
  const Rational r(num, uniform(rng, 1, 3));
  return Scalar::from_terms(1, {{{uniform(rng, -2, 2), 0}, r}});
}

/// Random polynomial with up to max_terms terms and exponents <= max_exp.
inline QPoly random_qpoly(Rng& rng, int max_terms, std::int64_t max_exp) {
  QPoly p;
  const auto terms = uniform(rng, 1, max_terms);
  for (std::int64_t t = 0; t < terms; ++t) {
    const Monomial m{static_cast<std::uint32_t>(uniform(rng, 0, max_exp)),
                     static_cast<std::uint32_t>(uniform(rng, 0, max_exp))};
    Scalar c = random_coefficient(rng);
    if (uniform(rng, 0, 1) == 1) c = c + random_coefficient(rng);
    p.add_term(m, c);
  }
  return p;
}

/// Transcendental, or a root of unity of order in [3, 8].
inline QSpec random_spec(Rng& rng) {
  const auto k = uniform(rng, 2, 8);
  return k == 2 ? QSpec::transcendental() : QSpec::root_of_unity(k);
}

} // namespace qpi::check
