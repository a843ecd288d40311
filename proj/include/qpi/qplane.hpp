#pragma once

/**
 * @file qplane.hpp
 * @brief Normal-form arithmetic in the quantum plane k_q[x, y] (yx = qxy).
 *
 * Elements are stored as sums c * x^i y^j with the x-powers to the left.
 * Derivations are represented by their images on the generators, and
 * diagonal automorphisms by the pair of unit multipliers (mu1, mu2).
 */

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "qpi/error.hpp"
#include "qpi/integer.hpp"
#include "qpi/scalar.hpp"

namespace qpi {

/// Normal-form monomial x^i y^j.
struct Monomial {
  std::uint32_t i = 0;
  std::uint32_t j = 0;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline std::uint32_t checked_exponent(std::int64_t e) {
  if (e < 0 || e > std::numeric_limits<std::uint32_t>::max()) {
    throw ResourceError("monomial exponent out of range: " + std::to_string(e));
  }
  return static_cast<std::uint32_t>(e);
}

class QPoly {
public:
  using Terms = std::map<Monomial, Scalar>;

  QPoly() = default;
  explicit QPoly(const Scalar& constant) { add_term({0, 0}, constant); }

  static QPoly monomial(std::uint32_t i, std::uint32_t j, const Scalar& coeff = Scalar(1)) {
    QPoly p;
    p.add_term({i, j}, coeff);
    return p;
  }
  static QPoly x() { return monomial(1, 0); }
  static QPoly y() { return monomial(0, 1); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coefficient(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
  }

  void add_term(Monomial m, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, coeff);
    if (inserted) return;
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }

  /// lcm of the coefficient conductors.
  std::int64_t conductor() const {
    std::int64_t l = 1;
    for (const auto& [m, c] : terms_) l = lcm(l, c.conductor());
    return l;
  }

  QPoly scaled(const Scalar& s) const {
    QPoly r;
    for (const auto& [m, c] : terms_) r.add_term(m, c * s);
    return r;
  }

  QPoly specialized(const QSpec& spec) const {
    QPoly r;
    for (const auto& [m, c] : terms_) r.add_term(m, c.specialized(spec));
    return r;
  }

  friend QPoly operator+(const QPoly& a, const QPoly& b) {
    QPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }

  friend QPoly operator-(const QPoly& a) {
    QPoly r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

  friend bool operator==(const QPoly& a, const QPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    }
    return true;
  }

  /// Text form `c*x^i*y^j + ...` with one leading conductor declaration.
  std::string to_string() const;

private:
  Terms terms_;
};

inline std::string QPoly::to_string() const {
  const std::int64_t conductor = this->conductor();
  std::string out;
  // highest power of x first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, raw] = *it;
    const Scalar c = raw.lifted(conductor);
    std::string mono;
    if (m.i == 1) mono = "x";
    else if (m.i > 1) mono = "x^" + std::to_string(m.i);
    if (m.j > 0) {
      if (!mono.empty()) mono += "*";
      mono += m.j == 1 ? "y" : "y^" + std::to_string(m.j);
    }
    if (c.terms().size() == 1) {
      const auto& [key, r] = *c.terms().begin();
      detail::append_signed(out, r < 0, detail::term_body(abs(r), key.first, key.second, mono));
    } else {
      std::string body = "(" + c.to_string(false) + ")";
      if (!mono.empty()) body += "*" + mono;
      detail::append_signed(out, false, body);
    }
  }
  if (out.empty()) out = "0";
  if (conductor > 1) out = "conductor=" + std::to_string(conductor) + "; " + out;
  return out;
}

/// Normal-form product using (x^i y^j)(x^k y^l) = q^{jk} x^{i+k} y^{j+l}.
inline QPoly multiply(const QPoly& f, const QPoly& g, const QSpec& spec) {
  std::map<std::int64_t, Scalar> q_powers;
  auto q_pow = [&](std::int64_t e) -> const Scalar& {
    auto it = q_powers.find(e);
    if (it == q_powers.end()) it = q_powers.emplace(e, Scalar::q_power(e, spec)).first;
    return it->second;
  };
  QPoly r;
  for (const auto& [mf, cf] : f.terms()) {
    for (const auto& [mg, cg] : g.terms()) {
      const std::int64_t twist = checked_mul(mf.j, mg.i);
      const Monomial m{checked_exponent(std::int64_t{mf.i} + mg.i),
                       checked_exponent(std::int64_t{mf.j} + mg.j)};
      Scalar c = cf * cg;
      if (twist != 0) c *= q_pow(twist);
      r.add_term(m, c);
    }
  }
  return r;
}

/// wu - uw.
inline QPoly commutator(const QPoly& w, const QPoly& u, const QSpec& spec) {
  return multiply(w, u, spec) - multiply(u, w, spec);
}

// ---------------------------------------------------------------------------
// Derivations

/// The (w, a, b) data of delta = ad_w + a D_x + b D_y with scalar a, b.
struct InnerDecomposition {
  QPoly w;
  Scalar a;
  Scalar b;
};

/// Raised when candidate images fail the defining relation; carries the
/// nonzero residual as witness.
class NotADerivation : public DomainError {
public:
  explicit NotADerivation(QPoly residual)
      : DomainError("images do not define a derivation; residual " + residual.to_string()),
        residual_(std::move(residual)) {}

  const QPoly& residual() const noexcept { return residual_; }

private:
  QPoly residual_;
};

/// dy*x + y*dx - q*(dx*y + x*dy): zero exactly when (dx, dy) respects yx = qxy.
inline QPoly derivation_residual(const QPoly& dx, const QPoly& dy, const QSpec& spec) {
  const QPoly x = QPoly::x(), y = QPoly::y();
  const QPoly lhs = multiply(dy, x, spec) + multiply(y, dx, spec);
  const QPoly rhs = multiply(dx, y, spec) + multiply(x, dy, spec);
  return lhs - rhs.scaled(Scalar::q_power(1, spec));
}

class Derivation {
public:
  const QPoly& dx() const noexcept { return dx_; }
  const QPoly& dy() const noexcept { return dy_; }
  const std::optional<InnerDecomposition>& provenance() const noexcept { return provenance_; }

  friend Derivation make_derivation(const QPoly& w, const Scalar& a, const Scalar& b,
                                    const QSpec& spec);
  friend Derivation make_derivation_from_images(const QPoly& dx, const QPoly& dy,
                                                const QSpec& spec);

private:
  Derivation(QPoly dx, QPoly dy, std::optional<InnerDecomposition> provenance)
      : dx_(std::move(dx)), dy_(std::move(dy)), provenance_(std::move(provenance)) {}

  QPoly dx_;
  QPoly dy_;
  std::optional<InnerDecomposition> provenance_;
};

/// Images given directly. Throws NotADerivation unless the residual vanishes.
inline Derivation make_derivation_from_images(const QPoly& dx, const QPoly& dy,
                                              const QSpec& spec) {
  QPoly sdx = dx.specialized(spec), sdy = dy.specialized(spec);
  QPoly residual = derivation_residual(sdx, sdy, spec);
  if (!residual.is_zero()) throw NotADerivation(std::move(residual));
  return Derivation(std::move(sdx), std::move(sdy), std::nullopt);
}

/// delta = ad_w + a D_x + b D_y, i.e. delta(x) = [w,x] + a x, delta(y) = [w,y] + b y.
inline Derivation make_derivation(const QPoly& w, const Scalar& a, const Scalar& b,
                                  const QSpec& spec) {
  const QPoly sw = w.specialized(spec);
  const Scalar sa = a.specialized(spec), sb = b.specialized(spec);
  QPoly dx = commutator(sw, QPoly::x(), spec) + QPoly::x().scaled(sa);
  QPoly dy = commutator(sw, QPoly::y(), spec) + QPoly::y().scaled(sb);
  if (!derivation_residual(dx, dy, spec).is_zero()) {
    throw ConsistencyError("ad_w + aD_x + bD_y failed the derivation identity");
  }
  return Derivation(std::move(dx), std::move(dy), InnerDecomposition{sw, sa, sb});
}

/// delta extended to an arbitrary element by the Leibniz rule on the normal
/// word x^i y^j.
inline QPoly apply(const Derivation& delta, const QPoly& f, const QSpec& spec) {
  QPoly r;
  for (const auto& [m, c] : f.terms()) {
    QPoly term;
    for (std::uint32_t t = 0; t < m.i; ++t) {
      term = term + multiply(multiply(QPoly::monomial(t, 0), delta.dx(), spec),
                             QPoly::monomial(m.i - 1 - t, m.j), spec);
    }
    for (std::uint32_t t = 0; t < m.j; ++t) {
      term = term + multiply(multiply(QPoly::monomial(m.i, t), delta.dy(), spec),
                             QPoly::monomial(0, m.j - 1 - t), spec);
    }
    r = r + term.scaled(c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Diagonal automorphisms

/// rho(x) = mu1 x, rho(y) = mu2 y.
struct DiagonalAutomorphism {
  Unit mu1;
  Unit mu2;

  static DiagonalAutomorphism identity() { return {}; }

  /// (zeta_order^p1, zeta_order^p2)
  static DiagonalAutomorphism from_roots(std::int64_t order, std::int64_t p1, std::int64_t p2) {
    return {Unit::root_of_unity(order, p1), Unit::root_of_unity(order, p2)};
  }

  DiagonalAutomorphism inverse() const { return {mu1.inverse(), mu2.inverse()}; }

  /// rho(x^i y^j) = mu1^i mu2^j x^i y^j.
  QPoly apply(const QPoly& f, const QSpec& spec) const {
    QPoly r;
    for (const auto& [m, c] : f.terms()) {
      r.add_term(m, c * (mu1.pow(m.i) * mu2.pow(m.j)).to_scalar(spec));
    }
    return r;
  }
};

/// rho delta rho^-1, formed by image substitution.
inline Derivation conjugate(const DiagonalAutomorphism& rho, const Derivation& delta,
                            const QSpec& spec) {
  const DiagonalAutomorphism inv = rho.inverse();
  return make_derivation_from_images(rho.apply(delta.dx(), spec).scaled(inv.mu1.to_scalar(spec)),
                                     rho.apply(delta.dy(), spec).scaled(inv.mu2.to_scalar(spec)),
                                     spec);
}

/// Residuals (rho delta - delta rho)(x) and (...)(y).
inline std::pair<QPoly, QPoly> commutation_residuals(const DiagonalAutomorphism& rho,
                                                     const Derivation& delta,
                                                     const QSpec& spec) {
  return {rho.apply(delta.dx(), spec) - delta.dx().scaled(rho.mu1.to_scalar(spec)),
          rho.apply(delta.dy(), spec) - delta.dy().scaled(rho.mu2.to_scalar(spec))};
}

inline bool commutes(const DiagonalAutomorphism& rho, const Derivation& delta, const QSpec& spec) {
  auto [rx, ry] = commutation_residuals(rho, delta, spec);
  return rx.is_zero() && ry.is_zero();
}

} // namespace qpi
