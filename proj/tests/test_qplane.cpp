#include <gtest/gtest.h>

#include "qpi/check/oracles.hpp"
#include "qpi/qplane.hpp"
#include "qpi/text.hpp"

using namespace qpi;

namespace {

const QSpec trans = QSpec::transcendental();

QPoly P(const char* text, const QSpec& spec = trans) { return parse_qpoly(text, spec); }

bool same_derivation(const Derivation& a, const Derivation& b) {
  return a.dx() == b.dx() && a.dy() == b.dy();
}

} // namespace

TEST(Multiply, NormalForm) {
  EXPECT_EQ(multiply(QPoly::y(), QPoly::x(), trans), P("q*x*y"));
  EXPECT_EQ(multiply(QPoly::x(), QPoly::x(), trans), P("x^2"));
  const QPoly s = QPoly::x() + QPoly::y();
  EXPECT_EQ(multiply(s, s, trans), P("x^2 + (1 + q)*x*y + y^2"));
  EXPECT_EQ(check::rewriting_product(s, s), P("x^2 + (1 + q)*x*y + y^2"));
}

TEST(Multiply, RootOfUnityFolds) {
  const QSpec r3 = QSpec::root_of_unity(3);
  // y^3 x = q^3 x y^3 = x y^3
  EXPECT_EQ(multiply(P("y^3"), QPoly::x(), r3), P("x*y^3"));
  EXPECT_EQ(multiply(QPoly::y(), QPoly::x(), r3).coefficient({1, 1}), Scalar::zeta(3, 1));
}

TEST(Multiply, AgreesWithRewritingOracle) {
  check::Rng rng(21);
  for (int t = 0; t < 500; ++t) {
    const QPoly f = check::random_qpoly(rng, 3, 3), g = check::random_qpoly(rng, 3, 3);
    EXPECT_EQ(multiply(f, g, trans), check::rewriting_product(f, g))
        << f.to_string() << " * " << g.to_string();
  }
}

TEST(Multiply, Associative) {
  check::Rng rng(22);
  for (int t = 0; t < 100; ++t) {
    const QSpec spec = check::random_spec(rng);
    const QPoly f = check::random_qpoly(rng, 3, 2), g = check::random_qpoly(rng, 3, 2),
                h = check::random_qpoly(rng, 3, 2);
    EXPECT_EQ(multiply(multiply(f, g, spec), h, spec), multiply(f, multiply(g, h, spec), spec));
  }
}

TEST(Commutator, Examples) {
  EXPECT_TRUE(commutator(QPoly::x(), QPoly::x(), trans).is_zero());
  EXPECT_EQ(commutator(QPoly::y(), QPoly::x(), trans), P("(q - 1)*x*y"));
  EXPECT_EQ(commutator(P("x^2*y"), QPoly::y(), trans), P("(1 - q^2)*x^2*y^2"));
}

TEST(MakeDerivation, Examples) {
  const Derivation dx = make_derivation(QPoly(), 1, 0, trans);
  EXPECT_EQ(dx.dx(), QPoly::x());
  EXPECT_TRUE(dx.dy().is_zero());

  const Derivation ady = make_derivation(QPoly::y(), 0, 0, trans);
  EXPECT_EQ(ady.dx(), P("(q - 1)*x*y"));
  EXPECT_TRUE(ady.dy().is_zero());

  const Derivation d = make_derivation(P("x^3*y + x^2*y^2"), 0, 0, trans);
  EXPECT_EQ(d.dx(), P("(q - 1)*x^4*y + (q^2 - 1)*x^3*y^2"));
  EXPECT_EQ(d.dy(), P("(1 - q^3)*x^3*y^2 + (1 - q^2)*x^2*y^3"));
  ASSERT_TRUE(d.provenance().has_value());
  EXPECT_EQ(d.provenance()->w, P("x^3*y + x^2*y^2"));
}

TEST(MakeDerivation, FromImages) {
  EXPECT_NO_THROW(make_derivation_from_images(QPoly::x(), QPoly::y(), trans));
  try {
    (void)make_derivation_from_images(QPoly::y(), QPoly(), trans);
    FAIL() << "dx = y accepted";
  } catch (const NotADerivation& e) {
    EXPECT_EQ(e.residual(), P("(1 - q)*y^2"));
  }
  const Derivation ady = make_derivation(QPoly::y(), 0, 0, trans);
  EXPECT_NO_THROW(make_derivation_from_images(ady.dx(), ady.dy(), trans));
  EXPECT_FALSE(make_derivation_from_images(ady.dx(), ady.dy(), trans).provenance());
}

TEST(MakeDerivation, InnerImagesAlwaysPass) {
  check::Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const QSpec spec = check::random_spec(rng);
    const QPoly w = check::random_qpoly(rng, 4, 4);
    const QPoly dx = commutator(w.specialized(spec), QPoly::x(), spec);
    const QPoly dy = commutator(w.specialized(spec), QPoly::y(), spec);
    EXPECT_NO_THROW(make_derivation_from_images(dx, dy, spec)) << w.to_string();
  }
}

TEST(Apply, Leibniz) {
  check::Rng rng(24);
  for (int t = 0; t < 100; ++t) {
    const QSpec spec = check::random_spec(rng);
    const Derivation delta = make_derivation(check::random_qpoly(rng, 3, 3),
                                             check::random_coefficient(rng),
                                             check::random_coefficient(rng), spec);
    const QPoly f = check::random_qpoly(rng, 2, 3).specialized(spec);
    const QPoly g = check::random_qpoly(rng, 2, 3).specialized(spec);
    EXPECT_EQ(apply(delta, multiply(f, g, spec), spec),
              multiply(apply(delta, f, spec), g, spec) + multiply(f, apply(delta, g, spec), spec));
  }
}

TEST(Apply, InnerDerivationIsCommutator) {
  const QPoly w = P("x^3*y + x^2*y^2");
  const Derivation d = make_derivation(w, 0, 0, trans);
  const QPoly f = P("x*y^2 + 2*x^2");
  EXPECT_EQ(apply(d, f, trans), commutator(w, f, trans));
}

TEST(Commutes, Examples) {
  const Derivation dx = make_derivation(QPoly(), 1, 0, trans);
  EXPECT_TRUE(commutes(DiagonalAutomorphism::from_roots(7, 3, 5), dx, trans));
  const Derivation d = make_derivation(P("x^3*y + x^2*y^2"), 0, 0, trans);
  EXPECT_TRUE(commutes(DiagonalAutomorphism::identity(), d, trans));
  EXPECT_TRUE(commutes(DiagonalAutomorphism::from_roots(4, 1, 1), d, trans));
  EXPECT_FALSE(commutes(DiagonalAutomorphism::from_roots(4, 1, 0), d, trans));
}

TEST(Commutes, MatchesConjugation) {
  check::Rng rng(25);
  for (int t = 0; t < 100; ++t) {
    const QSpec spec = check::random_spec(rng);
    const Derivation delta = make_derivation(check::random_qpoly(rng, 3, 3), 0, 0, spec);
    const std::int64_t order = check::uniform(rng, 1, 6);
    const DiagonalAutomorphism rho = DiagonalAutomorphism::from_roots(
        order, check::uniform(rng, 0, order - 1), check::uniform(rng, 0, order - 1));
    EXPECT_EQ(commutes(rho, delta, spec), same_derivation(conjugate(rho, delta, spec), delta));
  }
}

TEST(QPolyText, RoundTrip) {
  check::Rng rng(26);
  for (int t = 0; t < 200; ++t) {
    const QPoly f = check::random_qpoly(rng, 4, 5);
    EXPECT_EQ(parse_qpoly(f.to_string()), f) << f.to_string();
  }
  const QPoly z = QPoly::monomial(2, 1, Scalar::zeta(5, 2) + Scalar(1));
  EXPECT_EQ(parse_qpoly(z.to_string()), z) << z.to_string();
}
