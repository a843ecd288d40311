#include <gtest/gtest.h>

#include "qpi/text.hpp"

using namespace qpi;

TEST(Parser, OperatorsAndPrecedence) {
  EXPECT_EQ(parse_qpoly("x^2 - 2*x*y + 3"),
            QPoly::monomial(2, 0) + QPoly::monomial(1, 1, Scalar(-2)) + QPoly(Scalar(3)));
  EXPECT_EQ(parse_qpoly("-x"), -QPoly::x());
  EXPECT_EQ(parse_qpoly("(x + y)^2"), parse_qpoly("x^2 + (1+q)*x*y + y^2"));
  EXPECT_EQ(parse_qpoly("y*x"), parse_qpoly("q*x*y"));
  EXPECT_EQ(parse_qpoly("2^-2*x"), QPoly::monomial(1, 0, Scalar(Rational(1, 4))));
  EXPECT_EQ(parse_qpoly("  x  *  y  "), QPoly::monomial(1, 1));
}

TEST(Parser, ConductorPrefix) {
  const QPoly p = parse_qpoly("conductor=4; z*x + z^2");
  EXPECT_EQ(p.coefficient({1, 0}), Scalar::zeta(4, 1));
  EXPECT_EQ(p.coefficient({0, 0}), Scalar(-1));
  EXPECT_EQ(parse_qpoly("z", QSpec::transcendental(), 3), QPoly(Scalar::zeta(3, 1)));
}

TEST(Parser, RootOfUnitySpec) {
  const QSpec r4 = QSpec::root_of_unity(4);
  EXPECT_EQ(parse_qpoly("q^4*x", r4), QPoly::x());
  EXPECT_EQ(parse_qpoly("q^2", r4), QPoly(Scalar(-1)));
}

TEST(Parser, Errors) {
  for (const char* bad : {"", "x^", "x +", "2/0", "x^-1", "(x", "foo", "z", "x y", "3 ** x",
                          "conductor=0; x", "(x)^-2", "x)"}) {
    EXPECT_THROW(parse_qpoly(bad), ParseError) << bad;
  }
  EXPECT_THROW(parse_scalar("x + 1"), ParseError);
  EXPECT_THROW(parse_qpoly("conductor=20000; z"), ResourceError);
}

TEST(Parser, ScalarForms) {
  EXPECT_EQ(parse_scalar("1/2"), Scalar(Rational(1, 2)));
  EXPECT_EQ(parse_scalar("0"), Scalar(0));
  EXPECT_EQ(parse_scalar("q*q^-1"), Scalar(1));
}
