#pragma once

// Parser for the scalar and polynomial text forms.
//
//   document := [ "conductor" "=" INT ";" ] expr
//   expr     := [ "+" | "-" ] term { ( "+" | "-" ) term }
//   term     := power { "*" power }
//   power    := atom [ "^" [ "-" ] INT ]
//   atom     := INT [ "/" INT ] | "q" | "z" | "x" | "y" | "(" expr ")"
//
// Products are taken in the quantum plane, so "y*x" parses to q*x*y. Negative
// exponents are allowed on q, z and rational constants only.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "qpi/error.hpp"
#include "qpi/qplane.hpp"
#include "qpi/scalar.hpp"

namespace qpi {

namespace detail {

class TextParser {
public:
  TextParser(std::string_view text, const QSpec& spec, std::int64_t conductor)
      : text_(text), spec_(spec), conductor_(conductor) {}

  QPoly parse_document() {
    skip_ws();
    if (text_.substr(pos_, 9) == "conductor") {
      pos_ += 9;
      expect('=');
      const std::int64_t declared = parse_int();
      if (declared < 1) fail("conductor must be positive");
      check_conductor(declared);
      conductor_ = lcm(conductor_, declared);
      expect(';');
    }
    QPoly result = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return lift_all(result);
  }

  std::int64_t conductor() const noexcept { return conductor_; }

private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message + " at offset " + std::to_string(pos_) + " in \"" +
                     std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  BigInt parse_digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  std::int64_t parse_int() {
    const bool negative = accept('-');
    const BigInt v = parse_digits();
    if (v > BigInt(INT64_MAX)) fail("integer too large");
    const auto r = static_cast<std::int64_t>(v);
    return negative ? -r : r;
  }

  QPoly parse_expr() {
    QPoly sum;
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    for (;;) {
      QPoly t = parse_term();
      sum = negative ? sum - t : sum + t;
      if (accept('+')) negative = false;
      else if (accept('-')) negative = true;
      else break;
    }
    return sum;
  }

  QPoly parse_term() {
    QPoly product = parse_power();
    while (accept('*')) product = multiply(product, parse_power(), spec_);
    return product;
  }

  QPoly parse_power() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      QPoly inner = parse_expr();
      expect(')');
      if (!accept('^')) return inner;
      const std::int64_t e = parse_int();
      if (e < 0) fail("negative exponent on a parenthesized expression");
      QPoly r(Scalar(1));
      for (std::int64_t k = 0; k < e; ++k) r = multiply(r, inner, spec_);
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(parse_digits());
      if (accept('/')) {
        const BigInt den = parse_digits();
        if (den == 0) fail("zero denominator");
        value /= Rational(den);
      }
      if (accept('^')) {
        const std::int64_t e = parse_int();
        if (e < 0 && value == 0) fail("zero to a negative power");
        Rational r = 1;
        for (std::int64_t k = 0; k < (e < 0 ? -e : e); ++k) r *= value;
        value = e < 0 ? Rational(1) / r : r;
      }
      return QPoly(Scalar(value));
    }
    if (c == 'q' || c == 'z' || c == 'x' || c == 'y') {
      ++pos_;
      if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
        fail("unknown identifier");
      }
      const std::int64_t e = accept('^') ? parse_int() : 1;
      switch (c) {
      case 'q': return QPoly(Scalar::q_power(e, spec_));
      case 'z':
        if (conductor_ == 1) fail("z used without a conductor declaration");
        return QPoly(Scalar::zeta(conductor_, e));
      case 'x':
        if (e < 0) fail("negative power of x");
        return QPoly::monomial(checked_exponent(e), 0);
      default:
        if (e < 0) fail("negative power of y");
        return QPoly::monomial(0, checked_exponent(e));
      }
    }
    fail("unexpected character");
  }

  QPoly lift_all(const QPoly& p) {
    const std::int64_t target = lcm(conductor_, p.conductor());
    check_conductor(target);
    conductor_ = target;
    QPoly r;
    for (const auto& [m, c] : p.terms()) r.add_term(m, c.lifted(target));
    return r;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  QSpec spec_;
  std::int64_t conductor_;
};

} // namespace detail

/// Parses a polynomial document. `conductor` is a document-level default
/// that a `conductor=L;` prefix extends.
inline QPoly parse_qpoly(std::string_view text, const QSpec& spec = QSpec::transcendental(),
                         std::int64_t conductor = 1) {
  return detail::TextParser(text, spec, conductor).parse_document();
}

inline Scalar parse_scalar(std::string_view text, const QSpec& spec = QSpec::transcendental(),
                           std::int64_t conductor = 1) {
  detail::TextParser parser(text, spec, conductor);
  const QPoly p = parser.parse_document();
  if (p.terms().empty()) return Scalar::from_terms(parser.conductor(), {});
  if (p.terms().size() != 1 || p.terms().begin()->first != Monomial{0, 0}) {
    throw ParseError("expected a scalar, got polynomial \"" + std::string(text) + "\"");
  }
  return p.terms().begin()->second;
}

} // namespace qpi
