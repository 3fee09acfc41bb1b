#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "perfchar/poly.hpp"

namespace perfchar {

// Recursive-descent parser for the polynomial grammar
//
//   expr     := ('+'|'-')? term (('+'|'-') term)*
//   term     := coeff? ('*'? factor)*
//   factor   := var ('^' exponent)?
//   exponent := integer | '(' integer '/' integer ')'
//
// Variables match [a-zA-Z][a-zA-Z0-9_]* and must belong to the ring.
// Fractional exponent denominators must be powers of the characteristic.
class PolyParser {
 public:
  PolyParser(std::string text, PolyRingPtr ring)
      : text_(std::move(text)), ring_(std::move(ring)) {}

  PerfPoly parse() {
    skip_ws();
    int sign = 1;
    if (peek() == '-') {
      ++pos_;
      sign = -1;
    } else if (peek() == '+') {
      ++pos_;
    }
    PerfPoly acc = parse_term().scaled(sign);
    skip_ws();
    while (peek() == '+' || peek() == '-') {
      char op = text_[pos_++];
      PerfPoly t = parse_term();
      acc = (op == '+') ? acc + t : acc - t;
      skip_ws();
    }
    if (pos_ != text_.size())
      throw ParseError("unexpected character '" + std::string(1, peek()) + "'",
                       pos_);
    return acc;
  }

 private:
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n'))
      ++pos_;
  }

  Int parse_integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) throw ParseError("expected an integer", start);
    return Int(text_.substr(start, pos_ - start));
  }

  std::string parse_ident() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() ||
        !(std::isalpha(static_cast<unsigned char>(text_[pos_]))))
      throw ParseError("expected a variable name", pos_);
    ++pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  PExponent parse_exponent() {
    skip_ws();
    if (peek() == '(') {
      std::size_t open = pos_;
      ++pos_;
      Int num = parse_integer();
      skip_ws();
      if (peek() != '/')
        throw ParseError("expected '/' in fractional exponent", pos_);
      ++pos_;
      Int den = parse_integer();
      skip_ws();
      if (peek() != ')')
        throw ParseError("expected ')' closing exponent", pos_);
      ++pos_;
      unsigned level = 0;
      Int d = den;
      while (d > 1 && d % ring_->ch.p == 0) {
        d /= ring_->ch.p;
        ++level;
      }
      if (d != 1)
        throw NonPPowerDenominator(
            "exponent denominator " + den.str() + " is not a power of " +
                std::to_string(ring_->ch.p),
            open);
      return pexp_normalized(num, level, ring_->ch);
    }
    return pexp_int(parse_integer());
  }

  PerfPoly parse_factor() {
    std::size_t start = pos_;
    std::string name = parse_ident();
    int idx = ring_->index_of(name);
    if (idx < 0) throw UnknownVariable(name, start);
    PExponent e = pexp_int(1);
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      e = parse_exponent();
    }
    if (e.is_zero()) return PerfPoly::constant(ring_, 1);
    return PerfPoly::variable(ring_, idx, e);
  }

  PerfPoly parse_term() {
    skip_ws();
    bool have_any = false;
    PerfPoly acc = PerfPoly::constant(ring_, 1);
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      acc = PerfPoly::constant(ring_, parse_integer());
      have_any = true;
    }
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        acc = acc * parse_factor();
        have_any = true;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(peek()))) {
        acc = acc * parse_factor();
        have_any = true;
        continue;
      }
      break;
    }
    if (!have_any) throw ParseError("expected a term", pos_);
    return acc;
  }

  std::string text_;
  PolyRingPtr ring_;
  std::size_t pos_ = 0;
};

inline PerfPoly parse_poly(const std::string& text, PolyRingPtr ring) {
  return PolyParser(text, std::move(ring)).parse();
}

// Comma-separated list of polynomials (no nesting in the grammar, so a plain
// split is enough).
inline std::vector<PerfPoly> parse_poly_list(const std::string& text,
                                             const PolyRingPtr& ring) {
  std::vector<PerfPoly> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      std::string piece = text.substr(start, i - start);
      bool blank = true;
      for (char c : piece)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
      if (!blank) out.push_back(parse_poly(piece, ring));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace perfchar
