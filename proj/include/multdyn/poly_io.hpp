#pragma once

#include <cctype>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

#include "polynomial.hpp"

namespace multdyn {

namespace detail {

/// Recursive-descent reader for expressions such as "3/2*X^4 - X + 5",
/// "(X-4*i)*(X-i)^2" or "2X^2+1". Division is allowed by constants only;
/// "i" is accepted only when S has an imaginary unit.
template <class S>
class PolyParser {
 public:
  explicit PolyParser(std::string_view text) {
    // U+2212 minus sign, as found in typeset sources.
    for (std::size_t k = 0; k < text.size(); ++k) {
      if (text.compare(k, 3, "\xE2\x88\x92") == 0) {
        src_ += '-';
        k += 2;
      } else if (!std::isspace(static_cast<unsigned char>(text[k]))) {
        src_ += text[k];
      }
    }
  }

  Polynomial<S> parse() {
    if (src_.empty()) fail("empty polynomial");
    auto p = expr();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw DomainError("cannot parse polynomial '" + src_ + "': " + msg + " at offset " + std::to_string(pos_));
  }
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  Polynomial<S> expr() {
    Polynomial<S> acc = term();
    while (true) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  bool starts_primary() const {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'X' || c == 'x' || c == 'i' || c == '(';
  }

  Polynomial<S> term() {
    Polynomial<S> acc = factor();
    while (true) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        auto d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc /= d.lead();
      } else if (starts_primary()) {
        acc *= factor();
      } else {
        return acc;
      }
    }
  }

  Polynomial<S> factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    Polynomial<S> base = primary();
    if (accept('^')) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) fail("exponent must be a nonnegative integer");
      base = base.pow(std::stoul(src_.substr(start, pos_ - start)));
    }
    return base;
  }

  Polynomial<S> primary() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return Polynomial<S>::constant(S(parse_bigint(src_.substr(start, pos_ - start))));
    }
    if (c == 'X' || c == 'x') {
      ++pos_;
      return Polynomial<S>::x();
    }
    if (c == 'i') {
      if constexpr (ScalarTraits<S>::has_imaginary_unit) {
        ++pos_;
        return Polynomial<S>::constant(S::i());
      } else {
        fail("'i' is only available in the Q(i) domain");
      }
    }
    if (accept('(')) {
      auto p = expr();
      if (!accept(')')) fail("missing ')'");
      return p;
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  std::string src_;
  std::size_t pos_ = 0;
};

struct SignedText {
  bool negative;
  std::string magnitude;  // never starts with '-'
  bool is_one;
};

inline SignedText split_sign(const Rational& c) {
  Rational m = c.abs();
  return {c.sign() < 0, m.str(), m == Rational(1)};
}

inline SignedText split_sign(const GaussianRational& c) {
  if (c.im().is_zero()) return split_sign(c.re());
  if (c.re().is_zero()) {
    Rational m = c.im().abs();
    return {c.im().sign() < 0, m == Rational(1) ? "i" : m.str() + "*i", false};
  }
  return {false, "(" + c.str() + ")", false};
}

}  // namespace detail

template <class S>
Polynomial<S> parse_polynomial(std::string_view text) {
  return detail::PolyParser<S>(text).parse();
}

/// Canonical text form, descending powers: "3/2*X^4 - X + 5". Reparses to an
/// equal polynomial.
template <class S>
std::string to_string(const Polynomial<S>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k].is_zero()) continue;
    auto [neg, mag, one] = detail::split_sign(c[k]);
    std::string mono = k == 0 ? "" : (k == 1 ? "X" : "X^" + std::to_string(k));
    std::string term = k == 0 ? mag : (one ? mono : mag + "*" + mono);
    if (out.empty()) out = (neg ? "-" : "") + term;
    else out += (neg ? " - " : " + ") + term;
  }
  return out;
}

template <class S>
std::ostream& operator<<(std::ostream& os, const Polynomial<S>& p) {
  return os << to_string(p);
}

}  // namespace multdyn
