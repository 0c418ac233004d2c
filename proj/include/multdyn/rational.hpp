#pragma once

#include <compare>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "bigint.hpp"

namespace multdyn {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den) {
    detail::require(sgn(den) != 0, "rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_bigint(text));
    return Rational(parse_bigint(text.substr(0, slash)),
                    parse_bigint(text.substr(slash + 1)));
  }

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  bool is_unit_magnitude() const { return mpz_cmpabs(q_.get_num_mpz_t(), q_.get_den_mpz_t()) == 0; }

  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  Rational inverse() const {
    detail::require(!is_zero(), "inverse of zero");
    return Rational(mpq_class(1 / q_));
  }

  /// this^e for any integer e (e < 0 needs this != 0).
  Rational pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    Rational r;
    r.q_ = mpq_class(n, d);  // already reduced: powers of coprime values
    return r;
  }

  /// r with r^k == *this, when such a rational exists.
  std::optional<Rational> root(unsigned long k) const {
    auto n = exact_root(q_.get_num(), k);
    if (!n) return std::nullopt;
    auto d = exact_root(q_.get_den(), k);
    if (!d) return std::nullopt;
    return Rational(*n, *d);
  }

  std::string str() const { return q_.get_str(10); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    detail::require(!o.is_zero(), "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.q_ = -a.q_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  mpq_class q_;
};

}  // namespace multdyn
