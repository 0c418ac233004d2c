#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace multdyn {

/// Element re + im*i of Q(i); both parts are reduced Rationals.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(const BigInt& v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    detail::require(!o.is_zero(), "division by zero");
    Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;

  GaussianRational pow(long e) const {
    if (e < 0) return (GaussianRational(1) / *this).pow(-e);
    GaussianRational result(1), base = *this;
    for (auto k = static_cast<unsigned long>(e); k != 0; k >>= 1) {
      if (k & 1) result *= base;
      if (k > 1) base *= base;
    }
    return result;
  }

  std::string str() const {
    if (im_.is_zero()) return re_.str();
    std::string imag = im_ == Rational(1) ? "i" : (im_ == Rational(-1) ? "-i" : im_.str() + "*i");
    if (re_.is_zero()) return imag;
    return re_.str() + (im_.sign() > 0 ? "+" : "") + imag;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    return os << z.str();
  }

 private:
  Rational re_;
  Rational im_;
};

namespace detail {

inline BigInt round_nearest(const Rational& q) {
  // floor((2n + d) / 2d)
  BigInt n = 2 * q.num() + q.den(), d = 2 * q.den(), r;
  mpz_fdiv_q(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return r;
}

inline GaussianRational round_gaussian(const GaussianRational& z) {
  return {Rational(round_nearest(z.re())), Rational(round_nearest(z.im()))};
}

/// log2 |x| for x != 0, usable far beyond the double exponent range.
inline long double log2_abs(const BigInt& x) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log2(std::fabs(static_cast<long double>(m))) + static_cast<long double>(e);
}

/// value * 2^shift with value a long double of magnitude <= 2^62.
inline BigInt scaled_integer(long double value, long shift) {
  BigInt r(static_cast<long>(std::llround(value)));
  if (shift > 0) r <<= static_cast<unsigned long>(shift);
  return r;
}

/// Exact k-th root in Z[i] of a + b*i, if one exists. Candidates come from a
/// floating-point polar estimate refined by Newton steps rounded to Z[i]; only
/// exactly verified roots are returned.
inline std::optional<GaussianRational> gaussian_integer_root(const BigInt& a, const BigInt& b,
                                                             unsigned long k) {
  GaussianRational target{Rational(a), Rational(b)};
  if (target.is_zero()) return GaussianRational(0);
  if (k == 1) return target;
  BigInt norm = a * a + b * b;
  auto radius_sq = exact_root(norm, k);
  if (!radius_sq) return std::nullopt;

  long double log_r = (sgn(*radius_sq) == 0 ? 0.0L : log2_abs(*radius_sq)) / 2.0L;
  long ea = 0, eb = 0;
  double ma = sgn(a) == 0 ? 0.0 : mpz_get_d_2exp(&ea, a.get_mpz_t());
  double mb = sgn(b) == 0 ? 0.0 : mpz_get_d_2exp(&eb, b.get_mpz_t());
  long top = std::max(sgn(a) ? ea : eb, sgn(b) ? eb : ea);
  long double theta = std::atan2(std::ldexp(static_cast<long double>(mb), static_cast<int>(eb - top)),
                                 std::ldexp(static_cast<long double>(ma), static_cast<int>(ea - top)));
  long shift = std::max(0L, static_cast<long>(std::floor(log_r)) - 60);
  long double mag = std::exp2(log_r - static_cast<long double>(shift));

  const auto kk = static_cast<long>(k);
  auto matches = [&](const GaussianRational& w) { return w.pow(kk) == target; };
  for (unsigned long j = 0; j < k; ++j) {
    long double phi = (theta + 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(j)) /
                      static_cast<long double>(k);
    GaussianRational w{Rational(scaled_integer(mag * std::cos(phi), shift)),
                       Rational(scaled_integer(mag * std::sin(phi), shift))};
    for (int iter = 0; iter < 256 && !w.is_zero(); ++iter) {
      GaussianRational w_pow = w.pow(kk - 1);
      GaussianRational next =
          round_gaussian(w - (w_pow * w - target) / (GaussianRational(kk) * w_pow));
      if (next == w) break;
      w = std::move(next);
    }
    for (const auto& d : {GaussianRational(0), GaussianRational(1), GaussianRational(-1),
                          GaussianRational::i(), -GaussianRational::i()}) {
      if (matches(w + d)) return w + d;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Scalar-domain metadata shared by the polynomial layer.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr const char* domain = "Q";
  static constexpr bool has_imaginary_unit = false;

  static std::vector<Rational> roots_of_unity() { return {Rational(1), Rational(-1)}; }
  static bool is_root_of_unity(const Rational& x) { return x == 1 || x == -1; }
  static std::optional<Rational> root(const Rational& c, unsigned long k) { return c.root(k); }
  static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr const char* domain = "Q(i)";
  static constexpr bool has_imaginary_unit = true;

  static std::vector<GaussianRational> roots_of_unity() {
    return {GaussianRational(1), GaussianRational(-1), GaussianRational::i(),
            -GaussianRational::i()};
  }
  static bool is_root_of_unity(const GaussianRational& x) {
    for (const auto& u : roots_of_unity())
      if (x == u) return true;
    return false;
  }
  /// k-th root inside Q(i), when it exists.
  static std::optional<GaussianRational> root(const GaussianRational& c, unsigned long k) {
    BigInt d = lcm(c.re().den(), c.im().den());
    BigInt scale = pow(d, k - 1);
    BigInt a = c.re().num() * (d / c.re().den()) * scale;
    BigInt b = c.im().num() * (d / c.im().den()) * scale;
    auto w = detail::gaussian_integer_root(a, b, k);
    if (!w) return std::nullopt;
    return *w / GaussianRational(d);
  }
  static GaussianRational from_rational(const Rational& q) { return GaussianRational(q); }
};

}  // namespace multdyn
