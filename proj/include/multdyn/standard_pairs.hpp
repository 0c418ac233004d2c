#pragma once

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dickson.hpp"
#include "errors.hpp"
#include "polynomial.hpp"

namespace multdyn {

enum class PairKind { FirstKind, SecondKind, ThirdKind, FourthKind, FifthKind, Specific };

inline const char* to_string(PairKind k) {
  switch (k) {
    case PairKind::FirstKind: return "FirstKind";
    case PairKind::SecondKind: return "SecondKind";
    case PairKind::ThirdKind: return "ThirdKind";
    case PairKind::FourthKind: return "FourthKind";
    case PairKind::FifthKind: return "FifthKind";
    case PairKind::Specific: return "Specific";
  }
  return "?";
}

/// Parameters used by the kinds:
///   FirstKind   (X^m, a X^r p(X)^m)          0 <= r < m, gcd(r, m) = 1, r + deg p > 0
///   SecondKind  (X^2, (a X^2 + b) p(X)^2)
///   ThirdKind   (D_m(X, a^n), D_n(X, a^m))    gcd(m, n) = 1
///   FourthKind  (a^(-m/2) D_m(X, a), -b^(n/2) D_n(X, b))   gcd(m, n) = 2
///   FifthKind   ((a X^2 - 1)^3, 3X^4 - 4X^3)
///   Specific    (D_m(X, a^(n/d)), -D_n(X cos(pi/d), a^(m/d)))   d = gcd(m, n) in {3, 4, 6}
template <class S>
struct PairParameters {
  long m = 1, n = 1, r = 0;
  S a = S(1), b = S(1);
  Polynomial<S> p = Polynomial<S>::constant(S(1));
  bool switched = false;
};

template <class S>
struct StandardPair {
  PairKind kind;
  PairParameters<S> params;
  Polynomial<S> f1, g1;
};

namespace detail {

/// cos(pi/d)^2 = (1 + cos(2 pi/d)) / 2 for the d where cos(2 pi/d) is rational.
inline Rational cos_pi_over_d_squared(long d) {
  switch (d) {
    case 3: return Rational(1, 4);
    case 4: return Rational(1, 2);
    case 6: return Rational(3, 4);
    default:
      throw DomainError("specific pair: cos(2*pi/" + std::to_string(d) +
                        ") is irrational; only d in {3, 4, 6} are constructible over Q and Q(i)");
  }
}

/// P(c X) for P with only X^(deg P - 2k) terms, given c^2 (and c itself when
/// deg P is odd).
template <class S>
Polynomial<S> scale_by_cos(const Polynomial<S>& P, const Rational& c2, const Rational& c_odd) {
  std::vector<S> c = P.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    Rational factor = c2.pow(static_cast<long>(k / 2));
    if (k % 2 == 1) factor *= c_odd;
    c[k] *= ScalarTraits<S>::from_rational(factor);
  }
  return Polynomial<S>(std::move(c));
}

}  // namespace detail

/// Builds (f1, g1) for the given kind after checking its constraints; a
/// violated constraint is named in the error.
template <class S>
StandardPair<S> make_standard_pair(PairKind kind, const PairParameters<S>& q) {
  using P = Polynomial<S>;
  using detail::require;
  const P X = P::x();
  auto pos = [&](long v, const char* name) { require(v >= 1, std::string(name) + " must be a positive integer"); };
  StandardPair<S> out{kind, q, P(), P()};
  switch (kind) {
    case PairKind::FirstKind: {
      pos(q.m, "m");
      require(!q.a.is_zero(), "FirstKind: a must be nonzero");
      require(!q.p.is_zero(), "FirstKind: p must be nonzero");
      require(0 <= q.r && q.r < q.m, "FirstKind: constraint 0 <= r < m violated");
      require(std::gcd(q.r, q.m) == 1, "FirstKind: constraint gcd(r, m) = 1 violated");
      require(q.r + q.p.degree() > 0, "FirstKind: constraint r + deg p > 0 violated");
      out.f1 = P::monomial(S(1), static_cast<std::size_t>(q.m));
      out.g1 = P::monomial(q.a, static_cast<std::size_t>(q.r)) * q.p.pow(static_cast<unsigned long>(q.m));
      break;
    }
    case PairKind::SecondKind: {
      require(!q.a.is_zero() && !q.b.is_zero(), "SecondKind: a and b must be nonzero");
      require(!q.p.is_zero(), "SecondKind: p must be nonzero");
      out.f1 = X.pow(2);
      out.g1 = (P::monomial(q.a, 2) + P::constant(q.b)) * q.p.pow(2);
      break;
    }
    case PairKind::ThirdKind: {
      pos(q.m, "m");
      pos(q.n, "n");
      require(!q.a.is_zero(), "ThirdKind: a must be nonzero");
      require(std::gcd(q.m, q.n) == 1, "ThirdKind: constraint gcd(m, n) = 1 violated");
      out.f1 = dickson(static_cast<unsigned>(q.m), q.a.pow(q.n));
      out.g1 = dickson(static_cast<unsigned>(q.n), q.a.pow(q.m));
      break;
    }
    case PairKind::FourthKind: {
      pos(q.m, "m");
      pos(q.n, "n");
      require(!q.a.is_zero() && !q.b.is_zero(), "FourthKind: a and b must be nonzero");
      require(std::gcd(q.m, q.n) == 2, "FourthKind: constraint gcd(m, n) = 2 violated");
      out.f1 = dickson(static_cast<unsigned>(q.m), q.a) * q.a.pow(-q.m / 2);
      out.g1 = -(dickson(static_cast<unsigned>(q.n), q.b) * q.b.pow(q.n / 2));
      break;
    }
    case PairKind::FifthKind: {
      require(!q.a.is_zero(), "FifthKind: a must be nonzero");
      out.f1 = (P::monomial(q.a, 2) - P::constant(S(1))).pow(3);
      out.g1 = P::monomial(S(3), 4) - P::monomial(S(4), 3);
      break;
    }
    case PairKind::Specific: {
      pos(q.m, "m");
      pos(q.n, "n");
      require(!q.a.is_zero(), "Specific: a must be nonzero");
      const long d = std::gcd(q.m, q.n);
      require(d >= 3, "Specific: constraint d = gcd(m, n) >= 3 violated");
      Rational c2 = detail::cos_pi_over_d_squared(d);
      // odd n forces odd d, and d = 3 is the only odd admissible value: cos(pi/3) = 1/2
      Rational c_odd = d == 3 ? Rational(1, 2) : Rational(0);
      require(q.n % 2 == 0 || d == 3, "Specific: cos(pi/d) is irrational for odd n with d != 3");
      out.f1 = dickson(static_cast<unsigned>(q.m), q.a.pow(q.n / d));
      out.g1 = -detail::scale_by_cos(dickson(static_cast<unsigned>(q.n), q.a.pow(q.m / d)), c2, c_odd);
      break;
    }
  }
  if (q.switched) std::swap(out.f1, out.g1);
  return out;
}

/// All integer (x, y) with |x|, |y| <= H and f(x) = g(y), sorted.
template <class S>
std::vector<std::pair<long, long>> scan_separated_solutions(const Polynomial<S>& f, const Polynomial<S>& g, long H) {
  detail::require(H >= 1, "scan_separated_solutions: H must be positive");
  std::map<std::string, std::vector<long>> by_value;
  for (long y = -H; y <= H; ++y) by_value[g(S(y)).str()].push_back(y);
  std::vector<std::pair<long, long>> out;
  for (long x = -H; x <= H; ++x) {
    auto it = by_value.find(f(S(x)).str());
    if (it == by_value.end()) continue;
    for (long y : it->second) out.emplace_back(x, y);
  }
  return out;
}

/// f^k = phi(f1(lambda)) and zeta g^l = phi(g1(mu)), exactly.
template <class S>
bool verify_bt_shape(const Polynomial<S>& f, const Polynomial<S>& g, const Polynomial<S>& phi, const Polynomial<S>& f1,
                     const Polynomial<S>& g1, const Polynomial<S>& lambda, const Polynomial<S>& mu, unsigned k,
                     unsigned l, const S& zeta) {
  detail::require(lambda.degree() == 1 && mu.degree() == 1, "verify_bt_shape: lambda and mu must be linear");
  detail::require(ScalarTraits<S>::is_root_of_unity(zeta),
                  std::string("verify_bt_shape: zeta must be a root of unity in ") + ScalarTraits<S>::domain);
  detail::require(k >= 1 && l >= 1, "verify_bt_shape: k and l must be positive");
  return f.pow(k) == compose(phi, compose(f1, lambda)) && g.pow(l) * zeta == compose(phi, compose(g1, mu));
}

}  // namespace multdyn
