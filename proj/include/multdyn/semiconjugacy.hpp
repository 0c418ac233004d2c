#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "leveque.hpp"
#include "multdep.hpp"
#include "polynomial.hpp"
#include "squarefree.hpp"

namespace multdyn {

/// f_hat(X) = X^s * f_tilde(X^l) with f_tilde = c^(1/l) * p, from a form
/// f = c X^s p^l.
template <class S>
Polynomial<S> build_hat(const ExceptionalForm<S>& form) {
  detail::require(form.m >= 1, "build_hat: exponent must be positive");
  detail::require(form.content_root.has_value(),
                  "build_hat: content " + form.c.str() + " is not an " + std::to_string(form.m) +
                      "-th power in " + ScalarTraits<S>::domain);
  Polynomial<S> tilde = form.p * *form.content_root;
  return Polynomial<S>::monomial(S(1), form.s) * tilde.inflate(static_cast<std::size_t>(form.m));
}

template <class S>
Polynomial<S> build_hat(const Polynomial<S>& f, long l) {
  auto form = exceptional_form(f, l);
  detail::require(form.has_value(), "build_hat: f is not of the form c X^s p(X)^" + std::to_string(l));
  return build_hat(*form);
}

/// f^N(X^l) == f_hat^N(X)^l, coefficientwise.
template <class S>
bool verify_semiconjugacy(const Polynomial<S>& f, const Polynomial<S>& f_hat, long l, unsigned N) {
  detail::require(N >= 1, "verify_semiconjugacy: N must be positive");
  detail::require(l >= 1, "verify_semiconjugacy: l must be positive");
  if (f.degree() != f_hat.degree()) return false;
  auto lhs = iterate(f, N).inflate(static_cast<std::size_t>(l));
  auto rhs = iterate(f_hat, N).pow(static_cast<unsigned long>(l));
  return lhs == rhs;
}

namespace detail {

template <class S>
std::optional<std::vector<std::uint64_t>> reduce_poly_mod(const Polynomial<S>& f, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  std::uint64_t s = 0;
  if constexpr (ScalarTraits<S>::has_imaginary_unit) s = sqrt_minus_one(p);
  for (const auto& c : f.coeffs()) {
    std::optional<std::uint64_t> r;
    if constexpr (ScalarTraits<S>::has_imaginary_unit) r = reduce_mod(c, p, s);
    else r = reduce_mod(c, p);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  return out;
}

inline std::uint64_t eval_mod(const std::vector<std::uint64_t>& f, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (mulmod(acc, x, p) + *it) % p;
  return acc;
}

inline std::uint64_t iterate_mod(const std::vector<std::uint64_t>& f, unsigned n, std::uint64_t x, std::uint64_t p) {
  for (unsigned k = 0; k < n; ++k) x = eval_mod(f, x, p);
  return x;
}

/// a^b when it stays at most limit.
inline std::optional<std::uint64_t> bounded_power(std::uint64_t a, unsigned b, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (unsigned k = 0; k < b; ++k) {
    if (v > limit / a) return std::nullopt;
    v *= a;
  }
  return v;
}

}  // namespace detail

/// Smallest (n, m) by n with deg(f)^n = deg(g)^m <= maxdeg and f^n = g^m.
/// Candidates are screened by iterating sample points modulo two primes;
/// survivors are confirmed by exact composition up to exact_cap in degree.
/// Nothing found means none within the bound.
template <class S>
std::optional<std::pair<unsigned, unsigned>> common_iterate_search(const Polynomial<S>& f, const Polynomial<S>& g,
                                                                   std::uint64_t maxdeg = 1'000'000,
                                                                   std::uint64_t exact_cap = 1u << 14) {
  detail::require(f.degree() >= 2 && g.degree() >= 2, "common_iterate_search: degrees must be at least 2");
  const auto df = static_cast<std::uint64_t>(f.degree()), dg = static_cast<std::uint64_t>(g.degree());
  std::vector<std::pair<std::uint64_t, std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>>> reduced;
  for (std::uint64_t p : detail::kCertPrimes) {
    auto fp = detail::reduce_poly_mod(f, p), gp = detail::reduce_poly_mod(g, p);
    if (fp && gp) reduced.push_back({p, {*fp, *gp}});
  }
  for (unsigned n = 1;; ++n) {
    auto dn = detail::bounded_power(df, n, maxdeg);
    if (!dn) return std::nullopt;
    unsigned m = 0;
    std::uint64_t dm = 1;
    while (dm < *dn) {
      dm *= dg;
      ++m;
    }
    if (dm != *dn) continue;
    bool agree = true;
    for (const auto& [p, polys] : reduced) {
      for (std::uint64_t x = 2; x < 10 && agree; ++x)
        agree = detail::iterate_mod(polys.first, n, x, p) == detail::iterate_mod(polys.second, m, x, p);
      if (!agree) break;
    }
    if (!agree) continue;
    if (*dn > exact_cap)
      throw BudgetExceeded("common_iterate_search: candidate (" + std::to_string(n) + ", " + std::to_string(m) +
                           ") agrees modulo primes but exact confirmation exceeds degree " + std::to_string(exact_cap));
    if (iterate(f, n) == iterate(g, m)) return std::make_pair(n, m);
  }
}

/// Data for the construction of rank-one dependent orbit pairs over Q with
/// xi = 1: f^i(X) = X^s f_tilde(X)^ell, g^j(X) = X^t g_tilde(X)^k, and
/// f_hat^n = g_hat^m.
struct FamilyData {
  unsigned i = 1, j = 1;
  long k = 1, ell = 1;
  QPoly f_hat, g_hat;
  unsigned n = 1, m = 1;
};

struct FamilyPair {
  unsigned r;
  Rational z;  // f^(i n r)(x)
  Rational w;  // g^(j m r)(y^k)
  RankOnePair relation;
};

/// With x = y^ell, the pairs (f^(inr)(x), g^(jmr)(y^k)) for r = 1..R satisfy
/// z^k = w^ell through the chain f^(inr)(y^ell)^k = f_hat^(nr)(y)^(k ell)
/// = g_hat^(mr)(y)^(k ell) = g^(jmr)(y^k)^ell. Every link is checked exactly
/// and each pair is re-verified as dependent of rank one.
inline std::vector<FamilyPair> dependent_family(const QPoly& f, const QPoly& g, const FamilyData& d, const Rational& x,
                                                unsigned R) {
  using detail::ensure;
  using detail::require;
  require(d.k >= 1 && d.ell >= 1 && std::gcd(d.k, d.ell) == 1, "dependent_family: k, ell must be coprime positive");
  require(!(d.k == 1 && d.ell == 1), "dependent_family: k = ell = 1 gives no nontrivial rank-one relation");
  require(d.i >= 1 && d.j >= 1 && d.n >= 1 && d.m >= 1, "dependent_family: iterate counts must be positive");
  require(f.degree() >= 2 && g.degree() >= 2 && !f.is_monomial() && !g.is_monomial(),
          "dependent_family: f and g must be neither linear nor monomials");
  require(verify_semiconjugacy(iterate(f, d.i), d.f_hat, d.ell, 1), "dependent_family: f^i(X^ell) != f_hat(X)^ell");
  require(verify_semiconjugacy(iterate(g, d.j), d.g_hat, d.k, 1), "dependent_family: g^j(X^k) != g_hat(X)^k");
  require(iterate(d.f_hat, d.n) == iterate(d.g_hat, d.m), "dependent_family: f_hat^n != g_hat^m");
  auto y = x.root(static_cast<unsigned long>(d.ell));
  require(y.has_value(), "dependent_family: x is not an ell-th power in Q");

  std::vector<FamilyPair> out;
  Rational z = x, w = y->pow(d.k), zh = *y, wh = *y;
  for (unsigned r = 1; r <= R; ++r) {
    for (unsigned t = 0; t < d.i * d.n; ++t) z = f(z);
    for (unsigned t = 0; t < d.j * d.m; ++t) w = g(w);
    for (unsigned t = 0; t < d.n; ++t) zh = d.f_hat(zh);
    for (unsigned t = 0; t < d.m; ++t) wh = d.g_hat(wh);
    const std::string at = " fails at r = " + std::to_string(r);
    ensure(z.pow(d.k) == zh.pow(d.k * d.ell), "dependent_family: semiconjugacy of f" + at);
    ensure(zh == wh, "dependent_family: common iterate" + at);
    ensure(wh.pow(d.k * d.ell) == w.pow(d.ell), "dependent_family: semiconjugacy of g" + at);
    require(!z.is_zero() && !w.is_zero() && !z.is_unit_magnitude() && !w.is_unit_magnitude(),
            "dependent_family: orbit reaches 0 or +-1" + at + "; choose another x");
    auto rel = is_rank_one_pair(z, w);
    ensure(rel.has_value(), "dependent_family: pair not dependent" + at);
    std::vector<Rational> pair{z, w};
    auto verdict = test_dependence(std::span<const Rational>(pair));
    ensure(verdict.status == DependenceStatus::Dependent && verdict.rank == 1, "dependent_family: rank is not 1" + at);
    out.push_back({r, z, w, *rel});
  }
  return out;
}

}  // namespace multdyn
