#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "factor.hpp"
#include "polynomial.hpp"

namespace multdyn {

/// f = content * prod parts[j].first ^ parts[j].second with every part monic,
/// squarefree, pairwise coprime, and multiplicities strictly increasing.
template <class S>
struct SquarefreeDecomposition {
  S content;
  std::vector<std::pair<Polynomial<S>, unsigned>> parts;

  Polynomial<S> reconstruct() const {
    Polynomial<S> acc = Polynomial<S>::constant(content);
    for (const auto& [g, e] : parts) acc *= g.pow(e);
    return acc;
  }

  /// Number of distinct roots over the algebraic closure.
  std::size_t distinct_roots() const {
    std::size_t n = 0;
    for (const auto& [g, e] : parts) n += static_cast<std::size_t>(g.degree());
    return n;
  }

  unsigned max_multiplicity() const { return parts.empty() ? 0 : parts.back().second; }
};

namespace detail {

using ModPoly = std::vector<std::uint64_t>;

inline void mod_trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline ModPoly mod_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
  mod_trim(a);
  mod_trim(b);
  while (!b.empty()) {
    // a <- a mod b
    std::uint64_t inv = mod_inverse(b.back(), p);
    while (a.size() >= b.size()) {
      std::uint64_t q = mulmod(a.back(), inv, p);
      std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j)
        a[shift + j] = (a[shift + j] + p - mulmod(q, b[j], p)) % p;
      mod_trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

inline std::optional<std::uint64_t> reduce_mod(const Rational& q, std::uint64_t p) {
  std::uint64_t d = mpz_fdiv_ui(q.den().get_mpz_t(), p);
  if (d == 0) return std::nullopt;
  std::uint64_t n = mpz_fdiv_ui(q.num().get_mpz_t(), p);
  return mulmod(n, mod_inverse(d, p), p);
}

inline std::optional<std::uint64_t> reduce_mod(const GaussianRational& z, std::uint64_t p, std::uint64_t sqrt_m1) {
  auto a = reduce_mod(z.re(), p), b = reduce_mod(z.im(), p);
  if (!a || !b) return std::nullopt;
  return (*a + mulmod(*b, sqrt_m1, p)) % p;
}

// Primes just below 2^31, each 1 mod 4 so that Q(i) reduces as well.
inline constexpr std::uint64_t kCertPrimes[] = {2147483629ULL, 2147483549ULL, 2147483497ULL};

inline std::uint64_t sqrt_minus_one(std::uint64_t p) {
  for (std::uint64_t g = 2;; ++g) {
    std::uint64_t s = powmod(g, (p - 1) / 4, p);
    if (mulmod(s, s, p) == p - 1) return s;
  }
}

/// True when some prime reduction proves f squarefree: if f mod p keeps its
/// degree and is coprime to its derivative, the discriminant of f is nonzero.
template <class S>
bool certified_squarefree(const Polynomial<S>& f) {
  if (f.degree() <= 1) return true;
  for (std::uint64_t p : kCertPrimes) {
    ModPoly fp;
    bool ok = true;
    std::uint64_t s = 0;
    if constexpr (ScalarTraits<S>::has_imaginary_unit) s = sqrt_minus_one(p);
    for (const auto& c : f.coeffs()) {
      std::optional<std::uint64_t> r;
      if constexpr (ScalarTraits<S>::has_imaginary_unit) r = reduce_mod(c, p, s);
      else r = reduce_mod(c, p);
      if (!r) {
        ok = false;
        break;
      }
      fp.push_back(*r);
    }
    if (!ok || fp.back() == 0) continue;
    ModPoly dp(fp.size() - 1);
    for (std::size_t k = 1; k < fp.size(); ++k) dp[k - 1] = mulmod(fp[k], k % p, p);
    if (mod_gcd(fp, dp, p).size() == 1) return true;
  }
  return false;
}

}  // namespace detail

/// Yun's squarefree decomposition. A modular certificate short-circuits the
/// common squarefree case.
template <class S>
SquarefreeDecomposition<S> squarefree_decompose(const Polynomial<S>& f) {
  detail::require(!f.is_zero(), "squarefree decomposition of the zero polynomial");
  SquarefreeDecomposition<S> out{f.lead(), {}};
  if (f.degree() == 0) return out;
  Polynomial<S> g = f.monic();
  if (detail::certified_squarefree(g)) {
    out.parts.emplace_back(std::move(g), 1u);
    return out;
  }
  Polynomial<S> a = gcd(g, g.derivative());
  Polynomial<S> b = exact_divide(g, a);
  Polynomial<S> c = exact_divide(g.derivative(), a);
  Polynomial<S> d = c - b.derivative();
  for (unsigned i = 1; b.degree() > 0; ++i) {
    Polynomial<S> ai = gcd(b, d);
    b = exact_divide(b, ai);
    c = exact_divide(d, ai);
    d = c - b.derivative();
    if (ai.degree() > 0) out.parts.emplace_back(std::move(ai), i);
  }
  return out;
}

/// Product of the distinct monic irreducible factors (equivalently, of the
/// squarefree parts).
template <class S>
Polynomial<S> radical(const Polynomial<S>& f) {
  detail::require(!f.is_zero(), "radical of the zero polynomial");
  Polynomial<S> r = Polynomial<S>::constant(S(1));
  for (const auto& [g, e] : squarefree_decompose(f).parts) r *= g;
  return r;
}

}  // namespace multdyn
