#pragma once

#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"

namespace multdyn {

template <class S>
struct Decomposition {
  Polynomial<S> outer;  // g
  Polynomial<S> inner;  // h, monic with h(0) = 0
};

/// All f = g o h with deg g, deg h >= 2, one per degree split, with h
/// normalised monic and h(0) = 0 (every decomposition is linearly equivalent
/// to exactly one such pair).
///
/// For deg g = r, the top s = deg h coefficients of f/lead(f) determine h as
/// the truncated r-th root of the reversed polynomial; g then falls out of
/// the h-adic expansion of f, which must have constant digits.
template <class S>
std::vector<Decomposition<S>> decompose_functional(const Polynomial<S>& f, int max_degree = 24) {
  std::vector<Decomposition<S>> out;
  const int n = f.degree();
  if (n < 4) return out;
  if (n > max_degree)
    throw BudgetExceeded("decompose_functional: degree " + std::to_string(n) + " exceeds cap " +
                         std::to_string(max_degree));
  const Polynomial<S> monic = f.monic();
  // p_k = coefficient of X^(n-k) in the monic polynomial, p_0 = 1
  auto p = [&](int k) { return monic.coeff(static_cast<std::size_t>(n - k)); };

  for (int r = 2; r <= n / 2; ++r) {
    if (n % r != 0) continue;
    const int s = n / r;
    // q = (reversed monic)^(1/r) mod t^s via the power-series power recurrence
    // q_k = 1/k * sum_{j=1..k} ((1/r + 1) j - k) p_j q_{k-j}
    std::vector<S> q(static_cast<std::size_t>(s));
    q[0] = S(1);
    const Rational alpha_plus_one = Rational(1) / Rational(r) + Rational(1);
    for (int k = 1; k < s; ++k) {
      S acc(0);
      for (int j = 1; j <= k; ++j) {
        S weight = ScalarTraits<S>::from_rational(alpha_plus_one * Rational(j) - Rational(k));
        acc += weight * p(j) * q[static_cast<std::size_t>(k - j)];
      }
      q[static_cast<std::size_t>(k)] = acc / S(k);
    }
    std::vector<S> hc(static_cast<std::size_t>(s) + 1);
    for (int k = 0; k < s; ++k) hc[static_cast<std::size_t>(s - k)] = q[static_cast<std::size_t>(k)];
    Polynomial<S> h(std::move(hc));

    std::vector<S> gc;
    Polynomial<S> rest = f;
    bool ok = true;
    while (!rest.is_zero()) {
      auto [quot, rem] = divmod(rest, h);
      if (!rem.is_constant()) {
        ok = false;
        break;
      }
      gc.push_back(rem.is_zero() ? S(0) : rem.lead());
      rest = std::move(quot);
    }
    if (!ok) continue;
    Polynomial<S> g(std::move(gc));
    if (g.degree() != r) continue;
    detail::ensure(compose(g, h) == f, "decompose_functional: recomposition mismatch");
    out.push_back({std::move(g), std::move(h)});
  }
  return out;
}

}  // namespace multdyn
