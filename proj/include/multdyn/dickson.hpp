#pragma once

#include "polynomial.hpp"

namespace multdyn {

/// Dickson polynomial D_m(X, a), characterised by D_m(z + a/z, a) = z^m + (a/z)^m.
/// Three-term recurrence D_m = X D_{m-1} - a D_{m-2}, D_0 = 2, D_1 = X.
template <class S>
Polynomial<S> dickson(unsigned m, const S& a) {
  using P = Polynomial<S>;
  P prev = P::constant(S(2));
  if (m == 0) return prev;
  P cur = P::x();
  for (unsigned k = 2; k <= m; ++k) {
    P next = P::x() * cur - prev * a;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace multdyn
