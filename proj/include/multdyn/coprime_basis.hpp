#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"

namespace multdyn {

/// Pairwise-coprime integers > 1 together with the exact factorization of
/// every input value over them: value[r] = (-1)^negative[r] * prod elements[j]^exponents[r][j].
struct CoprimeBasis {
  std::vector<BigInt> elements;
  std::vector<std::vector<long>> exponents;  // one row per input, one column per element
  std::vector<bool> negative;

  std::size_t size() const { return elements.size(); }

  BigInt reconstruct(std::size_t row) const {
    BigInt v = 1;
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (exponents[row][j] != 0) v *= pow(elements[j], static_cast<unsigned long>(exponents[row][j]));
    return negative[row] ? BigInt(-v) : v;
  }
};

namespace detail {

/// Inserts x into a pairwise-coprime set, splitting along gcds until the set
/// is coprime again. Every value previously expressible as a product of set
/// members stays expressible.
inline void refine_insert(std::vector<BigInt>& basis, BigInt x) {
  std::vector<BigInt> pending{std::move(x)};
  while (!pending.empty()) {
    BigInt v = std::move(pending.back());
    pending.pop_back();
    if (v == 1) continue;
    bool split = false;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      BigInt g = gcd(v, basis[j]);
      if (g == 1) continue;
      BigInt b = basis[j];
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(j));
      pending.push_back(b / g);
      pending.push_back(v / g);
      pending.push_back(g);
      split = true;
      break;
    }
    if (!split) basis.push_back(std::move(v));
  }
}

}  // namespace detail

/// Factor refinement: a coprime basis over which every input factors exactly,
/// computed with gcds only (no prime factorization).
inline CoprimeBasis factor_refine(std::span<const BigInt> values) {
  std::vector<BigInt> elems;
  for (const auto& v : values) {
    detail::require(sgn(v) != 0, "factor_refine: zero input has no factorization");
    detail::refine_insert(elems, BigInt(abs(v)));
  }
  std::sort(elems.begin(), elems.end());

  CoprimeBasis out;
  out.elements = std::move(elems);
  out.exponents.reserve(values.size());
  for (const auto& v : values) {
    BigInt rest = abs(v);
    std::vector<long> row(out.elements.size(), 0);
    for (std::size_t j = 0; j < out.elements.size() && rest != 1; ++j)
      row[j] = static_cast<long>(remove_factor(rest, out.elements[j]));
    detail::ensure(rest == 1, "factor_refine: value not covered by basis");
    out.exponents.push_back(std::move(row));
    out.negative.push_back(sgn(v) < 0);
  }
  return out;
}

inline CoprimeBasis factor_refine(std::initializer_list<BigInt> values) {
  std::vector<BigInt> v(values);
  return factor_refine(std::span<const BigInt>(v));
}

}  // namespace multdyn
