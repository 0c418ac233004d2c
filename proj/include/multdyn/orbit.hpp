#pragma once

#include <cstddef>
#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace multdyn {

inline constexpr unsigned long kDefaultBitCap = 1ul << 21;

/// values[m - 1] = f^m(x0) for m = 1..N.
struct OrbitTable {
  QPoly f;
  Rational x0;
  std::vector<Rational> values;
  bool preperiodic = false;
  // first repeat: f^repeat_index(x0) == f^repeat_of(x0), repeat_of < repeat_index (index 0 is x0)
  std::size_t repeat_index = 0, repeat_of = 0;
  std::vector<std::optional<BigInt>> stripped;

  std::size_t size() const { return values.size(); }
  const Rational& at(std::size_t m) const {
    detail::require(m >= 1 && m <= values.size(), "orbit index " + std::to_string(m) + " out of range");
    return values[m - 1];
  }
  bool is_integral() const {
    for (const auto& v : values)
      if (!v.is_integer()) return false;
    return x0.is_integer();
  }
  std::vector<BigInt> integers() const {
    detail::require(is_integral(), "orbit has non-integer values");
    std::vector<BigInt> out;
    for (const auto& v : values) out.push_back(v.num());
    return out;
  }
};

namespace detail {

inline unsigned long rational_bits(const Rational& v) { return std::max(bit_length(v.num()), bit_length(v.den())); }

/// Upper estimate of the bit size of f(v).
inline unsigned long estimate_next_bits(const QPoly& f, const Rational& v) {
  unsigned long coeff_bits = 0, den_bits = 0;
  for (const auto& c : f.coeffs()) {
    coeff_bits = std::max(coeff_bits, bit_length(c.num()));
    den_bits += bit_length(c.den());
  }
  auto d = static_cast<unsigned long>(f.degree());
  return d * rational_bits(v) + coeff_bits + den_bits + bit_length(BigInt(static_cast<long>(d) + 1)) + 1;
}

}  // namespace detail

/// Exact orbit to N terms. A repeat (including a return to x0) marks the
/// orbit preperiodic. Values whose estimated size passes bit_cap raise
/// BudgetExceeded carrying the number of terms computed.
inline OrbitTable orbit(const QPoly& f, const Rational& x0, std::size_t N, unsigned long bit_cap = kDefaultBitCap) {
  detail::require(N >= 1, "orbit: N must be positive");
  detail::require(!f.is_zero(), "orbit: zero polynomial");
  OrbitTable t{f, x0, {}, false, 0, 0, {}};
  std::map<Rational, std::size_t> seen{{x0, 0}};
  Rational v = x0;
  for (std::size_t m = 1; m <= N; ++m) {
    if (detail::estimate_next_bits(f, v) > bit_cap)
      throw BudgetExceeded("orbit: term " + std::to_string(m) + " would exceed " + std::to_string(bit_cap) + " bits",
                           static_cast<long>(m - 1));
    v = f(v);
    t.values.push_back(v);
    if (!t.preperiodic) {
      auto [it, fresh] = seen.emplace(v, m);
      if (!fresh) {
        t.preperiodic = true;
        t.repeat_index = m;
        t.repeat_of = it->second;
      }
    }
  }
  t.stripped.assign(N, std::nullopt);
  return t;
}

/// a_m with every prime shared with an earlier a_k removed, by repeated gcd
/// stripping. |result| > 1 iff a_m has a primitive prime divisor. Cached in
/// the table.
inline const BigInt& primitive_part(OrbitTable& t, std::size_t m) {
  detail::require(m >= 1 && m <= t.size(), "primitive_part: index out of range");
  detail::require(t.is_integral(), "primitive_part: orbit has non-integer values");
  auto& slot = t.stripped[m - 1];
  if (slot) return *slot;
  BigInt r = abs(t.values[m - 1].num());
  detail::require(sgn(r) != 0, "primitive_part: term is zero");
  for (std::size_t k = 1; k < m; ++k) {
    const BigInt& ak = t.values[k - 1].num();
    detail::require(sgn(ak) != 0, "primitive_part: earlier term is zero");
    BigInt g = gcd(r, ak);
    while (g != 1) {
      r /= g;
      g = gcd(r, g);
    }
  }
  for (std::size_t k = 1; k < m; ++k)
    detail::ensure(gcd(r, t.values[k - 1].num()) == 1,
                   "primitive_part: result shares a prime with an earlier term");
  detail::ensure(sgn(t.values[m - 1].num() % r) == 0, "primitive_part: result does not divide the term");
  slot = r;
  return *slot;
}

}  // namespace multdyn
