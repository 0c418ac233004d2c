#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "factor.hpp"
#include "polynomial.hpp"

namespace multdyn {

struct DivisibilityResult {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> violation;  // (m, n), 1-based, m | n but a_m does not divide a_n
};

struct RigidityViolation {
  std::uint64_t p;
  std::size_t first_index, index;  // 1-based terms with different nonzero valuations
  unsigned long first_valuation, valuation;
};

struct RigidityResult {
  bool rigid = true;
  std::map<std::uint64_t, unsigned long> exponents;  // s_p for every prime seen
  std::optional<RigidityViolation> violation;
};

/// a_m | a_n whenever m | n, over all index pairs in range.
inline DivisibilityResult check_divisibility_sequence(std::span<const BigInt> a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    detail::require(sgn(a[i]) != 0, "check_divisibility_sequence: term " + std::to_string(i + 1) + " is zero");
  for (std::size_t m = 1; m <= a.size(); ++m)
    for (std::size_t n = 2 * m; n <= a.size(); n += m)
      if (!mpz_divisible_p(a[n - 1].get_mpz_t(), a[m - 1].get_mpz_t())) return {false, std::make_pair(m, n)};
  return {};
}

namespace detail {

/// Folds the valuation v = v_p(a_index) into the rigidity state.
inline bool record_valuation(RigidityResult& r, std::map<std::uint64_t, std::size_t>& first, std::uint64_t p,
                             std::size_t index, unsigned long v) {
  if (v == 0) return true;
  auto [it, fresh] = r.exponents.emplace(p, v);
  if (fresh) {
    first[p] = index;
    return true;
  }
  if (it->second == v) return true;
  r.rigid = false;
  r.violation = RigidityViolation{p, first[p], index, it->second, v};
  return false;
}

}  // namespace detail

/// For every prime p <= prime_bound, v_p is the same on every term p divides.
inline RigidityResult check_rigid(std::span<const BigInt> a, std::uint64_t prime_bound) {
  for (std::size_t i = 0; i < a.size(); ++i)
    detail::require(sgn(a[i]) != 0, "check_rigid: term " + std::to_string(i + 1) + " is zero");
  RigidityResult r;
  std::map<std::uint64_t, std::size_t> first;
  for (std::uint32_t p : detail::cached_primes(prime_bound)) {
    if (p > prime_bound) break;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!mpz_divisible_ui_p(a[i].get_mpz_t(), p)) continue;
      BigInt rest = a[i];
      unsigned long v = remove_factor(rest, BigInt(static_cast<unsigned long>(p)));
      if (!detail::record_valuation(r, first, p, i + 1, v)) return r;
    }
  }
  return r;
}

namespace detail {

inline void require_integer_polynomial(const QPoly& f, const char* who) {
  for (const auto& c : f.coeffs()) require(c.is_integer(), std::string(who) + ": coefficients must be integers");
  require(f.degree() >= 1, std::string(who) + ": constant polynomial");
}

/// Whether any of f^1(x0) .. f^N(x0) is zero. Iterates exactly until the
/// value leaves the disc |v| <= R where R = 1 + sum |c_i| / |lead|, outside of
/// which |f(v)| > |v| so the orbit can never return to 0, or until a repeat.
inline std::optional<std::size_t> first_zero_term(const QPoly& f, const BigInt& x0, std::size_t N) {
  Rational R(1);
  for (int k = 0; k < f.degree(); ++k) R += f.coeff(static_cast<std::size_t>(k)).abs() / f.lead().abs();
  std::map<Rational, std::size_t> seen{{Rational(x0), 0}};
  Rational v(x0);
  for (std::size_t m = 1; m <= N; ++m) {
    v = f(v);
    if (v.is_zero()) return m;
    if (f.degree() >= 2 && v.abs() > R && v.abs() > Rational(1)) return std::nullopt;
    auto [it, fresh] = seen.emplace(v, m);
    if (!fresh) {
      // periodic from here on: zero appears iff it is on the cycle, and it is not
      return std::nullopt;
    }
  }
  return std::nullopt;
}

/// f^1(x0) .. f^N(x0) reduced modulo `mod`.
inline std::vector<BigInt> orbit_mod(const QPoly& f, const BigInt& x0, std::size_t N, const BigInt& mod) {
  std::vector<BigInt> c;
  for (const auto& q : f.coeffs()) {
    BigInt r = q.num() % mod;
    if (sgn(r) < 0) r += mod;
    c.push_back(r);
  }
  std::vector<BigInt> out;
  BigInt v = x0 % mod;
  if (sgn(v) < 0) v += mod;
  for (std::size_t m = 1; m <= N; ++m) {
    BigInt acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      acc = acc * v + *it;
      mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
    }
    v = acc;
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Divisibility check on the orbit of x0 under an integer polynomial without
/// forming the large terms: a_m | a_n iff f^n(x0) = 0 modulo a_m, and the
/// divisors a_m (m <= N/2) are computed exactly.
inline DivisibilityResult check_divisibility_orbit(const QPoly& f, const BigInt& x0, std::size_t N) {
  detail::require_integer_polynomial(f, "check_divisibility_orbit");
  if (auto z = detail::first_zero_term(f, x0, N))
    throw DomainError("check_divisibility_orbit: term " + std::to_string(*z) + " is zero");
  std::vector<BigInt> small;
  BigInt v = x0;
  for (std::size_t m = 1; m <= N / 2; ++m) {
    v = f(Rational(v)).num();
    small.push_back(v);
  }
  for (std::size_t m = 1; m <= N / 2; ++m) {
    BigInt mod = abs(small[m - 1]);
    if (mod == 1) continue;
    auto res = detail::orbit_mod(f, x0, N, mod);
    for (std::size_t n = 2 * m; n <= N; n += m)
      if (sgn(res[n - 1]) != 0) return {false, std::make_pair(m, n)};
  }
  return {};
}

/// Rigidity on the orbit of x0 under an integer polynomial, prime by prime:
/// the orbit is iterated modulo p^E, with E raised until every term that p
/// divides has valuation below E.
inline RigidityResult check_rigid_orbit(const QPoly& f, const BigInt& x0, std::size_t N, std::uint64_t prime_bound) {
  detail::require_integer_polynomial(f, "check_rigid_orbit");
  if (auto z = detail::first_zero_term(f, x0, N))
    throw DomainError("check_rigid_orbit: term " + std::to_string(*z) + " is zero");
  RigidityResult r;
  std::map<std::uint64_t, std::size_t> first;
  for (std::uint32_t p : detail::cached_primes(prime_bound)) {
    if (p > prime_bound) break;
    const BigInt P(static_cast<unsigned long>(p));
    auto base = detail::orbit_mod(f, x0, N, P);
    bool any = false;
    for (const auto& b : base) any = any || sgn(b) == 0;
    if (!any) continue;
    for (unsigned long E = 4;; E *= 2) {
      auto res = detail::orbit_mod(f, x0, N, pow(P, E));
      bool saturated = false;
      std::vector<unsigned long> vals;
      for (const auto& t : res) {
        if (sgn(t) == 0) {
          saturated = true;
          break;
        }
        BigInt rest = t;
        vals.push_back(remove_factor(rest, P));
      }
      if (saturated) continue;
      for (std::size_t i = 0; i < vals.size(); ++i)
        if (!detail::record_valuation(r, first, p, i + 1, vals[i])) return r;
      break;
    }
  }
  return r;
}

/// Product of the distinct primes dividing v; partial when factor_bounded
/// runs out of effort, with the unfactored cofactor reported.
struct SquarefreeKernel {
  bool complete = true;
  BigInt value = 1;       // product of distinct primes found
  BigInt unfactored = 1;  // remaining composite cofactor when partial
};

inline SquarefreeKernel largest_squarefree_factor(const BigInt& v, const FactorEffort& effort = {}) {
  detail::require(sgn(v) != 0, "largest_squarefree_factor: zero");
  auto fac = factor_bounded(v, effort);
  SquarefreeKernel out;
  for (const auto& pe : fac.primes) out.value *= pe.first;
  out.complete = fac.complete();
  out.unfactored = fac.cofactor;
  return out;
}

}  // namespace multdyn
