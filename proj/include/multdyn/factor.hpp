#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"

namespace multdyn {

struct FactorEffort {
  std::uint64_t trial_bound = 1'000'000;
  std::uint64_t rho_iterations = 200'000;  // per rho attempt
  unsigned rho_attempts = 8;               // distinct polynomial constants tried
};

/// Prime factorization, possibly partial. When `cofactor` != 1 the effort
/// ran out and `cofactor` is composite, unfactored, and coprime to nothing in
/// particular; sign * prod p^e * cofactor always equals the input.
struct Factorization {
  int sign = 1;
  std::vector<std::pair<BigInt, unsigned long>> primes;  // ascending, distinct
  BigInt cofactor = 1;

  bool complete() const { return cofactor == 1; }

  BigInt value() const {
    BigInt v = cofactor;
    for (const auto& [p, e] : primes) v *= pow(p, e);
    return sign < 0 ? BigInt(-v) : v;
  }
};

/// Primes <= limit by the sieve of Eratosthenes.
inline std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

namespace detail {

inline const std::vector<std::uint32_t>& cached_primes(std::uint64_t limit) {
  static const std::vector<std::uint32_t> table = primes_up_to(1'000'000);
  if (limit <= 1'000'000) return table;
  static const std::vector<std::uint32_t> big = primes_up_to(10'000'000);
  detail::require(limit <= 10'000'000, "trial division bound above 1e7 is not supported");
  return big;
}

__extension__ using u128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  for (; e; e >>= 1) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit inputs (bases = first 12 primes).
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : bases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : bases) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// Exact below 2^64; above that GMP's BPSW plus 40 Miller-Rabin rounds.
inline bool is_probable_prime(const BigInt& n) {
  if (sgn(n) <= 0) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

/// Brent's variant of Pollard rho with x -> x^2 + c. Returns a nontrivial
/// divisor of composite n, or nothing if the iteration cap is hit.
inline std::optional<BigInt> pollard_rho(const BigInt& n, unsigned long c, std::uint64_t max_iterations) {
  if (n % 2 == 0) return BigInt(2);
  BigInt y = 2, x, ys, q = 1, g = 1;
  const std::uint64_t block = 128;
  std::uint64_t r = 1, iterations = 0;
  auto step = [&](BigInt& v) {
    v = v * v + c;
    v %= n;
  };
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    for (std::uint64_t k = 0; k < r && g == 1; k += block) {
      ys = y;
      for (std::uint64_t i = 0; i < std::min(block, r - k); ++i) {
        step(y);
        q = q * abs(BigInt(x - y)) % n;
      }
      g = gcd(q, n);
      iterations += std::min(block, r - k);
      if (iterations > max_iterations) return std::nullopt;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      step(ys);
      g = gcd(BigInt(abs(BigInt(x - ys))), n);
    } while (g == 1);
  }
  if (g == n) return std::nullopt;
  return g;
}

/// Trial division up to effort.trial_bound, then Pollard rho with fixed
/// constants c = 1, 2, ... on whatever composite cofactors remain. Every
/// reported prime passes is_probable_prime.
inline Factorization factor_bounded(const BigInt& n, const FactorEffort& effort = {}) {
  detail::require(sgn(n) != 0, "factor_bounded: zero has no factorization");
  Factorization out;
  out.sign = sgn(n) < 0 ? -1 : 1;
  BigInt rest = abs(n);
  std::map<BigInt, unsigned long> found;

  for (std::uint32_t p : detail::cached_primes(effort.trial_bound)) {
    if (p > effort.trial_bound) break;
    if (rest == 1) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      BigInt bp(static_cast<unsigned long>(p));
      found[bp] += remove_factor(rest, bp);
    }
    if (BigInt(static_cast<unsigned long>(p)) * p > rest) {
      if (rest != 1) {
        found[rest] += 1;
        rest = 1;
      }
      break;
    }
  }

  std::vector<BigInt> work;
  if (rest != 1) work.push_back(rest);
  BigInt unfactored = 1;
  while (!work.empty()) {
    BigInt m = std::move(work.back());
    work.pop_back();
    if (m == 1) continue;
    if (is_probable_prime(m)) {
      found[m] += 1;
      continue;
    }
    if (auto r = exact_root(m, 2)) {
      work.push_back(*r);
      work.push_back(*r);
      continue;
    }
    std::optional<BigInt> d;
    for (unsigned c = 1; c <= effort.rho_attempts && !d; ++c) d = pollard_rho(m, c, effort.rho_iterations);
    if (!d) {
      unfactored *= m;
      continue;
    }
    work.push_back(*d);
    work.push_back(m / *d);
  }
  for (auto& [p, e] : found) out.primes.emplace_back(p, e);
  out.cofactor = unfactored;
  detail::ensure(out.value() == n, "factor_bounded: reconstruction failed");
  return out;
}

}  // namespace multdyn
