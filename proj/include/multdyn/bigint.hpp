#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace multdyn {

using BigInt = mpz_class;

inline std::size_t bit_length(const BigInt& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline BigInt pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  BigInt v;
  if (s.empty() || v.set_str(s, 10) != 0)
    throw DomainError("not an integer: '" + std::string(text) + "'");
  return v;
}

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

/// r with r^k == v, if v is a perfect k-th power (v may be negative for odd k).
inline std::optional<BigInt> exact_root(const BigInt& v, unsigned long k) {
  if (k == 0) return std::nullopt;
  if (sgn(v) < 0) {
    if (k % 2 == 0) return std::nullopt;
    auto r = exact_root(BigInt(-v), k);
    if (!r) return std::nullopt;
    return BigInt(-*r);
  }
  BigInt r;
  if (mpz_root(r.get_mpz_t(), v.get_mpz_t(), k) == 0) return std::nullopt;
  return r;
}

inline BigInt isqrt(const BigInt& v) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

inline bool fits_u64(const BigInt& v) {
  return sgn(v) >= 0 && bit_length(v) <= 64;
}

inline std::uint64_t to_u64(const BigInt& v) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

/// p-adic valuation of v != 0; divides it out of v.
inline unsigned long remove_factor(BigInt& v, const BigInt& p) {
  return mpz_remove(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
}

}  // namespace multdyn
