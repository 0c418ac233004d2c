#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coprime_basis.hpp"
#include "errors.hpp"
#include "gaussian.hpp"
#include "int_matrix.hpp"
#include "rational.hpp"

namespace multdyn {

enum class DependenceStatus { Dependent, Independent, Undefined };

inline const char* to_string(DependenceStatus s) {
  switch (s) {
    case DependenceStatus::Dependent: return "dependent";
    case DependenceStatus::Independent: return "independent";
    case DependenceStatus::Undefined: return "undefined";
  }
  return "?";
}

/// Nonzero k with prod nu_i^k_i = 1.
struct MultRelation {
  std::vector<BigInt> k;
};

struct DependenceVerdict {
  DependenceStatus status = DependenceStatus::Undefined;
  std::optional<MultRelation> relation;
  std::optional<int> rank;
};

inline constexpr std::size_t kMaxRankTuple = 12;

/// Exponent rows of a tuple of nonzero rationals over one coprime basis of
/// all numerators and denominators. Row i is the exponent vector of |nu_i|.
struct ExponentData {
  IntegerMatrix rows;
  std::vector<bool> negative;
};

inline ExponentData exponent_data(std::span<const Rational> nu) {
  std::vector<BigInt> parts;
  parts.reserve(2 * nu.size());
  for (const auto& v : nu) {
    detail::require(!v.is_zero(), "exponent data of a zero coordinate");
    parts.push_back(v.num());
    parts.push_back(v.den());
  }
  CoprimeBasis basis = factor_refine(std::span<const BigInt>(parts));
  ExponentData out{IntegerMatrix(nu.size(), basis.size()), {}};
  for (std::size_t i = 0; i < nu.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j)
      out.rows(i, j) = basis.exponents[2 * i][j] - basis.exponents[2 * i + 1][j];
    out.negative.push_back(nu[i].sign() < 0);
  }
  return out;
}

/// prod nu_i^k_i, exactly.
inline Rational evaluate_relation(std::span<const Rational> nu, const std::vector<BigInt>& k) {
  Rational acc(1);
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (sgn(k[i]) == 0) continue;
    detail::require(k[i].fits_slong_p(), "relation exponent out of range");
    acc *= nu[i].pow(k[i].get_si());
  }
  return acc;
}

inline bool verify_relation(std::span<const Rational> nu, const MultRelation& r) {
  if (r.k.size() != nu.size() || is_zero_vector(r.k)) return false;
  return evaluate_relation(nu, r.k) == Rational(1);
}

namespace detail {

/// Canonical certificate from an HNF kernel basis: its first vector (leading
/// entry already positive), doubled when the sign parity would leave -1.
inline MultRelation certificate(const std::vector<IntVector>& kernel, const std::vector<bool>& negative) {
  MultRelation r{kernel.front()};
  BigInt parity = 0;
  for (std::size_t i = 0; i < r.k.size(); ++i)
    if (negative[i]) parity += r.k[i];
  if (mpz_odd_p(parity.get_mpz_t()))
    for (auto& v : r.k) v *= 2;
  return r;
}

inline bool rows_dependent(const IntegerMatrix& rows, const std::vector<std::size_t>& idx) {
  return !left_kernel(rows.select_rows(idx)).empty();
}

/// Smallest r with some dependent (r + 1)-subset, else n. Assumes no
/// coordinate is a root of unity.
inline int rank_from_rows(const IntegerMatrix& rows) {
  const std::size_t n = rows.rows();
  require(n <= kMaxRankTuple, "mult_rank: tuple longer than " + std::to_string(kMaxRankTuple));
  for (std::size_t size = 1; size <= n; ++size) {
    // subsets of the given size in lexicographic order
    std::vector<std::size_t> idx(size);
    for (std::size_t j = 0; j < size; ++j) idx[j] = j;
    while (true) {
      if (rows_dependent(rows, idx)) return static_cast<int>(size) - 1;
      std::size_t p = size;
      while (p > 0 && idx[p - 1] == n - size + p - 1) --p;
      if (p == 0) break;
      ++idx[p - 1];
      for (std::size_t j = p; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return static_cast<int>(n);
}

inline bool has_rational_unit(std::span<const Rational> nu) {
  for (const auto& v : nu)
    if (ScalarTraits<Rational>::is_root_of_unity(v)) return true;
  return false;
}

}  // namespace detail

/// Dependence verdict with a verified certificate. Rank is filled in when the
/// tuple is short enough for subset enumeration and with_rank is set.
inline DependenceVerdict test_dependence(std::span<const Rational> nu, bool with_rank = true) {
  DependenceVerdict out;
  for (const auto& v : nu)
    if (v.is_zero()) return out;
  if (nu.empty()) {
    out.status = DependenceStatus::Independent;
    if (with_rank) out.rank = 0;
    return out;
  }
  ExponentData data = exponent_data(nu);
  auto kernel = left_kernel(data.rows);
  if (kernel.empty()) {
    out.status = DependenceStatus::Independent;
  } else {
    out.status = DependenceStatus::Dependent;
    out.relation = detail::certificate(kernel, data.negative);
    detail::ensure(verify_relation(nu, *out.relation), "test_dependence: certificate does not verify");
  }
  if (with_rank && nu.size() <= kMaxRankTuple)
    out.rank = detail::has_rational_unit(nu) ? 0 : detail::rank_from_rows(data.rows);
  return out;
}

inline DependenceVerdict test_dependence(std::initializer_list<Rational> nu) {
  std::vector<Rational> v(nu);
  return test_dependence(std::span<const Rational>(v));
}

/// Multiplicative rank: 0 if a coordinate is +-1, otherwise the largest r such
/// that every r coordinates are independent.
inline int mult_rank(std::span<const Rational> nu) {
  for (const auto& v : nu)
    detail::require(!v.is_zero(), "mult_rank: zero coordinate (rank undefined)");
  detail::require(nu.size() <= kMaxRankTuple, "mult_rank: tuple longer than " + std::to_string(kMaxRankTuple));
  if (detail::has_rational_unit(nu)) return 0;
  if (nu.empty()) return 0;
  return detail::rank_from_rows(exponent_data(nu).rows);
}

inline int mult_rank(std::initializer_list<Rational> nu) {
  std::vector<Rational> v(nu);
  return mult_rank(std::span<const Rational>(v));
}

/// Q(i) variant. Rank 0 detection covers +-1 and +-i; otherwise every
/// coordinate must be real and the rational rank is returned.
inline int mult_rank(std::span<const GaussianRational> nu) {
  std::vector<Rational> real;
  for (const auto& v : nu) {
    detail::require(!v.is_zero(), "mult_rank: zero coordinate (rank undefined)");
    if (ScalarTraits<GaussianRational>::is_root_of_unity(v)) return 0;
  }
  for (const auto& v : nu) {
    detail::require(v.is_real(), "mult_rank over Q(i): only real coordinates are supported beyond roots of unity");
    real.push_back(v.re());
  }
  return mult_rank(std::span<const Rational>(real));
}

/// z^k = zeta * w^ell with k > 0, gcd(k, |ell|) = 1, zeta in {+1, -1}.
struct RankOnePair {
  long k;
  long ell;
  int zeta;
  bool mixed_sign;  // ell < 0: z^k w^|ell| = zeta
};

inline std::optional<RankOnePair> is_rank_one_pair(const Rational& z, const Rational& w) {
  detail::require(!z.is_zero() && !w.is_zero(), "is_rank_one_pair: zero argument");
  detail::require(!z.is_unit_magnitude() && !w.is_unit_magnitude(),
                  "is_rank_one_pair: arguments must not be roots of unity");
  std::vector<Rational> nu{z, w};
  auto kernel = left_kernel(exponent_data(nu).rows);
  if (kernel.empty()) return std::nullopt;
  detail::ensure(kernel.size() == 1, "is_rank_one_pair: kernel of rank two");
  const auto& v = kernel.front();
  detail::require(v[0].fits_slong_p() && v[1].fits_slong_p(), "is_rank_one_pair: exponents out of range");
  RankOnePair out{v[0].get_si(), -v[1].get_si(), 1, false};
  out.mixed_sign = out.ell < 0;
  Rational ratio = z.pow(out.k) / w.pow(out.ell);
  detail::ensure(ratio == 1 || ratio == -1, "is_rank_one_pair: relation does not verify");
  out.zeta = ratio.sign();
  return out;
}

}  // namespace multdyn
