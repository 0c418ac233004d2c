#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "coprime_basis.hpp"
#include "errors.hpp"
#include "int_matrix.hpp"
#include "multdep.hpp"
#include "orbit.hpp"
#include "poly_io.hpp"

namespace multdyn {

struct CountOptions {
  unsigned threads = 1;
  bool rank_filter = false;  // drop tuples with a coordinate equal to +-1
  unsigned long long budget = 10'000'000;  // n * N^n tuple-coordinate visits
  unsigned long bit_cap = kDefaultBitCap;
};

struct CountCertificate {
  std::vector<std::size_t> indices;  // (m_1, ..., m_n)
  MultRelation relation;
};

/// M_{F,x}(N) with its certificates and the normalized ratios
/// count / N^(n-1) and count * log N / N^n.
struct CountReport {
  std::size_t N = 0, n = 0;
  std::size_t count = 0;
  std::vector<CountCertificate> certificates;
  double ratio_lower = 0, ratio_upper = 0;
};

namespace detail {

inline unsigned long long tuple_cost(std::size_t n, std::size_t N) {
  unsigned long long c = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (c > ~0ull / N) return ~0ull;
    c *= N;
  }
  return c;
}

}  // namespace detail

/// Exact count of (m_1..m_n) in [1, N]^n with (f_1^m_1(x_1), ..., f_n^m_n(x_n))
/// multiplicatively dependent. All orbit values share one coprime basis, so
/// no orbit value is ever factored; the kernel of the selected exponent rows
/// decides each tuple.
inline CountReport count_multdep(const std::vector<QPoly>& F, const std::vector<Rational>& x, std::size_t N,
                                 const CountOptions& opt = {}) {
  using detail::require;
  const std::size_t n = F.size();
  require(n >= 1 && x.size() == n, "count_multdep: need one start point per polynomial");
  require(N >= 1, "count_multdep: N must be positive");
  for (const auto& f : F) {
    require(f.degree() >= 2, "count_multdep: linear or constant polynomial " + to_string(f));
    require(!f.is_monomial(), "count_multdep: monomial " + to_string(f));
  }
  if (detail::tuple_cost(n, N) > opt.budget) {
    std::size_t ok = 0;
    while (detail::tuple_cost(n, ok + 1) <= opt.budget) ++ok;
    throw BudgetExceeded("count_multdep: n * N^n exceeds budget " + std::to_string(opt.budget),
                         static_cast<long>(ok));
  }

  std::vector<OrbitTable> tables;
  for (std::size_t i = 0; i < n; ++i) {
    try {
      tables.push_back(orbit(F[i], x[i], N, opt.bit_cap));
    } catch (const BudgetExceeded& e) {
      throw BudgetExceeded(std::string("count_multdep: ") + e.what(), e.completed());
    }
  }

  // one coprime basis for every numerator and denominator in every orbit
  std::vector<BigInt> parts;
  for (const auto& t : tables)
    for (const auto& v : t.values)
      if (!v.is_zero()) {
        parts.push_back(v.num());
        parts.push_back(v.den());
      }
  CoprimeBasis basis = factor_refine(std::span<const BigInt>(parts));
  std::vector<std::vector<std::optional<std::vector<long>>>> rows(n);
  {
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& v : tables[i].values) {
        if (v.is_zero()) {
          rows[i].emplace_back(std::nullopt);
          continue;
        }
        std::vector<long> e(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) e[j] = basis.exponents[r][j] - basis.exponents[r + 1][j];
        rows[i].emplace_back(std::move(e));
        r += 2;
      }
  }

  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= N;
  std::vector<std::optional<MultRelation>> result(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (std::size_t t = next++; t < total; t = next++) {
        std::vector<std::size_t> idx(n);
        std::size_t rest = t;
        for (std::size_t k = n; k-- > 0;) {
          idx[k] = rest % N + 1;
          rest /= N;
        }
        std::vector<Rational> nu;
        bool undefined = false, has_unit = false;
        for (std::size_t k = 0; k < n; ++k) {
          const Rational& v = tables[k].values[idx[k] - 1];
          undefined = undefined || v.is_zero();
          has_unit = has_unit || v.is_unit_magnitude();
          nu.push_back(v);
        }
        if (undefined || (opt.rank_filter && has_unit)) continue;
        IntegerMatrix m(n, basis.size());
        std::vector<bool> negative;
        for (std::size_t k = 0; k < n; ++k) {
          const auto& row = *rows[k][idx[k] - 1];
          for (std::size_t j = 0; j < basis.size(); ++j) m(k, j) = row[j];
          negative.push_back(nu[k].sign() < 0);
        }
        auto kernel = left_kernel(m);
        if (kernel.empty()) continue;
        auto rel = detail::certificate(kernel, negative);
        detail::ensure(verify_relation(nu, rel), "count_multdep: certificate does not verify");
        result[t] = std::move(rel);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = total;
    }
  };
  const unsigned threads = std::max(1u, opt.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  CountReport rep;
  rep.N = N;
  rep.n = n;
  for (std::size_t t = 0; t < total; ++t) {
    if (!result[t]) continue;
    std::vector<std::size_t> idx(n);
    std::size_t rest = t;
    for (std::size_t k = n; k-- > 0;) {
      idx[k] = rest % N + 1;
      rest /= N;
    }
    rep.certificates.push_back({std::move(idx), std::move(*result[t])});
  }
  rep.count = rep.certificates.size();
  const double Nd = static_cast<double>(N), nd = static_cast<double>(n);
  rep.ratio_lower = static_cast<double>(rep.count) / std::pow(Nd, nd - 1);
  rep.ratio_upper = static_cast<double>(rep.count) * std::log(Nd) / std::pow(Nd, nd);
  return rep;
}

}  // namespace multdyn
