#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "squarefree.hpp"

namespace multdyn {

/// Reduced multiplicities m_i = m / gcd(m, e_i), grouped and sorted descending.
struct LeVequeProfile {
  long m = 0;
  std::vector<std::pair<long, std::size_t>> tuple;  // (m_i, number of roots)

  std::vector<long> expanded() const {
    std::vector<long> out;
    for (const auto& [mi, count] : tuple) out.insert(out.end(), count, mi);
    return out;
  }
  std::size_t roots() const {
    std::size_t n = 0;
    for (const auto& t : tuple) n += t.second;
    return n;
  }
};

/// Multiplicity -> number of distinct roots with that multiplicity.
using MultiplicityCounts = std::map<unsigned long, std::size_t>;

inline LeVequeProfile profile_from_counts(const MultiplicityCounts& counts, long m) {
  detail::require(m >= 2, "LeVeque exponent must be at least 2");
  std::map<long, std::size_t, std::greater<>> grouped;
  for (const auto& [e, count] : counts) grouped[m / std::gcd(m, static_cast<long>(e))] += count;
  LeVequeProfile p{m, {}};
  for (const auto& [mi, count] : grouped) p.tuple.emplace_back(mi, count);
  return p;
}

/// m_1 >= 3 and m_2 >= 2, or m_1 = m_2 = m_3 = 2.
inline bool satisfies_leveque(const LeVequeProfile& p) {
  auto v = p.expanded();
  if (v.size() >= 2 && v[0] >= 3 && v[1] >= 2) return true;
  return v.size() >= 3 && v[0] == 2 && v[1] == 2 && v[2] == 2;
}

template <class S>
MultiplicityCounts multiplicity_counts(const Polynomial<S>& f) {
  MultiplicityCounts counts;
  for (const auto& [g, e] : squarefree_decompose(f).parts) counts[e] += static_cast<std::size_t>(g.degree());
  return counts;
}

template <class S>
LeVequeProfile leveque_profile(const Polynomial<S>& f, long m) {
  detail::require(f.degree() >= 1, "leveque_profile: constant polynomial");
  return profile_from_counts(multiplicity_counts(f), m);
}

template <class S>
bool satisfies_leveque(const Polynomial<S>& f, long m) {
  return satisfies_leveque(leveque_profile(f, m));
}

/// f = c * X^s * p(X)^m with p monic, p(0) != 0.
template <class S>
struct ExceptionalForm {
  unsigned long s = 0;
  Polynomial<S> p;
  S c;
  long m = 0;
  std::optional<S> content_root;  // c^(1/m) when it exists in the working domain

  Polynomial<S> reconstruct() const {
    return Polynomial<S>::monomial(c, s) * p.pow(static_cast<unsigned long>(m));
  }
};

/// X^(-s) f where s is the multiplicity of the root 0.
template <class S>
Polynomial<S> strip_zero_root(const Polynomial<S>& f) {
  std::size_t s = f.low_order();
  return Polynomial<S>(std::vector<S>(f.coeffs().begin() + static_cast<std::ptrdiff_t>(s), f.coeffs().end()));
}

/// Present iff every multiplicity of a nonzero root is divisible by m. The
/// constant c is reported separately since it need not be an m-th power in
/// the working domain.
template <class S>
std::optional<ExceptionalForm<S>> exceptional_form(const Polynomial<S>& f, long m) {
  detail::require(f.degree() >= 1, "exceptional_form: constant polynomial");
  detail::require(m >= 2, "exceptional_form: exponent must be at least 2");
  ExceptionalForm<S> out;
  out.s = f.low_order();
  out.m = m;
  auto dec = squarefree_decompose(strip_zero_root(f));
  Polynomial<S> p = Polynomial<S>::constant(S(1));
  for (const auto& [g, e] : dec.parts) {
    if (e % static_cast<unsigned long>(m) != 0) return std::nullopt;
    p *= g.pow(e / static_cast<unsigned long>(m));
  }
  out.p = std::move(p);
  out.c = dec.content;
  out.content_root = ScalarTraits<S>::root(out.c, static_cast<unsigned long>(m));
  detail::ensure(out.reconstruct() == f, "exceptional_form: reconstruction mismatch");
  return out;
}

enum class LeVequeCase { ExceptionalForm, SquareIterateExceptional, LeVequeIterate };

inline const char* to_string(LeVequeCase c) {
  switch (c) {
    case LeVequeCase::ExceptionalForm: return "ExceptionalForm";
    case LeVequeCase::SquareIterateExceptional: return "SquareIterateExceptional";
    case LeVequeCase::LeVequeIterate: return "LeVequeIterate";
  }
  return "?";
}

template <class S>
struct Classification {
  LeVequeCase kind;
  std::optional<ExceptionalForm<S>> witness;  // form of f, or of f^2
  std::optional<Polynomial<S>> square_iterate;
  int j = 0;
  std::optional<LeVequeProfile> profile;  // profile of (f^j, m)
};

inline constexpr int kLeVequeIterateBound = 6;

namespace detail {

/// Squarefree parts of f^j carried forward through f^(j+1) = f^j o f: if
/// f^j = c prod g^e with the g squarefree and coprime, then the g o f are
/// coprime too and each contributes sqf(g o f) with multiplicities scaled by e.
template <class S>
class IterateMultiplicities {
 public:
  IterateMultiplicities(const Polynomial<S>& f, long degree_cap) : f_(f), cap_(degree_cap) {
    for (auto& [g, e] : squarefree_decompose(f).parts) parts_.emplace_back(std::move(g), e);
    degree_ = f.degree();
  }

  void advance() {
    if (degree_ > cap_ / f_.degree())
      throw BudgetExceeded("classifier: iterate degree would exceed " + std::to_string(cap_));
    std::vector<std::pair<Polynomial<S>, unsigned long>> next;
    for (const auto& [g, e] : parts_)
      for (auto& [h, e2] : squarefree_decompose(compose(g, f_)).parts) next.emplace_back(std::move(h), e * e2);
    parts_ = std::move(next);
    degree_ *= f_.degree();
  }

  MultiplicityCounts counts() const {
    MultiplicityCounts c;
    for (const auto& [g, e] : parts_) c[e] += static_cast<std::size_t>(g.degree());
    return c;
  }

 private:
  Polynomial<S> f_;
  long cap_;
  long degree_ = 0;
  std::vector<std::pair<Polynomial<S>, unsigned long>> parts_;
};

}  // namespace detail

/// Trichotomy for f neither linear nor a monomial: f is X^s p^m, or m = 2
/// and f^2 is, or (f^j, m) satisfies the LeVeque condition for some j <= 6.
/// Cases are tried in that order; j is the smallest found.
template <class S>
Classification<S> classify_leveque_case(const Polynomial<S>& f, long m, long degree_cap = 1'000'000) {
  detail::require(f.degree() >= 2, "classify: linear or constant polynomial");
  detail::require(!f.is_monomial(), "classify: monomial");
  detail::require(m >= 2, "classify: exponent must be at least 2");
  if (auto form = exceptional_form(f, m)) return {LeVequeCase::ExceptionalForm, std::move(form), std::nullopt, 0, std::nullopt};
  if (m == 2) {
    auto f2 = iterate(f, 2);
    if (auto form = exceptional_form(f2, 2))
      return {LeVequeCase::SquareIterateExceptional, std::move(form), std::move(f2), 2, std::nullopt};
  }
  detail::IterateMultiplicities<S> it(f, degree_cap);
  for (int j = 1;; ++j) {
    auto profile = profile_from_counts(it.counts(), m);
    if (satisfies_leveque(profile)) return {LeVequeCase::LeVequeIterate, std::nullopt, std::nullopt, j, std::move(profile)};
    detail::ensure(j < kLeVequeIterateBound, "classify: no LeVeque iterate with j <= 6");
    it.advance();
  }
}

/// E(f) = {1} union {l >= 2 : (f, l) fails the LeVeque condition}. Beyond
/// l = 2 max e every m_i = l / gcd(l, e_i) >= l / e_i > 2, so with at least
/// two distinct roots the condition holds there.
template <class S>
std::set<long> exceptional_exponents(const Polynomial<S>& f) {
  detail::require(!f.is_zero() && f.degree() >= 1, "exceptional_exponents: constant polynomial");
  auto counts = multiplicity_counts(f);
  std::size_t roots = 0;
  for (const auto& c : counts) roots += c.second;
  detail::require(roots >= 2, "exceptional_exponents: fewer than two distinct roots");
  const long bound = 2 * static_cast<long>(counts.rbegin()->first);
  std::set<long> out{1};
  for (long l = 2; l <= bound; ++l)
    if (!satisfies_leveque(profile_from_counts(counts, l))) out.insert(l);
  for (long l = bound + 1; l <= bound + 2; ++l)
    detail::ensure(satisfies_leveque(profile_from_counts(counts, l)), "exceptional_exponents: search bound too small");
  return out;
}

/// E(f, g) = {(k, l) : k in E(g), l in E(f), gcd(k, l) = 1}.
inline std::vector<std::pair<long, long>> exceptional_pairs(const std::set<long>& ef, const std::set<long>& eg) {
  std::vector<std::pair<long, long>> out;
  for (long k : eg)
    for (long l : ef)
      if (std::gcd(k, l) == 1) out.emplace_back(k, l);
  return out;
}

template <class S>
std::vector<std::pair<long, long>> exceptional_pairs(const Polynomial<S>& f, const Polynomial<S>& g) {
  return exceptional_pairs(exceptional_exponents(f), exceptional_exponents(g));
}

}  // namespace multdyn
