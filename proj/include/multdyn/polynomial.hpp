#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gaussian.hpp"
#include "rational.hpp"

namespace multdyn {

namespace detail {

// Kronecker substitution: pack integer coefficient vectors into one big
// integer at 2^slot, multiply once with GMP, unpack balanced digits.

inline void or_bits(std::vector<mp_limb_t>& limbs, std::size_t bit_offset, const BigInt& mag) {
  const std::size_t n = mpz_size(mag.get_mpz_t());
  const std::size_t word = bit_offset / GMP_NUMB_BITS;
  const unsigned shift = static_cast<unsigned>(bit_offset % GMP_NUMB_BITS);
  for (std::size_t k = 0; k < n; ++k) {
    mp_limb_t limb = mpz_getlimbn(mag.get_mpz_t(), static_cast<mp_size_t>(k));
    limbs[word + k] |= limb << shift;
    if (shift != 0) limbs[word + k + 1] |= limb >> (GMP_NUMB_BITS - shift);
  }
}

inline BigInt pack(const std::vector<BigInt>& coeffs, std::size_t slot) {
  const std::size_t nlimbs = (coeffs.size() * slot) / GMP_NUMB_BITS + 2;
  std::vector<mp_limb_t> pos(nlimbs, 0), neg(nlimbs, 0);
  bool any_neg = false;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    int s = sgn(coeffs[i]);
    if (s > 0) or_bits(pos, i * slot, coeffs[i]);
    if (s < 0) {
      or_bits(neg, i * slot, BigInt(-coeffs[i]));
      any_neg = true;
    }
  }
  BigInt p, q;
  mpz_import(p.get_mpz_t(), nlimbs, -1, sizeof(mp_limb_t), 0, 0, pos.data());
  if (!any_neg) return p;
  mpz_import(q.get_mpz_t(), nlimbs, -1, sizeof(mp_limb_t), 0, 0, neg.data());
  return p - q;
}

inline std::vector<BigInt> unpack(const BigInt& value, std::size_t count, std::size_t slot) {
  const int s = sgn(value);
  const std::size_t n = mpz_size(value.get_mpz_t());
  auto limb_at = [&](std::size_t k) -> mp_limb_t {
    return k < n ? mpz_getlimbn(value.get_mpz_t(), static_cast<mp_size_t>(k)) : 0;
  };
  std::vector<BigInt> out(count);
  std::vector<mp_limb_t> buf;
  BigInt half = BigInt(1) << static_cast<unsigned long>(slot - 1);
  BigInt full = BigInt(1) << static_cast<unsigned long>(slot);
  BigInt carry = 0, chunk;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t start = i * slot;
    const std::size_t word = start / GMP_NUMB_BITS;
    const std::size_t offset = start % GMP_NUMB_BITS;
    const std::size_t words = (offset + slot + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
    buf.assign(words, 0);
    for (std::size_t k = 0; k < words; ++k) buf[k] = limb_at(word + k);
    mpz_import(chunk.get_mpz_t(), words, -1, sizeof(mp_limb_t), 0, 0, buf.data());
    chunk >>= static_cast<unsigned long>(offset);
    mpz_fdiv_r_2exp(chunk.get_mpz_t(), chunk.get_mpz_t(), slot);
    chunk += carry;
    if (chunk >= half) {
      chunk -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    out[i] = s < 0 ? BigInt(-chunk) : chunk;
  }
  return out;
}

inline std::vector<BigInt> kronecker_multiply(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t ba = 0, bb = 0;
  for (const auto& x : a) ba = std::max(ba, bit_length(x));
  for (const auto& x : b) bb = std::max(bb, bit_length(x));
  if (ba == 0 || bb == 0) return std::vector<BigInt>(a.size() + b.size() - 1);
  const std::size_t slot = ba + bb + bit_length(BigInt(static_cast<unsigned long>(std::min(a.size(), b.size())))) + 2;
  BigInt prod = pack(a, slot) * pack(b, slot);
  return unpack(prod, a.size() + b.size() - 1, slot);
}

/// Common denominator L and integer numerators c_i * L.
inline std::pair<std::vector<BigInt>, BigInt> clear_denominators(const std::vector<Rational>& v) {
  BigInt l = 1;
  for (const auto& c : v) l = lcm(l, c.den());
  std::vector<BigInt> ints;
  ints.reserve(v.size());
  for (const auto& c : v) ints.push_back(c.num() * (l / c.den()));
  return {std::move(ints), l};
}

inline std::vector<Rational> multiply_coeffs(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  if (a.size() * b.size() <= 64) {
    std::vector<Rational> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  }
  auto [ia, la] = clear_denominators(a);
  auto [ib, lb] = clear_denominators(b);
  auto prod = kronecker_multiply(ia, ib);
  BigInt den = la * lb;
  std::vector<Rational> out;
  out.reserve(prod.size());
  for (auto& c : prod) out.emplace_back(c, den);
  return out;
}

inline std::vector<GaussianRational> multiply_coeffs(const std::vector<GaussianRational>& a,
                                                     const std::vector<GaussianRational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> ar, ai, br, bi;
  for (const auto& c : a) {
    ar.push_back(c.re());
    ai.push_back(c.im());
  }
  for (const auto& c : b) {
    br.push_back(c.re());
    bi.push_back(c.im());
  }
  auto rr = multiply_coeffs(ar, br), ii = multiply_coeffs(ai, bi);
  auto ri = multiply_coeffs(ar, bi), ir = multiply_coeffs(ai, br);
  std::vector<GaussianRational> out(a.size() + b.size() - 1);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = GaussianRational(rr[k] - ii[k], ri[k] + ir[k]);
  return out;
}

}  // namespace detail

/// Dense univariate polynomial over S (Rational for Q, GaussianRational for
/// Q(i)). coeffs()[k] is the coefficient of X^k; trailing zeros are trimmed
/// so the zero polynomial has no coefficients.
template <class S>
class Polynomial {
 public:
  using Scalar = S;

  Polynomial() = default;
  explicit Polynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }
  static Polynomial constant(const S& c) { return Polynomial(std::vector<S>{c}); }
  static Polynomial x() { return monomial(S(1), 1); }
  static Polynomial monomial(const S& c, std::size_t k) {
    std::vector<S> v(k + 1);
    v[k] = c;
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<S>& coeffs() const { return c_; }
  S coeff(std::size_t k) const { return k < c_.size() ? c_[k] : S(0); }
  const S& lead() const {
    detail::require(!c_.empty(), "leading coefficient of the zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back() == S(1); }

  /// Nonzero and of the form a*X^d (constants included).
  bool is_monomial() const {
    return !c_.empty() && std::count_if(c_.begin(), c_.end(), [](const S& v) { return !v.is_zero(); }) == 1;
  }

  /// Multiplicity of 0 as a root.
  std::size_t low_order() const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k].is_zero()) ++k;
    return k;
  }

  S operator()(const S& x) const {
    S acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc;
  }

  Polynomial monic() const {
    if (is_zero() || is_monic()) return *this;
    return *this / lead();
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<S> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * S(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  /// p(X^k): coefficients spread out.
  Polynomial inflate(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<S> v((c_.size() - 1) * k + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
    return Polynomial(std::move(v));
  }

  Polynomial pow(unsigned long e) const {
    Polynomial result = constant(S(1)), base = *this;
    for (; e; e >>= 1) {
      if (e & 1) result *= base;
      if (e > 1) base *= base;
    }
    return result;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) {
    c_ = detail::multiply_coeffs(c_, o.c_);
    trim();
    return *this;
  }
  Polynomial& operator*=(const S& s) {
    if (s.is_zero()) {
      c_.clear();
      return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
  }
  Polynomial& operator/=(const S& s) {
    detail::require(!s.is_zero(), "polynomial division by zero scalar");
    for (auto& v : c_) v /= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const S& s) { return a *= s; }
  friend Polynomial operator*(const S& s, Polynomial a) { return a *= s; }
  friend Polynomial operator/(Polynomial a, const S& s) { return a /= s; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<S> c_;
};

using QPoly = Polynomial<Rational>;
using QiPoly = Polynomial<GaussianRational>;

/// Euclidean division a = q*b + r with deg r < deg b.
template <class S>
std::pair<Polynomial<S>, Polynomial<S>> divmod(const Polynomial<S>& a, const Polynomial<S>& b) {
  detail::require(!b.is_zero(), "polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial<S>(), a};
  std::vector<S> rem = a.coeffs();
  std::vector<S> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const auto& bc = b.coeffs();
  const S inv_lead = S(1) / b.lead();
  for (std::size_t k = quot.size(); k-- > 0;) {
    S q = rem[k + bc.size() - 1] * inv_lead;
    if (q.is_zero()) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) rem[k + j] -= q * bc[j];
    quot[k] = std::move(q);
  }
  rem.resize(bc.size() - 1);
  return {Polynomial<S>(std::move(quot)), Polynomial<S>(std::move(rem))};
}

/// Exact quotient; throws if b does not divide a.
template <class S>
Polynomial<S> exact_divide(const Polynomial<S>& a, const Polynomial<S>& b) {
  auto [q, r] = divmod(a, b);
  detail::ensure(r.is_zero(), "exact_divide: nonzero remainder");
  return q;
}

/// Monic gcd (zero only when both inputs are zero).
template <class S>
Polynomial<S> gcd(Polynomial<S> a, Polynomial<S> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

/// (f o g)(X) = f(g(X)), Horner in g.
template <class S>
Polynomial<S> compose(const Polynomial<S>& f, const Polynomial<S>& g) {
  if (f.is_zero()) return {};
  // Pure powers of X compose by spreading coefficients.
  if (g.is_monomial() && g.degree() >= 1 && g.lead() == S(1)) return f.inflate(static_cast<std::size_t>(g.degree()));
  Polynomial<S> acc = Polynomial<S>::constant(f.lead());
  const auto& fc = f.coeffs();
  for (std::size_t k = fc.size() - 1; k-- > 0;) {
    acc *= g;
    acc += Polynomial<S>::constant(fc[k]);
  }
  return acc;
}

/// n-fold composition f o ... o f, n >= 1.
template <class S>
Polynomial<S> iterate(const Polynomial<S>& f, unsigned n) {
  detail::require(n >= 1, "iterate: n must be at least 1");
  Polynomial<S> acc = f;
  for (unsigned k = 1; k < n; ++k) acc = compose(f, acc);
  return acc;
}

/// alpha * f(X / alpha).
template <class S>
Polynomial<S> twist(const Polynomial<S>& f, const S& alpha) {
  detail::require(!alpha.is_zero(), "twist: alpha must be nonzero");
  std::vector<S> c = f.coeffs();
  S inv = S(1) / alpha;
  S factor = alpha;  // alpha^(1-k) for k = 0
  for (auto& v : c) {
    v *= factor;
    factor *= inv;
  }
  return Polynomial<S>(std::move(c));
}

inline QiPoly to_gaussian(const QPoly& f) {
  std::vector<GaussianRational> c;
  for (const auto& v : f.coeffs()) c.emplace_back(v);
  return QiPoly(std::move(c));
}

}  // namespace multdyn
