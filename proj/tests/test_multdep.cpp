#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "multdyn.hpp"

using namespace multdyn;

namespace {

// Some nonzero k with |k_i| <= bound and prod nu_i^k_i = 1, by exhaustive search.
bool brute_dependent(const std::vector<Rational>& nu, long bound) {
  const std::size_t n = nu.size();
  std::vector<long> k(n, -bound);
  while (true) {
    bool nonzero = false;
    for (long v : k) nonzero = nonzero || v != 0;
    if (nonzero) {
      Rational acc(1);
      for (std::size_t i = 0; i < n; ++i) acc *= nu[i].pow(k[i]);
      if (acc == 1) return true;
    }
    std::size_t p = 0;
    while (p < n && k[p] == bound) k[p++] = -bound;
    if (p == n) return false;
    ++k[p];
  }
}

// Rank from the definition, with dependence of each subset decided by brute force.
int brute_rank(const std::vector<Rational>& nu, long bound) {
  for (const auto& v : nu)
    if (v == 1 || v == -1) return 0;
  const std::size_t n = nu.size();
  for (std::size_t size = 1; size <= n; ++size)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
      std::vector<Rational> sub;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) sub.push_back(nu[i]);
      if (brute_dependent(sub, bound)) return static_cast<int>(size) - 1;
    }
  return static_cast<int>(n);
}

std::vector<Rational> random_tuple(std::mt19937_64& rng, std::size_t n) {
  // small smooth values so dependences are common and exponents stay small
  const long base[] = {2, 3, 4, 6, 8, 9, 12, 16, 18, 27, 36, 5, 10};
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) {
    long a = base[rng() % std::size(base)], b = rng() % 4 == 0 ? base[rng() % std::size(base)] : 1;
    Rational v(a, b);
    if (rng() % 3 == 0) v = -v;
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(TestDependence, Examples) {
  auto v = test_dependence({Rational(4), Rational(8)});
  EXPECT_EQ(v.status, DependenceStatus::Dependent);
  ASSERT_TRUE(v.relation);
  EXPECT_EQ(v.relation->k, (std::vector<BigInt>{3, -2}));
  EXPECT_EQ(v.rank, 1);

  auto w = test_dependence({Rational(2), Rational(3)});
  EXPECT_EQ(w.status, DependenceStatus::Independent);
  EXPECT_FALSE(w.relation);
  EXPECT_EQ(w.rank, 2);

  auto u = test_dependence({Rational(5), Rational(0)});
  EXPECT_EQ(u.status, DependenceStatus::Undefined);
  EXPECT_FALSE(u.relation);
  EXPECT_FALSE(u.rank);
}

TEST(TestDependence, SignsNeedEvenExponents) {
  auto v = test_dependence({Rational(-2), Rational(2)});
  ASSERT_EQ(v.status, DependenceStatus::Dependent);
  EXPECT_EQ(evaluate_relation(std::vector<Rational>{Rational(-2), Rational(2)}, v.relation->k), 1);
  auto w = test_dependence({Rational(-1)});
  ASSERT_EQ(w.status, DependenceStatus::Dependent);
  EXPECT_EQ(w.relation->k, std::vector<BigInt>{2});
  EXPECT_EQ(w.rank, 0);
}

TEST(TestDependence, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 120; ++t) {
    auto nu = random_tuple(rng, 2 + t % 2);
    auto v = test_dependence(std::span<const Rational>(nu));
    // the search is bounded, so it can only confirm dependence
    if (brute_dependent(nu, 8)) {
      EXPECT_EQ(v.status, DependenceStatus::Dependent);
    }
    if (v.relation) {
      EXPECT_TRUE(verify_relation(nu, *v.relation));
    }
  }
}

TEST(TestDependence, Deterministic) {
  std::vector<Rational> nu{Rational(12), Rational(-18), Rational(2, 3)};
  auto a = test_dependence(std::span<const Rational>(nu));
  auto b = test_dependence(std::span<const Rational>(nu));
  ASSERT_TRUE(a.relation && b.relation);
  EXPECT_EQ(a.relation->k, b.relation->k);
  EXPECT_GT(a.relation->k[0], 0);
}

TEST(MultRank, Fixtures) {
  EXPECT_EQ(mult_rank({Rational(1), Rational(5)}), 0);
  EXPECT_EQ(mult_rank({Rational(2), Rational(3), Rational(6)}), 2);
  EXPECT_EQ(mult_rank({Rational(2), Rational(4)}), 1);
  EXPECT_EQ(mult_rank({Rational(2), Rational(3), Rational(5)}), 3);
  EXPECT_EQ(mult_rank({Rational(4), Rational(8), Rational(-3)}), 1);
  EXPECT_THROW(mult_rank({Rational(2), Rational(0)}), DomainError);
}

TEST(MultRank, Gaussian) {
  using G = GaussianRational;
  EXPECT_EQ(mult_rank(std::vector<G>{G::i(), G(2)}), 0);
  EXPECT_EQ(mult_rank(std::vector<G>{G(-1), G(2)}), 0);
  EXPECT_EQ(mult_rank(std::vector<G>{G(2), G(3)}), 2);
  EXPECT_THROW(mult_rank(std::vector<G>{G(Rational(1), Rational(1)), G(2)}), DomainError);
}

TEST(MultRank, MatchesDefinition) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 40; ++t) {
    auto nu = random_tuple(rng, 2 + t % 3);
    if (t % 7 == 0) nu.push_back(Rational(-1));
    EXPECT_EQ(mult_rank(std::span<const Rational>(nu)), brute_rank(nu, 6));
  }
}

TEST(MultRank, FullExactlyWhenIndependent) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 60; ++t) {
    auto nu = random_tuple(rng, 1 + t % 4);
    auto v = test_dependence(std::span<const Rational>(nu));
    EXPECT_EQ(mult_rank(std::span<const Rational>(nu)) == static_cast<int>(nu.size()),
              v.status == DependenceStatus::Independent);
  }
}

TEST(MultRank, AppendingRaisesByAtMostOne) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 40; ++t) {
    auto nu = random_tuple(rng, 2 + t % 3);
    int r = mult_rank(std::span<const Rational>(nu));
    nu.push_back(random_tuple(rng, 1)[0]);
    EXPECT_LE(mult_rank(std::span<const Rational>(nu)), r + 1);
  }
}

TEST(MultRank, TupleLengthCap) {
  std::vector<Rational> nu;
  for (long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) nu.emplace_back(p);
  EXPECT_THROW(mult_rank(std::span<const Rational>(nu)), DomainError);
  nu.pop_back();
  EXPECT_EQ(mult_rank(std::span<const Rational>(nu)), 12);
}

TEST(RankOnePair, Examples) {
  auto r = is_rank_one_pair(Rational(4), Rational(8));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->k, 3);
  EXPECT_EQ(r->ell, 2);
  EXPECT_EQ(r->zeta, 1);
  EXPECT_FALSE(r->mixed_sign);

  auto s = is_rank_one_pair(Rational(9), Rational(1, 3));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->k, 1);
  EXPECT_EQ(s->ell, -2);
  EXPECT_TRUE(s->mixed_sign);

  auto n = is_rank_one_pair(Rational(-8), Rational(4));
  ASSERT_TRUE(n);
  EXPECT_EQ(n->k, 2);
  EXPECT_EQ(n->ell, 3);
  EXPECT_EQ(Rational(-8).pow(n->k), Rational(n->zeta) * Rational(4).pow(n->ell));

  EXPECT_FALSE(is_rank_one_pair(Rational(2), Rational(3)));
  EXPECT_THROW(is_rank_one_pair(Rational(1), Rational(3)), DomainError);
}
