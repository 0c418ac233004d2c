#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "multdyn.hpp"

using namespace multdyn;

namespace {

QPoly P(const char* s) { return parse_polynomial<Rational>(s); }
QiPoly PI(const char* s) { return parse_polynomial<GaussianRational>(s); }

QPoly random_poly(std::mt19937_64& rng, int max_deg, int min_deg = 0) {
  std::uniform_int_distribution<int> deg(min_deg, max_deg);
  std::uniform_int_distribution<long> num(-6, 6), den(1, 3);
  for (;;) {
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : c) v = Rational(num(rng), den(rng));
    QPoly f(std::move(c));
    if (f.degree() >= min_deg) return f;
  }
}

}  // namespace

TEST(Parser, RoundTrip) {
  for (const char* s : {"3/2*X^4 - X + 5", "X^2", "-X", "0", "7", "X^3 - 3*X", "(X+1)^3 - X*(X-2)"}) {
    auto f = P(s);
    EXPECT_EQ(P(to_string(f).c_str()), f) << s;
  }
  for (const char* s : {"X^3-6*i*X^2-9*X+4*i", "i", "-i", "(1+i)*X^2 - 3/4*i", "(2-3*i)*X"}) {
    auto f = PI(s);
    EXPECT_EQ(PI(to_string(f).c_str()), f) << s;
  }
  EXPECT_THROW(P("X^"), DomainError);
  EXPECT_THROW(P("i*X"), DomainError);
}

TEST(Compose, Examples) {
  EXPECT_EQ(compose(P("X"), P("X^3 + 2")), P("X^3 + 2"));
  EXPECT_EQ(compose(P("X^2+2"), P("X^2+2")), P("X^4+4*X^2+6"));
  EXPECT_EQ(compose(P("X^2"), P("X^3")), P("X^6"));
}

TEST(Compose, AgreesWithEvaluation) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 40; ++t) {
    auto f = random_poly(rng, 5), g = random_poly(rng, 4);
    auto h = compose(f, g);
    for (long x = -3; x <= 3; ++x) EXPECT_EQ(h(Rational(x)), f(g(Rational(x))));
    if (!f.is_zero() && !g.is_constant()) {
      EXPECT_EQ(h.degree(), f.degree() * g.degree());
    }
  }
}

TEST(Iterate, Examples) {
  EXPECT_EQ(iterate(P("X^2+2"), 1), P("X^2+2"));
  EXPECT_EQ(iterate(P("X^2+2"), 2), P("X^4+4*X^2+6"));
  EXPECT_EQ(iterate(PI("(X-4*i)*(X-i)^2"), 2), PI("X*(X^4-9*i*X^3-27*X^2+30*i*X+9)^2"));
  EXPECT_THROW(iterate(P("X^2"), 0), DomainError);
}

TEST(Iterate, Additivity) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    auto f = random_poly(rng, 2, 2);
    for (unsigned a = 1; a <= 3; ++a)
      for (unsigned b = 1; a + b <= 6 && b <= 3; ++b) {
        if (a + b > 5) continue;
        EXPECT_EQ(iterate(f, a + b), compose(iterate(f, a), iterate(f, b)));
      }
  }
}

TEST(Squarefree, Examples) {
  auto d = squarefree_decompose(P("X^2*(X-1)^3"));
  EXPECT_EQ(d.content, 1);
  ASSERT_EQ(d.parts.size(), 2u);
  EXPECT_EQ(d.parts[0], std::make_pair(P("X"), 2u));
  EXPECT_EQ(d.parts[1], std::make_pair(P("X-1"), 3u));

  auto e = squarefree_decompose(P("X^2-1"));
  ASSERT_EQ(e.parts.size(), 1u);
  EXPECT_EQ(e.parts[0], std::make_pair(P("X^2-1"), 1u));

  auto g = squarefree_decompose(P("4*(X-1)^2"));
  EXPECT_EQ(g.content, 4);
  ASSERT_EQ(g.parts.size(), 1u);
  EXPECT_EQ(g.parts[0], std::make_pair(P("X-1"), 2u));

  EXPECT_THROW(squarefree_decompose(QPoly()), DomainError);
}

TEST(Squarefree, RandomProductsReconstruct) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    QPoly f = QPoly::constant(Rational(static_cast<long>(rng() % 5) + 1));
    for (int j = 0; j < 3; ++j) f *= random_poly(rng, 2, 1).pow(static_cast<unsigned long>(rng() % 3 + 1));
    auto d = squarefree_decompose(f);
    EXPECT_EQ(d.reconstruct(), f);
    int total = 0;
    for (std::size_t a = 0; a < d.parts.size(); ++a) {
      const auto& [g, e] = d.parts[a];
      total += static_cast<int>(e) * g.degree();
      EXPECT_TRUE(g.is_monic());
      EXPECT_EQ(gcd(g, g.derivative()).degree(), 0);
      if (a > 0) {
        EXPECT_GT(e, d.parts[a - 1].second);
      }
      for (std::size_t b = a + 1; b < d.parts.size(); ++b) EXPECT_EQ(gcd(g, d.parts[b].first).degree(), 0);
    }
    EXPECT_EQ(total, f.degree());
    QPoly rad = QPoly::constant(Rational(1));
    for (const auto& [g, e] : d.parts) rad *= g;
    EXPECT_EQ(radical(f), rad);
  }
}

TEST(Squarefree, GaussianExample) {
  auto d = squarefree_decompose(PI("(X-4*i)*(X-i)^2"));
  ASSERT_EQ(d.parts.size(), 2u);
  EXPECT_EQ(d.parts[0].first, PI("X-4*i"));
  EXPECT_EQ(d.parts[1].first, PI("X-i"));
  EXPECT_TRUE(detail::certified_squarefree(PI("X^2+1")));
  EXPECT_FALSE(detail::certified_squarefree(PI("(X^2+1)^2")));
}

TEST(Radical, Examples) {
  EXPECT_EQ(radical(P("X^2*(X-1)^3")), P("X*(X-1)"));
  EXPECT_EQ(radical(P("X^2+1")), P("X^2+1"));
  EXPECT_EQ(radical(P("5*X^4")), P("X"));
}

TEST(Dickson, Examples) {
  EXPECT_EQ(dickson(0, Rational(3)), P("2"));
  EXPECT_EQ(dickson(1, Rational(3)), P("X"));
  EXPECT_EQ(dickson(2, Rational(3)), P("X^2 - 6"));
  EXPECT_EQ(dickson(3, Rational(3)), P("X^3 - 9*X"));
}

TEST(Dickson, FunctionalEquation) {
  // D_m(z + a/z, a) = z^m + (a/z)^m
  for (long an : {-3, 1, 2, 5})
    for (unsigned m = 0; m <= 9; ++m) {
      Rational a(an, 2);
      auto D = dickson(m, a);
      for (Rational z : {Rational(2), Rational(-1, 3), Rational(7, 5)}) {
        Rational w = a / z;
        EXPECT_EQ(D(z + w), z.pow(m) + w.pow(m)) << "m=" << m;
      }
    }
}

TEST(Dickson, CompositionIdentity) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long> num(-7, 7), den(1, 4);
  for (int t = 0; t < 4; ++t) {
    Rational a(num(rng), den(rng));
    if (a.is_zero()) a = Rational(3, 2);
    for (unsigned m = 1; m <= 5; ++m)
      for (unsigned n = 1; n <= 5; ++n)
        EXPECT_EQ(dickson(m * n, a), compose(dickson(m, a.pow(n)), dickson(n, a)));
  }
}

TEST(Twist, Examples) {
  EXPECT_EQ(twist(P("X^2+3"), Rational(1)), P("X^2+3"));
  EXPECT_EQ(twist(P("X^2"), Rational(2)), P("1/2*X^2"));
  EXPECT_EQ(twist(P("X^3-X"), Rational(-1)), P("X^3-X"));
  EXPECT_THROW(twist(P("X^2"), Rational(0)), DomainError);
}

TEST(Twist, Conjugation) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    auto f = random_poly(rng, 3, 2);
    Rational alpha(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1);
    if (alpha.is_zero()) alpha = Rational(5, 2);
    auto ft = twist(f, alpha);
    for (Rational x : {Rational(1), Rational(-2, 3)}) EXPECT_EQ(ft(alpha * x), alpha * f(x));
    for (unsigned n = 1; n <= (f.degree() == 2 ? 4u : 3u); ++n)
      EXPECT_EQ(iterate(ft, n), twist(iterate(f, n), alpha));
  }
  auto g = PI("X^2 + i");
  EXPECT_EQ(iterate(twist(g, GaussianRational::i()), 3), twist(iterate(g, 3), GaussianRational::i()));
}

TEST(Decompose, Examples) {
  auto d = decompose_functional(P("X^4+4*X^2+6"));
  ASSERT_FALSE(d.empty());
  bool found = false;
  for (const auto& [g, h] : d) {
    EXPECT_EQ(compose(g, h), P("X^4+4*X^2+6"));
    // (X^2+2) o (X^2+2) up to the linear map X -> X + 2
    found = found || (h == P("X^2") && g == P("X^2+4*X+6"));
  }
  EXPECT_TRUE(found);

  auto e = decompose_functional(P("X^4"));
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].outer, P("X^2"));
  EXPECT_EQ(e[0].inner, P("X^2"));

  EXPECT_TRUE(decompose_functional(P("X^6+X+1")).empty());
  EXPECT_TRUE(decompose_functional(P("X^3+X")).empty());
}

TEST(Decompose, FindsConstructedCompositions) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 20; ++t) {
    auto g = random_poly(rng, 3, 2), h = random_poly(rng, 3, 2);
    auto f = compose(g, h);
    auto d = decompose_functional(f);
    bool inner_degree_seen = false;
    for (const auto& dec : d) {
      EXPECT_EQ(compose(dec.outer, dec.inner), f);
      EXPECT_TRUE(dec.inner.is_monic());
      EXPECT_TRUE(dec.inner.coeff(0).is_zero());
      inner_degree_seen = inner_degree_seen || dec.inner.degree() == h.degree();
    }
    EXPECT_TRUE(inner_degree_seen);
  }
}

TEST(Decompose, DegreeCap) {
  EXPECT_THROW(decompose_functional(P("X^30+X"), 24), BudgetExceeded);
}

TEST(PolynomialAbc, RandomCoprimePairs) {
  std::mt19937_64 rng(12);
  int checked = 0;
  while (checked < 100) {
    auto A = random_poly(rng, 6), B = random_poly(rng, 6);
    if (A.is_zero() || B.is_zero()) continue;
    QPoly C = -(A + B);
    if (C.is_zero() || gcd(A, B).degree() > 0) continue;
    if (A.derivative().is_zero() && B.derivative().is_zero() && C.derivative().is_zero()) continue;
    ++checked;
    EXPECT_GE(radical(A * B * C).degree(), std::max({A.degree(), B.degree(), C.degree()}) + 1);
  }
}
