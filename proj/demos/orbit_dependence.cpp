// Dependent index pairs in two orbits of X^2 + 2, and a rank-one family
// built from a semiconjugacy.

#include <iostream>

#include "multdyn.hpp"

using namespace multdyn;

int main() {
  auto f = parse_polynomial<Rational>("X^2+2");
  auto rep = count_multdep({f, f}, {Rational(0), Rational(0)}, 8);
  std::cout << "M(8) = " << rep.count << ", count/N = " << rep.ratio_lower << "\n";
  for (const auto& c : rep.certificates)
    std::cout << "  (" << c.indices[0] << ", " << c.indices[1] << ")  k = (" << c.relation.k[0] << ", "
              << c.relation.k[1] << ")\n";

  // f(X^2) = f_hat(X)^2 for f = X (X+1)^2 and f_hat = X^3 + X
  auto g = parse_polynomial<Rational>("X*(X+1)^2");
  auto hat = build_hat(g, 2);
  std::cout << "hat of " << g << " is " << hat << "\n";
  FamilyData d;
  d.ell = 2;
  d.f_hat = hat;
  d.g_hat = hat;
  for (const auto& p : dependent_family(g, hat, d, Rational(9), 3))
    std::cout << "  r = " << p.r << ": z = w^" << p.relation.ell << ", w = " << p.w.str() << "\n";
}
