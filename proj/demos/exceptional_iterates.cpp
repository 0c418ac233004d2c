// Classification of a few polynomials by their LeVeque profiles.

#include <iostream>

#include "multdyn.hpp"

using namespace multdyn;

namespace {

template <class S>
void show(const char* text, long m) {
  auto f = parse_polynomial<S>(text);
  auto c = classify_leveque_case(f, m);
  std::cout << text << ", m = " << m << ": " << to_string(c.kind);
  if (c.kind == LeVequeCase::LeVequeIterate) std::cout << " at j = " << c.j;
  if (c.witness) std::cout << ", p = " << c.witness->p << ", s = " << c.witness->s;
  std::cout << "\n";
}

}  // namespace

int main() {
  show<GaussianRational>("X^3-6*i*X^2-9*X+4*i", 2);
  show<Rational>("X*(X-1)^2", 2);
  show<Rational>("(X-1)*(X-2)*(X-3)", 5);
  show<Rational>("X^2+1", 2);
  show<Rational>("X^2*(X-1)^3*(X-2)", 2);

  auto f = parse_polynomial<Rational>("X^2*(X-1)^3*(X-2)");
  std::cout << "E(f) =";
  for (long l : exceptional_exponents(f)) std::cout << " " << l;
  std::cout << "\n";
}
