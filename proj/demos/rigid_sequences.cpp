// Rigid divisibility and primitive parts along the orbit of 0 under X^2 + 2.

#include <iostream>

#include "multdyn.hpp"

using namespace multdyn;

int main() {
  auto f = parse_polynomial<Rational>("X^2+2");
  auto t = orbit(f, Rational(0), 12);
  auto div = check_divisibility_orbit(f, 0, 12);
  auto rig = check_rigid_orbit(f, 0, 12, 10'000);
  std::cout << "divisibility " << (div.ok ? "yes" : "no") << ", rigid " << (rig.rigid ? "yes" : "no") << "\n";
  for (std::size_t m = 1; m <= t.size(); ++m) {
    auto digits = primitive_part(t, m).get_str().size();
    std::cout << "m = " << m << ": a_m has " << t.at(m).str().size() << " digits, primitive part " << digits
              << " digits\n";
  }
}
