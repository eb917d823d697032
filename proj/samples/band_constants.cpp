// Prints the band-edge constants and the a-functions at a few energies.
#include <cstdio>

#include "lbs/lbs.hpp"

int main() {
  const auto& k = lbs::band_edge_constants();
  std::printf("a11(0)   = %.12f\n", k.at_edge.a11);
  std::printf("a12(0)   = %.12f\n", k.at_edge.a12);
  std::printf("a22(0)   = %.12f\n", k.at_edge.a22);
  std::printf("a_a12(0) = %.12f\n", k.at_edge.a_a12);
  std::printf("mu0      = %.12f\n", k.mu0);
  std::printf("mu2_crit = %.12f\n\n", k.mu2_crit);

  const auto& eval = lbs::default_evaluator();
  std::printf("%10s %16s %16s %16s %16s\n", "z", "a11", "a12", "a22", "a_a12");
  for (double z : {-30.0, -5.0, -1.0, -0.01, 24.01, 25.0, 54.0}) {
    const auto a = eval(z);
    std::printf("%10.3f %16.12f %16.12f %16.12f %16.12f\n", z, a.a11, a.a12, a.a22, a.a_a12);
  }
}
