// Compares determinant roots with grid eigenvalues as the grid is refined.
#include <cmath>
#include <cstdio>

#include "lbs/lbs.hpp"

int main() {
  const lbs::CouplingPair c{-60, -10.25};
  const auto f = lbs::full_spectrum_zero_k(c);
  std::printf("coupling (%g, %g)\n", c.mu1, c.mu2);
  for (const auto& l : f.below) std::printf("  determinant root %.9f\n", l.energy);

  for (int n : {8, 12, 16, 20}) {
    const auto oc = lbs::oracle_counts(c, lbs::Quasimomentum{}, n);
    std::printf("N=%2d  oracle below=%d  above=%d  eigenvalues:", n, oc.below, oc.above);
    for (double e : oc.eigen_below) std::printf(" %.6f", e);
    std::printf("\n");
  }

  for (const auto& l : f.below) {
    const auto e = lbs::eigenfunction_s(c, l.energy);
    std::printf("z=%.6f  grid residual N=16 %.2e  N=32 %.2e\n", l.energy,
                lbs::grid_residual(c, lbs::Quasimomentum{}, 16, l.energy, e),
                lbs::grid_residual(c, lbs::Quasimomentum{}, 32, l.energy, e));
  }
}
