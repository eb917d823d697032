// Bound states at K = 0 for a few coupling pairs, with region labels.
#include <cstdio>
#include <cstdlib>

#include "lbs/lbs.hpp"

int main(int argc, char** argv) {
  std::vector<lbs::CouplingPair> couplings{{-30, 0}, {-20, -10}, {0, -16}, {60, 10.25}, {-13, -40}};
  if (argc == 3) couplings = {{std::atof(argv[1]), std::atof(argv[2])}};

  for (const auto& c : couplings) {
    const auto f = lbs::full_spectrum_zero_k(c);
    const auto r = lbs::classify(c);
    std::printf("(mu1, mu2) = (%g, %g)\n", c.mu1, c.mu2);
    if (r.sector_sum)
      std::printf("  regions predict %d below, %d above\n", r.sector_sum->first, r.sector_sum->second);
    for (lbs::Side side : {lbs::Side::below, lbs::Side::above}) {
      for (const auto& l : f.on(side)) {
        std::printf("  %-5s %14.9f  sector %-3s  multiplicity %d\n",
                    side == lbs::Side::below ? "below" : "above", l.energy,
                    std::string(lbs::to_string(l.sector)).c_str(), l.multiplicity);
      }
    }
  }
}
