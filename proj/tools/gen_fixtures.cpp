// SPDX-License-Identifier: Apache-2.0
//
// Regenerates tests/fixtures/orientation_baseline.txt. Every transform here
// goes through the O(M^2) brute-force sum instead of the FFT path, so the
// stored baselines do not depend on the code they later check.
//
//   gen_fixtures > tests/fixtures/orientation_baseline.txt

#include <cmath>
#include <cstdio>
#include <exception>

#include "clifsig/acceptance.hpp"
#include "clifsig/spectral.hpp"

using namespace clifsig;

namespace {

using spectral::Direction;

MultivectorField oracle_hilbert(const MultivectorField& g, const multipliers::MultiplierField& a) {
  MultivectorField F = spectral::brute_force_ft(g, Direction::forward);
  MultivectorField out(F.shape(), Domain::frequency, 3);
  for (std::size_t b = 0; b < F.cell_count(); ++b) out.set(b, a.at(b) * F.at(b));
  return spectral::brute_force_ft(out, Direction::inverse);
}

ScalarField oracle_kept(const ScalarField& f, const multipliers::MultiplierField& a) {
  MultivectorField F = spectral::brute_force_ft(lift(f), Direction::forward);
  for (std::size_t b = 0; b < F.cell_count(); ++b) {
    if (a.is_exceptional(b)) F.set(b, ga::Multivector(3));
  }
  return scalar_part(spectral::brute_force_ft(F, Direction::inverse));
}

}  // namespace

int main() {
  try {
    for (const auto& c : acceptance::orientation_cases()) {
      const ScalarField image = acceptance::multicosine_image();
      const spectral::FrequencyGrid grid(image.shape);
      const auto a = multipliers::build(c.spec, grid);
      const ScalarField f = oracle_kept(image, a);
      const MultivectorField fH = oracle_hilbert(lift(f), a);

      // I3 vhat with vhat = V / |V|; V_k sits on the blade of I3 e_k
      MultivectorField unit(f.shape, Domain::spatial, 3);
      for (std::size_t i = 0; i < f.size(); ++i) {
        // (I3 V)^2 = -|V|^2
        const ga::Multivector bivector = ga::grade_project(fH.at(i), 2);
        const double norm = std::sqrt(-(bivector * bivector).scalar_part());
        if (norm > 0.0) unit.set(i, bivector / norm);
      }
      const ScalarField out = scalar_part(oracle_hilbert(unit, a));
      std::printf("case %s %zu %zu\n", c.name.c_str(), f.shape[0], f.shape[1]);
      for (std::size_t i = 0; i < out.size(); ++i) {
        std::printf("%.17g%c", out[i], (i + 1) % f.shape[0] == 0 ? '\n' : ' ');
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "gen_fixtures: %s\n", e.what());
    return 1;
  }
  return 0;
}
