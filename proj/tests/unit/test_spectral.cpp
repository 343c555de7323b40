// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "clifsig/error.hpp"
#include "clifsig/spectral.hpp"

using namespace clifsig;
using spectral::Direction;
using spectral::FrequencyGrid;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint32_t kPseudo = 0b111;

ScalarField random_real(const Shape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarField f = ScalarField::zeros(shape);
  for (double& x : f.values) x = u(rng);
  return f;
}

MultivectorField random_mv_field(const Shape& shape, Domain domain, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MultivectorField g(shape, domain);
  for (double& x : g.data()) x = u(rng);
  return g;
}

// 2-D complex DFT with exp(-i ...) for a real field; the GA spectrum of a
// real field is Re + I3 Im of it.
std::vector<std::complex<double>> complex_dft(const ScalarField& f) {
  const std::size_t n1 = f.shape[0], n2 = f.shape[1];
  std::vector<std::complex<double>> out(f.size());
  for (std::size_t k2 = 0; k2 < n2; ++k2) {
    for (std::size_t k1 = 0; k1 < n1; ++k1) {
      std::complex<double> acc = 0.0;
      for (std::size_t x2 = 0; x2 < n2; ++x2) {
        for (std::size_t x1 = 0; x1 < n1; ++x1) {
          const double ph = kTwoPi * (static_cast<double>(k1 * x1) / n1 +
                                      static_cast<double>(k2 * x2) / n2);
          acc += f[x1 + n1 * x2] * std::polar(1.0, -ph);
        }
      }
      out[k1 + n1 * k2] = acc;
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("bin coordinates and negation") {
    CHECK(FrequencyGrid::bin_coordinate(0, 8) == 0);
    CHECK(FrequencyGrid::bin_coordinate(4, 8) == 4);
    CHECK(FrequencyGrid::bin_coordinate(5, 8) == -3);
    CHECK(FrequencyGrid::bin_coordinate(3, 7) == 3);
    CHECK(FrequencyGrid::bin_coordinate(4, 7) == -3);
    const FrequencyGrid g({8, 6});
    for (std::size_t b = 0; b < g.size(); ++b) {
      const auto w = g.omega(b);
      const auto nw = g.omega(g.negate(b));
      CHECK(g.negate(g.negate(b)) == b);
      if (!g.is_exceptional(b)) {
        CHECK(nw[0] == -w[0]);
        CHECK(nw[1] == -w[1]);
        CHECK(g.negate(b) != b);
      }
      CHECK(g.index_of(w) == b);
    }
  }

  TEST_CASE("exceptional bins are DC and any-axis Nyquist") {
    const FrequencyGrid g({8, 8});
    std::size_t count = 0;
    for (std::size_t b = 0; b < g.size(); ++b) count += g.is_exceptional(b);
    // DC, plus the row and column at Nyquist: 1 + 8 + 8 - 1
    CHECK(count == 16);
    const std::array<long, 2> w{4, 2};
    CHECK(g.is_exceptional(g.index_of(w)));
    const FrequencyGrid odd({7, 5});
    std::size_t odd_count = 0;
    for (std::size_t b = 0; b < odd.size(); ++b) odd_count += odd.is_exceptional(b);
    CHECK(odd_count == 1);
  }

  TEST_CASE("grid rejects zero-length axes") {
    CHECK_THROWS_AS(FrequencyGrid({8, 0}), Error);
    CHECK_THROWS_AS(FrequencyGrid(Shape{}), Error);
  }

  TEST_CASE("real spectrum agrees with an independent complex DFT") {
    const ScalarField f = random_real({6, 5}, 4);
    const auto want = complex_dft(f);
    const MultivectorField F = spectral::forward_ft(lift(f));
    for (std::size_t b = 0; b < f.size(); ++b) {
      CHECK(F.cell(b)[0] == doctest::Approx(want[b].real()).epsilon(1e-12));
      CHECK(F.cell(b)[kPseudo] == doctest::Approx(want[b].imag()).epsilon(1e-12));
    }
  }

  TEST_CASE("cosine on a bin has scalar M/2 at +-w only") {
    const FrequencyGrid g({8, 8});
    const std::array<long, 2> wc{3, -2};
    const std::size_t b = g.index_of(wc);
    ScalarField f = ScalarField::zeros({8, 8});
    for (std::size_t x2 = 0; x2 < 8; ++x2) {
      for (std::size_t x1 = 0; x1 < 8; ++x1) {
        f[x1 + 8 * x2] = std::cos(kTwoPi * (3.0 * x1 - 2.0 * x2) / 8.0);
      }
    }
    const MultivectorField F = spectral::forward_ft(lift(f));
    for (std::size_t k = 0; k < F.cell_count(); ++k) {
      const double want = (k == b || k == g.negate(b)) ? 32.0 : 0.0;
      CHECK(F.cell(k)[0] == doctest::Approx(want).epsilon(1e-12).scale(32.0));
      CHECK(std::abs(F.cell(k)[kPseudo]) <= 1e-12);
    }
  }

  TEST_CASE("constant field is DC-only and DC-only spectrum is constant") {
    ScalarField one = ScalarField::zeros({4, 4});
    for (double& x : one.values) x = 1.0;
    const MultivectorField F = spectral::forward_ft(lift(one));
    CHECK(F.cell(0)[0] == doctest::Approx(16.0));
    double off = 0.0;
    for (std::size_t b = 1; b < 16; ++b) off = std::max(off, std::abs(F.cell(b)[0]));
    CHECK(off <= 1e-14);
    MultivectorField G({4, 4}, Domain::frequency);
    G.cell(0)[0] = 16.0;
    const MultivectorField g = spectral::inverse_ft(G);
    for (std::size_t i = 0; i < 16; ++i) CHECK(g.cell(i)[0] == doctest::Approx(1.0));
  }

  TEST_CASE("FFT path agrees with the brute-force sum") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const MultivectorField g = random_mv_field({8, 8}, Domain::spatial, seed);
      CHECK(max_abs_diff(spectral::forward_ft(g), spectral::brute_force_ft(g, Direction::forward)) <=
            1e-9);
      const MultivectorField G = random_mv_field({5, 3}, Domain::frequency, seed);
      CHECK(max_abs_diff(spectral::inverse_ft(G), spectral::brute_force_ft(G, Direction::inverse)) <=
            1e-9);
    }
  }

  TEST_CASE("round trip on a random 16x16 field") {
    const MultivectorField g = random_mv_field({16, 16}, Domain::spatial, 9);
    CHECK(max_abs_diff(spectral::inverse_ft(spectral::forward_ft(g)), g) <= 1e-10);
  }

  TEST_CASE("delta impulse has a flat scalar spectrum") {
    MultivectorField g({4, 4}, Domain::spatial);
    g.cell(0)[0] = 1.0;
    const MultivectorField F = spectral::brute_force_ft(g, Direction::forward);
    for (std::size_t b = 0; b < 16; ++b) {
      CHECK(F.cell(b)[0] == doctest::Approx(1.0));
      CHECK(std::abs(F.cell(b)[kPseudo]) <= 1e-15);
    }
  }

  TEST_CASE("even real field has no pseudoscalar spectrum") {
    const auto [fe, fo] = spectral::even_odd_split(random_real({6, 6}, 21));
    const MultivectorField F = spectral::brute_force_ft(lift(fe), Direction::forward);
    for (std::size_t b = 0; b < F.cell_count(); ++b) CHECK(std::abs(F.cell(b)[kPseudo]) <= 1e-12);
  }

  TEST_CASE("even/odd split of cosines, sines and random fields") {
    ScalarField c = ScalarField::zeros({8, 8});
    ScalarField s = ScalarField::zeros({8, 8});
    for (std::size_t x2 = 0; x2 < 8; ++x2) {
      for (std::size_t x1 = 0; x1 < 8; ++x1) {
        const double ph = kTwoPi * (1.0 * x1 + 2.0 * x2) / 8.0;
        c[x1 + 8 * x2] = std::cos(ph);
        s[x1 + 8 * x2] = std::sin(ph);
      }
    }
    CHECK(max_abs(spectral::even_odd_split(c).second) <= 1e-15);
    CHECK(max_abs(spectral::even_odd_split(s).first) <= 1e-15);

    const ScalarField f = random_real({7, 6}, 5);
    const auto [fe, fo] = spectral::even_odd_split(f);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(std::abs(fe[i] + fo[i] - f[i]) <= 4 * std::numeric_limits<double>::epsilon());
    }
  }

  TEST_CASE("spectrum of a real field splits into even and odd parts") {
    const ScalarField f = random_real({8, 6}, 2);
    const FrequencyGrid g(f.shape);
    const auto split = spectral::split_spectrum(spectral::forward_ft(lift(f)));
    for (std::size_t b = 0; b < g.size(); ++b) {
      CHECK(split.even[b] == doctest::Approx(split.even[g.negate(b)]).epsilon(1e-10).scale(1.0));
      CHECK(split.odd[b] == doctest::Approx(-split.odd[g.negate(b)]).epsilon(1e-10).scale(1.0));
    }
    const auto [fe, fo] = spectral::even_odd_split(f);
    const auto even_spec = spectral::split_spectrum(spectral::forward_ft(lift(fe)));
    CHECK(max_abs_diff(even_spec.even, split.even) <= 1e-12);
  }

  TEST_CASE("transform errors") {
    MultivectorField g7({4}, Domain::spatial, 7);
    CHECK_THROWS_AS(spectral::forward_ft(g7), Error);
    MultivectorField G({4}, Domain::frequency);
    CHECK_THROWS_AS(spectral::forward_ft(G), Error);
    MultivectorField big({65, 64}, Domain::spatial);
    CHECK_THROWS_AS(spectral::brute_force_ft(big, Direction::forward), Error);
  }

  TEST_CASE("brute-force oracle also runs in G_7") {
    MultivectorField g({3}, Domain::spatial, 7);
    g.cell(1)[0] = 1.0;
    const MultivectorField F = spectral::brute_force_ft(g, Direction::forward);
    const MultivectorField back = spectral::brute_force_ft(F, Direction::inverse);
    CHECK(max_abs_diff(back, g) <= 1e-14);
  }
}
