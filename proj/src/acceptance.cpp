/**
 * @file acceptance.cpp
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "clifsig/acceptance.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "clifsig/analytic.hpp"
#include "clifsig/error.hpp"
#include "clifsig/spectral.hpp"

namespace clifsig::acceptance {

namespace {

using analytic::AnalyticDecomposition;
using ga::BladeIndex;
using ga::Multivector;
using multipliers::Kind;
using multipliers::MultiplierField;
using multipliers::ParametricParams;
using multipliers::SymmetryClass;
using spectral::FrequencyGrid;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint32_t kPseudo = 0b111;

struct Named {
  std::string name;
  MultiplierField a;
};

ScalarField random_field(const Shape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarField f = ScalarField::zeros(shape);
  for (double& x : f.values) x = u(rng);
  return f;
}

MultivectorField random_multivector_field(const Shape& shape, Domain domain, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MultivectorField g(shape, domain, 3);
  for (double& x : g.data()) x = u(rng);
  return g;
}

Multivector random_multivector(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Multivector m(dim);
  for (double& c : m.coeffs()) c = u(rng);
  return m;
}

// Small integer coefficients keep every product exact in double precision.
Multivector random_integer_multivector(int dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(-3, 3);
  Multivector m(dim);
  for (double& c : m.coeffs()) c = u(rng);
  return m;
}

// cos / sin of 2 pi (w . x) with the phase reduced exactly in integers.
double plane_wave_phase(const FrequencyGrid& grid, std::size_t bin, std::size_t cell) {
  const Shape& shape = grid.shape();
  double turns = 0.0;
  std::size_t rest = cell;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    const long n = static_cast<long>(shape[k]);
    const long x = static_cast<long>(rest % shape[k]);
    rest /= shape[k];
    const long w = grid.omega(bin, k);
    turns += static_cast<double>(((w * x) % n + n) % n) / static_cast<double>(n);
  }
  return kTwoPi * turns;
}

ScalarField plane_wave(const FrequencyGrid& grid, std::size_t bin) {
  ScalarField f = ScalarField::zeros(grid.shape());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::cos(plane_wave_phase(grid, bin, i));
  return f;
}

std::vector<Named> constructor_zoo(const FrequencyGrid& grid) {
  std::vector<Named> zoo;
  zoo.push_back({"hahn", multipliers::make_hahn(grid)});
  zoo.push_back({"hypercomplex", multipliers::make_hypercomplex(grid)});
  zoo.push_back({"modified-hypercomplex", multipliers::make_modified_hypercomplex(grid)});
  zoo.push_back({"monogenic", multipliers::make_monogenic(grid)});
  zoo.push_back({"parametric[monogenic]",
                 multipliers::make_parametric(grid, ParametricParams::monogenic())});
  zoo.push_back({"parametric[modified-hypercomplex]",
                 multipliers::make_parametric(grid, ParametricParams::modified_hypercomplex())});
  zoo.push_back({"parametric[hypercomplex]",
                 multipliers::make_parametric(grid, ParametricParams::hypercomplex())});
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    zoo.push_back({"random[" + std::to_string(seed) + "]",
                   multipliers::make_random_unit(grid, seed)});
  }
  zoo.push_back({"scalar-set[half-plane]",
                 multipliers::make_scalar_set(
                     grid, [](std::span<const long> w) { return w[1] > 0 || (w[1] == 0 && w[0] > 0); },
                     "scalar-set")});
  return zoo;
}

SymmetryClass expected_class(const std::string& name) {
  if (name == "hahn") return SymmetryClass::generalized;
  if (name == "hypercomplex" || name == "parametric[hypercomplex]") return SymmetryClass::generic;
  return SymmetryClass::ordinary;
}

class Suite {
 public:
  explicit Suite(Options options) : options_(options) {}

  std::vector<CheckResult> run() {
    add(1, "algebra-axioms", 1e-12, [this](CheckResult& r) { algebra_axioms(r); });
    add(2, "idempotency-unitarity", 1e-12, [this](CheckResult& r) { idempotency(r); });
    add(3, "classification", 0.0, [this](CheckResult& r) { classification(r); });
    add(4, "table1-reproduction", 0.0, [this](CheckResult& r) { table1(r); });
    add(5, "one-dimensional-reduction", 1e-10, [this](CheckResult& r) { reduction_1d(r); });
    add(6, "cosine-law", 1e-9, [this](CheckResult& r) { cosine_law(r); });
    add(7, "toggle-reconstruction", 1e-8, [this](CheckResult& r) { toggle(r); });
    add(8, "quadrant-support", 1e-9, [this](CheckResult& r) { quadrant_support(r); });
    add(9, "named-signal-equivalence", 1e-9, [this](CheckResult& r) { named_equivalence(r); });
    add(10, "generic-polar-identities", 1e-10, [this](CheckResult& r) { polar(r); });
    add(11, "fft-oracle-equivalence", 1e-9, [this](CheckResult& r) { oracle(r); });
    add(12, "orientation-only-reconstruction", 1e-9, [this](CheckResult& r) { orientation(r); });
    return std::move(results_);
  }

 private:
  void add(int id, std::string name, double tol, const std::function<void(CheckResult&)>& body) {
    CheckResult r;
    r.id = id;
    r.check = std::move(name);
    r.tolerance = tol;
    r.pass = true;
    try {
      body(r);
      if (!(r.residual <= tol)) r.pass = false;
    } catch (const std::exception& e) {
      r.pass = false;
      r.residual = std::numeric_limits<double>::infinity();
      r.detail = std::string("exception: ") + e.what();
    }
    results_.push_back(std::move(r));
  }

  // Tracks the largest residual and where it came from.
  static void note(CheckResult& r, double residual, const std::string& where) {
    if (!(residual <= r.residual) || std::isnan(residual)) {
      r.residual = residual;
      r.detail = "worst: " + where;
    }
  }

  // Part of a criterion pinned to a tighter tolerance than its headline one.
  static void note_tight(CheckResult& r, double residual, double tol, const std::string& where) {
    if (!(residual <= tol)) {
      r.pass = false;
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s: %.3e > %.0e", where.c_str(), residual, tol);
      r.detail = std::string("failed ") + buf;
      r.residual = std::max(r.residual, residual);
      return;
    }
    if (r.pass) note(r, residual, where);
  }

  void algebra_axioms(CheckResult& r) {
    std::mt19937_64 rng(20240601);
    for (int dim : {3, 7}) {
      const std::string tag = "L=" + std::to_string(dim);
      const Multivector one = Multivector::scalar(1.0, dim);
      for (int j = 1; j <= dim; ++j) {
        const Multivector ej = Multivector::basis(j, dim);
        note(r, (ej * ej - one).max_abs(), tag + " e_k^2 = 1");
        for (int k = j + 1; k <= dim; ++k) {
          const Multivector ek = Multivector::basis(k, dim);
          note(r, (ej * ek + ek * ej).max_abs(), tag + " anticommutation");
        }
      }
      const Multivector I = ga::pseudoscalar(dim);
      note(r, (I * I + one).max_abs(), tag + " I^2 = -1");
      const Multivector eL = Multivector::basis(dim, dim);
      note(r, (I * ga::pseudovector(dim) + eL).max_abs(), tag + " I_L I_(L-1) = -e_L");
      for (int t = 0; t < 1000; ++t) {
        const Multivector x = random_multivector(dim, rng);
        note(r, (I * x - x * I).max_abs(), tag + " centrality of I");
        const Multivector a = random_integer_multivector(dim, rng);
        const Multivector b = random_integer_multivector(dim, rng);
        const Multivector c = random_integer_multivector(dim, rng);
        note(r, ((a * b) * c - a * (b * c)).max_abs(), tag + " associativity");
      }
    }
  }

  void idempotency(CheckResult& r) {
    const FrequencyGrid grid({32, 32});
    for (const auto& [name, a] : constructor_zoo(grid)) {
      const Multivector one = Multivector::scalar(1.0);
      for (std::size_t b = 0; b < grid.size(); ++b) {
        if (a.is_exceptional(b)) continue;
        const Multivector ab = a.at(b);
        const Multivector psi = (one + ab) * 0.5;
        note(r, (ab * ab - one).max_abs(), name + " a^2 = 1");
        note(r, (psi * psi - psi).max_abs(), name + " psi^2 = psi");
      }
    }
  }

  void classification(CheckResult& r) {
    const FrequencyGrid grid({32, 32});
    int mismatches = 0;
    std::string bad;
    auto expect = [&](const std::string& name, const MultiplierField& a, SymmetryClass want) {
      const SymmetryClass got = multipliers::classify(a);
      const auto rep = multipliers::symmetry_report(a);
      const bool gen = multipliers::satisfies_generic(rep, a.kind());
      const bool ord = multipliers::satisfies_ordinary(rep, a.kind());
      // ordinary within generic within generalized
      const bool nested = !ord || gen;
      const SymmetryClass implied =
          ord ? SymmetryClass::ordinary : (gen ? SymmetryClass::generic : SymmetryClass::generalized);
      if (got != want || !nested || implied != got) {
        ++mismatches;
        bad += " " + name + "(" + multipliers::to_string(got) + ")";
      }
    };
    for (const auto& [name, a] : constructor_zoo(grid)) expect(name, a, expected_class(name));
    expect("scalar-set-1d", multipliers::make_sign_1d(FrequencyGrid({64})), SymmetryClass::ordinary);
    r.residual = mismatches;
    r.detail = mismatches ? "mismatch:" + bad : "all constructors classified as expected";
  }

  void table1(CheckResult& r) {
    const FrequencyGrid grid({32, 32});
    const std::pair<ParametricParams, MultiplierField> rows[] = {
        {ParametricParams::monogenic(), multipliers::make_monogenic(grid)},
        {ParametricParams::modified_hypercomplex(), multipliers::make_modified_hypercomplex(grid)},
        {ParametricParams::hypercomplex(), multipliers::make_hypercomplex(grid)},
    };
    double differing = 0;
    std::string where = "all rows bitwise equal";
    for (const auto& [params, named] : rows) {
      const MultiplierField p = multipliers::make_parametric(grid, params);
      const auto x = p.values().data();
      const auto y = named.values().data();
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::bit_cast<std::uint64_t>(x[i]) != std::bit_cast<std::uint64_t>(y[i])) {
          ++differing;
          where = "row " + named.name() + " differs at coefficient " + std::to_string(i);
        }
      }
      if (p.exceptional_mask() != named.exceptional_mask()) {
        ++differing;
        where = "row " + named.name() + " exceptional mask differs";
      }
    }
    r.residual = differing;
    r.detail = where;
  }

  void reduction_1d(CheckResult& r) {
    const std::size_t n = 64;
    const FrequencyGrid grid({n});
    const MultiplierField sgn = multipliers::make_sign_1d(grid);
    const std::size_t k = 5;
    ScalarField c = ScalarField::zeros({n});
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = std::cos(kTwoPi * static_cast<double>((k * i) % n) / static_cast<double>(n));
    }
    const MultivectorField spec = spectral::forward_ft(analytic::analytic_signal(c, sgn));
    double neg = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      if (grid.omega(b, 0) < 0) {
        for (double x : spec.cell(b)) neg = std::max(neg, std::abs(x));
      }
    }
    note(r, neg / spec.max_abs(), "negative-frequency bins of f_A");

    const ScalarField f = analytic::remove_exceptional(random_field({n}, 11), sgn).kept;
    const MultivectorField once = analytic::extended_hilbert(f, sgn);
    note(r, max_abs_diff(analytic::extended_hilbert(once, sgn), lift(f)), "H1[H1[f]] = f");
    const MultivectorField fA = analytic::analytic_signal(f, sgn);
    note(r, max_abs_diff(analytic::extended_hilbert(fA, sgn), fA), "f_A = H1[f_A]");
  }

  void cosine_law(CheckResult& r) {
    const FrequencyGrid grid({32, 32});
    std::mt19937_64 rng(606);
    std::vector<Named> general;
    general.push_back({"hahn", multipliers::make_hahn(grid)});
    general.push_back({"hypercomplex", multipliers::make_hypercomplex(grid)});
    ParametricParams tilted;
    tilted.A = 1.5;
    tilted.s_rule = multipliers::SignRule::sign_product;
    tilted.A2 = 0.5;
    general.push_back({"parametric[A=1.5]", multipliers::make_parametric(grid, tilted)});

    const Multivector I = ga::pseudoscalar(3);
    auto pick_bins = [&](const MultiplierField& a) {
      std::vector<std::size_t> bins;
      std::uniform_int_distribution<std::size_t> u(0, grid.size() - 1);
      while (bins.size() < 10) {
        const std::size_t b = u(rng);
        if (!a.is_exceptional(b)) bins.push_back(b);
      }
      return bins;
    };
    auto run = [&](const std::string& name, const MultiplierField& a, bool ordinary_form) {
      for (std::size_t b : pick_bins(a)) {
        const MultivectorField fH = analytic::extended_hilbert(plane_wave(grid, b), a);
        const Multivector ab = a.at(b);
        const Multivector anb = a.at(grid.negate(b));
        Multivector even = (ab + anb) * 0.5;
        Multivector odd = I * ((ab - anb) * 0.5);
        if (ordinary_form) {
          // f_H = I3 vhat(w_c) sin for ordinary multipliers
          even = Multivector(3);
          odd = I * ab;
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < fH.cell_count(); ++i) {
          const double ph = plane_wave_phase(grid, b, i);
          const Multivector want = even * std::cos(ph) + odd * std::sin(ph);
          worst = std::max(worst, (fH.at(i) - want).max_abs());
        }
        const auto w = grid.omega(b);
        note(r, worst,
             name + " at (" + std::to_string(w[0]) + "," + std::to_string(w[1]) + ")");
      }
    };
    for (const auto& [name, a] : constructor_zoo(grid)) {
      if (multipliers::classify(a) == SymmetryClass::ordinary) run(name, a, true);
    }
    for (const auto& [name, a] : general) run(name, a, false);
  }

  void toggle(CheckResult& r) {
    const FrequencyGrid grid({32, 32});
    std::uint64_t seed = 100;
    auto check = [&](const std::string& name, const MultiplierField& a) {
      const ScalarField f = analytic::remove_exceptional(random_field(a.grid().shape(), ++seed), a).kept;
      const auto rec = analytic::reconstruct(analytic::extended_hilbert(f, a), a);
      note(r, std::max(max_abs_diff(rec.f, f), rec.nonscalar_residual), name);
    };
    for (const auto& [name, a] : constructor_zoo(grid)) check(name, a);
    check("scalar-set-1d", multipliers::make_sign_1d(FrequencyGrid({64})));
  }

  void quadrant_support(CheckResult& r) {
    const FrequencyGrid grid({32, 32});
    const MultiplierField a =
        options_.inject_hahn_sign_fault
            ? multipliers::make_scalar_set(
                  grid,
                  [](std::span<const long> w) { return w[1] > 0 && w[0] != 0; }, "hahn")
            : multipliers::make_hahn(grid);
    const ScalarField f = analytic::remove_exceptional(random_field(grid.shape(), 808), a).kept;
    const MultivectorField fA = analytic::analytic_signal(f, a);
    const MultivectorField spec = spectral::forward_ft(fA);
    double outside = 0.0;
    for (std::size_t b = 0; b < grid.size(); ++b) {
      if (grid.omega(b, 0) < 0 || grid.omega(b, 1) < 0) {
        for (double x : spec.cell(b)) outside = std::max(outside, std::abs(x));
      }
    }
    note_tight(r, outside / spec.max_abs(), 1e-10,
               "f_A spectrum outside the closed first quadrant");

    const analytic::PartialTransforms p = analytic::partial_transforms(f);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto c = fA.cell(i);
      worst = std::max(worst, std::abs(c[0] - 0.25 * (f[i] + p.fHT[i])));
      worst = std::max(worst, std::abs(c[kPseudo] - 0.25 * (p.fH1[i] + p.fH2[i])));
      for (std::uint32_t k = 1; k < kPseudo; ++k) worst = std::max(worst, std::abs(c[k]));
    }
    note(r, worst, "f_A vs (f + f_HT)/4 + I3 (f_H1 + f_H2)/4");
  }

  void named_equivalence(CheckResult& r) {
    const FrequencyGrid grid({32, 32});
    auto compare = [&](const std::string& name, const MultiplierField& a,
                       auto&& expected /* (PartialTransforms) -> array of 3 fields */) {
      const ScalarField f = analytic::remove_exceptional(random_field(grid.shape(), 909), a).kept;
      const AnalyticDecomposition d = analytic::decompose(f, a);
      const analytic::PartialTransforms p = analytic::partial_transforms(f);
      const std::array<ScalarField, 3> want = expected(p);
      for (std::size_t k = 0; k < 3; ++k) {
        note(r, max_abs_diff((*d.V)[k], want[k]), name + " V" + std::to_string(k + 1));
        note(r, max_abs((*d.W)[k]), name + " W" + std::to_string(k + 1));
      }
    };
    compare("hypercomplex", multipliers::make_hypercomplex(grid),
            [](const analytic::PartialTransforms& p) {
              return std::array<ScalarField, 3>{p.fH1, p.fH2, p.fHT};
            });
    compare("monogenic", multipliers::make_monogenic(grid),
            [&](const analytic::PartialTransforms& p) {
              return std::array<ScalarField, 3>{p.fR1, p.fR2, ScalarField::zeros(grid.shape())};
            });
  }

  void polar(CheckResult& r) {
    const FrequencyGrid grid({32, 32});
    std::uint64_t seed = 1000;
    const Multivector one = Multivector::scalar(1.0);
    auto check = [&](const std::string& name, const MultiplierField& a) {
      const ScalarField f = analytic::remove_exceptional(random_field(a.grid().shape(), ++seed), a).kept;
      const AnalyticDecomposition d = analytic::decompose(f, a);
      if (!d.has_polar()) throw Error(name + " decomposition lacks polar fields");
      if (d.kind == Kind::scalar) {
        note(r, max_abs(*d.fH_re), name + " fH_Re");
      } else {
        for (std::size_t k = 0; k < 3; ++k) note(r, max_abs((*d.W)[k]), name + " W");
      }
      double cos_dev = 0.0, sin_dev = 0.0, unit_dev = 0.0, sph_dev = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) {
        const double R = (*d.R)[i];
        const double th = (*d.theta)[i];
        cos_dev = std::max(cos_dev, std::abs(0.5 * R * std::cos(th) - 0.5 * f[i]));
        sin_dev = std::max(sin_dev, std::abs(0.5 * R * std::sin(th) - 0.5 * (*d.fH_norm)[i]));
        if (d.invalid[i]) continue;
        const Multivector u = d.unit_hilbert(i);
        unit_dev = std::max(unit_dev, (u * u + one).max_abs());
        if (d.kind == Kind::vector_pseudovector) {
          const double s = (*d.sigma)[i];
          const double k = (*d.kappa)[i];
          const double sph[3] = {std::cos(k) * std::cos(s), std::cos(k) * std::sin(s), std::sin(k)};
          for (std::size_t c = 0; c < 3; ++c) {
            sph_dev = std::max(sph_dev, std::abs(sph[c] - (*d.vhat)[c][i]));
          }
        }
      }
      note(r, cos_dev, name + " R cos(theta) = f");
      note(r, sin_dev, name + " R sin(theta) = |f_H|");
      note(r, unit_dev, name + " unit f_H squares to -1");
      note(r, sph_dev, name + " spherical vhat");
    };
    for (const auto& [name, a] : constructor_zoo(grid)) {
      if (multipliers::classify(a) != SymmetryClass::generalized) check(name, a);
    }
    check("scalar-set-1d", multipliers::make_sign_1d(FrequencyGrid({64})));
  }

  void oracle(CheckResult& r) {
    std::vector<Shape> shapes;
    for (std::size_t n1 = 1; n1 <= 8; ++n1) {
      shapes.push_back({n1});
      for (std::size_t n2 = 1; n2 <= 8; ++n2) shapes.push_back({n1, n2});
    }
    for (const Shape& shape : shapes) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::string tag = "shape " + std::to_string(shape[0]) +
                                (shape.size() > 1 ? "x" + std::to_string(shape[1]) : "") +
                                " seed " + std::to_string(seed);
        const MultivectorField g = random_multivector_field(shape, Domain::spatial, seed);
        note(r,
             max_abs_diff(spectral::forward_ft(g),
                          spectral::brute_force_ft(g, spectral::Direction::forward)),
             tag + " forward");
        const MultivectorField G = random_multivector_field(shape, Domain::frequency, seed + 500);
        note(r,
             max_abs_diff(spectral::inverse_ft(G),
                          spectral::brute_force_ft(G, spectral::Direction::inverse)),
             tag + " inverse");
      }
    }
  }

  void orientation(CheckResult& r) {
    const auto fixtures = parse_orientation_fixture(orientation_fixture_text());
    std::string corr_note;
    for (const OrientationCase& c : orientation_cases()) {
      const ScalarField image = multicosine_image();
      const FrequencyGrid grid(image.shape);
      const MultiplierField a = multipliers::build(c.spec, grid);
      const ScalarField f = analytic::remove_exceptional(image, a).kept;
      const AnalyticDecomposition d = analytic::decompose(f, a);
      const ScalarField out = analytic::reconstruct_from_orientation(*d.vhat, a);
      for (double x : out.values) {
        if (!std::isfinite(x)) throw Error(c.name + ": non-finite output");
      }
      const double rho = pearson(out, f);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s pearson=%.4f", c.name.c_str(), rho);
      corr_note += std::string(corr_note.empty() ? "" : ", ") + buf;
      if (!(rho > 0.0)) {
        r.pass = false;
        note(r, std::numeric_limits<double>::infinity(), c.name + " correlation not positive");
      }
      auto it = fixtures.find(c.name);
      if (it == fixtures.end()) throw Error("fixture has no case '" + c.name + "'");
      note(r, max_abs_diff(out, it->second), c.name + " vs stored baseline");
    }
    r.detail += "; " + corr_note;
  }

  Options options_;
  std::vector<CheckResult> results_;
};

}  // namespace

std::vector<CheckResult> run_all(const Options& options) { return Suite(options).run(); }

ScalarField multicosine_image(std::size_t n) {
  const FrequencyGrid grid({n, n});
  struct Wave {
    long w1, w2;
    double amp, phase;
  };
  const Wave waves[] = {{2, 1, 1.0, 0.0}, {-3, 5, 0.6, 0.4}, {1, 4, 0.35, 1.1}, {5, -2, 0.2, 2.0}};
  ScalarField f = ScalarField::zeros({n, n});
  for (const Wave& w : waves) {
    const std::array<long, 2> coords{w.w1, w.w2};
    const std::size_t b = grid.index_of(coords);
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] += w.amp * std::cos(plane_wave_phase(grid, b, i) + w.phase);
    }
  }
  for (double& x : f.values) x += 0.5;
  return f;
}

std::vector<OrientationCase> orientation_cases() {
  multipliers::MultiplierSpec random;
  random.name = "random";
  random.seed = 7;
  return {{"monogenic-16x16", {"monogenic", std::nullopt, std::nullopt}},
          {"random7-16x16", random}};
}

std::map<std::string, ScalarField> parse_orientation_fixture(std::string_view text) {
  std::map<std::string, ScalarField> out;
  std::istringstream in{std::string(text)};
  std::string word;
  while (in >> word) {
    if (word != "case") throw Error("orientation fixture: expected 'case', got '" + word + "'");
    std::string name;
    std::size_t n1 = 0, n2 = 0;
    if (!(in >> name >> n1 >> n2)) throw Error("orientation fixture: bad case header");
    ScalarField f = ScalarField::zeros({n1, n2});
    for (double& x : f.values) {
      if (!(in >> x)) throw Error("orientation fixture: case '" + name + "' truncated");
    }
    out.emplace(name, std::move(f));
  }
  return out;
}

double pearson(const ScalarField& a, const ScalarField& b) {
  require_same_shape(a.shape, b.shape, "pearson");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace clifsig::acceptance
