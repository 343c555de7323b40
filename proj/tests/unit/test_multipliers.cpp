// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "clifsig/error.hpp"
#include "clifsig/multipliers.hpp"

using namespace clifsig;
using namespace clifsig::multipliers;
using ga::BladeIndex;
using ga::Multivector;
using spectral::FrequencyGrid;

namespace {

std::size_t bin(const FrequencyGrid& g, long w1, long w2) {
  const std::array<long, 2> w{w1, w2};
  return g.index_of(w);
}

Multivector vec(double v1, double v2, double P) {
  Multivector m(3);
  m[BladeIndex{0b001}] = v1;
  m[BladeIndex{0b010}] = v2;
  m[BladeIndex{0b011}] = P;
  return m;
}

const FrequencyGrid kGrid({16, 16});

}  // namespace

TEST_SUITE("multipliers") {
  TEST_CASE("Hahn values and its quadrant idempotent") {
    const auto a = make_hahn(kGrid);
    CHECK(a.m(bin(kGrid, 2, 3)) == 1.0);
    CHECK(a.m(bin(kGrid, -2, 3)) == -1.0);
    CHECK(a.m(bin(kGrid, -2, -3)) == -1.0);
    CHECK(a.m(bin(kGrid, 2, -3)) == -1.0);
    const MultivectorField psi = idempotent_of(a);
    CHECK(psi.cell(bin(kGrid, 1, 1))[0] == 1.0);
    CHECK(psi.cell(bin(kGrid, -1, 1))[0] == 0.0);
    CHECK(psi.cell(bin(kGrid, -1, -1))[0] == 0.0);
    CHECK(psi.cell(bin(kGrid, 1, -1))[0] == 0.0);
    CHECK(a.is_exceptional(bin(kGrid, 0, 3)));
    CHECK(a.is_exceptional(bin(kGrid, 3, 0)));
    CHECK(classify(a) == SymmetryClass::generalized);
  }

  TEST_CASE("hypercomplex values, symmetry and factored idempotent") {
    const auto a = make_hypercomplex(kGrid);
    const std::size_t b = bin(kGrid, 3, 5);
    CHECK(a.at(b) == vec(1, 1, 1));
    CHECK(a.at(kGrid.negate(b)) == vec(-1, -1, 1));
    CHECK(a.at(b) * a.at(b) == Multivector::scalar(1.0));
    const Multivector one = Multivector::scalar(1.0);
    for (long s1 : {-1, 1}) {
      for (long s2 : {-1, 1}) {
        const std::size_t q = bin(kGrid, 2 * s1, 3 * s2);
        const Multivector f1 = (one + Multivector::basis(1) * static_cast<double>(s1)) * 0.5;
        const Multivector f2 = (one + Multivector::basis(2) * static_cast<double>(s2)) * 0.5;
        CHECK(idempotent_of(a).at(q) == f1 * f2 * 2.0);
      }
    }
    CHECK(classify(a) == SymmetryClass::generic);
  }

  TEST_CASE("modified hypercomplex is a unit diagonal field") {
    const auto a = make_modified_hypercomplex(kGrid);
    const auto v = a.v(bin(kGrid, 4, 1));
    CHECK(v[0] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(v[1] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(a.P(bin(kGrid, 4, 1)) == 0.0);
    CHECK((a.at(bin(kGrid, 4, 1)) * a.at(bin(kGrid, 4, 1)) - Multivector::scalar(1.0)).max_abs() <=
          1e-15);
    CHECK(classify(a) == SymmetryClass::ordinary);
    // same direction as hypercomplex with |v| rescaled from sqrt 2 to 1
    const auto h = make_hypercomplex(kGrid);
    for (std::size_t b = 0; b < kGrid.size(); ++b) {
      if (a.is_exceptional(b)) continue;
      CHECK(a.v(b)[0] * std::sqrt(2.0) == doctest::Approx(h.v(b)[0]));
      CHECK(a.v(b)[1] * std::sqrt(2.0) == doctest::Approx(h.v(b)[1]));
    }
  }

  TEST_CASE("monogenic is the unit radial field") {
    const auto a = make_monogenic(kGrid);
    const auto v = a.v(bin(kGrid, 3, 4));
    CHECK(v[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(v[1] == doctest::Approx(0.8).epsilon(1e-15));
    const auto n = a.v(bin(kGrid, -3, -4));
    CHECK(n[0] == -v[0]);
    CHECK(n[1] == -v[1]);
    CHECK_FALSE(a.is_exceptional(bin(kGrid, 0, 3)));
    CHECK(a.v(bin(kGrid, 0, 3))[1] == 1.0);
    CHECK(classify(a) == SymmetryClass::ordinary);
  }

  TEST_CASE("parametric rows equal the named constructors bit for bit") {
    auto same = [](const MultiplierField& x, const MultiplierField& y) {
      const auto p = x.values().data();
      const auto q = y.values().data();
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (std::bit_cast<std::uint64_t>(p[i]) != std::bit_cast<std::uint64_t>(q[i])) return false;
      }
      return x.exceptional_mask() == y.exceptional_mask();
    };
    for (const Shape& s : {Shape{16, 16}, Shape{9, 12}, Shape{32, 32}}) {
      const FrequencyGrid g(s);
      CHECK(same(make_parametric(g, ParametricParams::monogenic()), make_monogenic(g)));
      CHECK(same(make_parametric(g, ParametricParams::modified_hypercomplex()),
                 make_modified_hypercomplex(g)));
      CHECK(same(make_parametric(g, ParametricParams::hypercomplex()), make_hypercomplex(g)));
    }
  }

  TEST_CASE("parametric with A > 1 keeps a^2 = 1") {
    ParametricParams p;
    p.A = 1.5;
    p.A2 = 0.3;
    p.alpha2 = 2.0;
    const auto a = make_parametric(kGrid, p);
    CHECK(a.unit_residual() <= 1e-12);
    CHECK(a.P(bin(kGrid, 2, 5)) == doctest::Approx(std::sqrt(1.25)));
    CHECK(classify(a) == SymmetryClass::generic);
  }

  TEST_CASE("parametric rejects A < 1 and negative exponents") {
    ParametricParams p;
    p.A = 0.9;
    CHECK_THROWS_AS(make_parametric(kGrid, p), Error);
    p.A = 1.0;
    p.beta2 = -1.0;
    CHECK_THROWS_AS(make_parametric(kGrid, p), Error);
  }

  TEST_CASE("random unit multiplier is deterministic, odd and ordinary") {
    const auto a = make_random_unit(kGrid, 42);
    const auto b = make_random_unit(kGrid, 42);
    const auto c = make_random_unit(kGrid, 43);
    CHECK(a.values().data().size() == b.values().data().size());
    bool identical = true, differs = false;
    for (std::size_t i = 0; i < a.values().data().size(); ++i) {
      identical = identical && std::bit_cast<std::uint64_t>(a.values().data()[i]) ==
                                   std::bit_cast<std::uint64_t>(b.values().data()[i]);
      differs = differs || a.values().data()[i] != c.values().data()[i];
    }
    CHECK(identical);
    CHECK(differs);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      CHECK(classify(make_random_unit(kGrid, seed)) == SymmetryClass::ordinary);
    }
  }

  TEST_CASE("scalar sets") {
    const FrequencyGrid line({16});
    const auto sgn = make_sign_1d(line);
    for (std::size_t b = 1; b < 16; ++b) {
      if (sgn.is_exceptional(b)) continue;
      CHECK(sgn.m(b) == (line.omega(b, 0) > 0 ? 1.0 : -1.0));
    }
    CHECK(classify(sgn) == SymmetryClass::ordinary);
    const MultivectorField step = idempotent_of(sgn);
    CHECK(step.cell(3)[0] == 1.0);
    CHECK(step.cell(13)[0] == 0.0);

    const auto all = make_scalar_set(kGrid, [](std::span<const long>) { return true; });
    for (std::size_t b = 0; b < kGrid.size(); ++b) CHECK(all.m(b) == 1.0);

    const auto hahn = make_hahn(kGrid);
    const auto complement = make_scalar_set(
        kGrid, [](std::span<const long> w) { return !(w[0] > 0 && w[1] > 0); });
    const MultivectorField ph = idempotent_of(hahn);
    const MultivectorField pc = idempotent_of(complement);
    for (std::size_t b = 0; b < kGrid.size(); ++b) {
      if (hahn.is_exceptional(b) || complement.is_exceptional(b)) continue;
      CHECK(pc.cell(b)[0] == 1.0 - ph.cell(b)[0]);
    }
  }

  TEST_CASE("validation names the worst bin and residual") {
    MultivectorField values(kGrid.shape(), Domain::frequency);
    for (std::size_t b = 0; b < kGrid.size(); ++b) values.cell(b)[0] = 1.0;
    values.cell(bin(kGrid, 2, 3))[0] = 0.5;
    try {
      MultiplierField::create(kGrid, values, Kind::scalar, "broken",
                              std::vector<std::uint8_t>(kGrid.size(), 0));
      FAIL("expected an error");
    } catch (const Error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("(2,3)") != std::string::npos);
      CHECK(msg.find("residual 7.500e-01") != std::string::npos);
    }
  }

  TEST_CASE("vector kind rejects grades outside {1, e1e2}") {
    MultivectorField values(kGrid.shape(), Domain::frequency);
    for (std::size_t b = 0; b < kGrid.size(); ++b) {
      values.cell(b)[0b001] = 1.0;
      values.cell(b)[0b111] = 0.5;
    }
    CHECK_THROWS_AS(MultiplierField::create(kGrid, values, Kind::vector_pseudovector, "bad",
                                            std::vector<std::uint8_t>(kGrid.size(), 0)),
                    Error);
  }

  TEST_CASE("field export and quiver CSV") {
    const FrequencyGrid g({8, 8});
    const auto table = field_export(make_monogenic(g));
    CHECK(table.rows.size() == 64);
    CHECK(table.odd_residual == 0.0);
    for (const auto& r : table.rows) {
      if (r.omega1 == 0 && r.omega2 == 0) continue;
      if (r.omega1 == 4 || r.omega2 == 4) continue;
      CHECK(std::hypot(r.v1, r.v2) == doctest::Approx(1.0));
    }
    const auto mh = field_export(make_modified_hypercomplex(g));
    for (const auto& r : mh.rows) {
      if (r.omega1 == 0 || r.omega2 == 0 || r.omega1 == 4 || r.omega2 == 4) continue;
      CHECK(std::abs(r.v1) == doctest::Approx(1 / std::sqrt(2.0)));
      CHECK(r.v1 * r.omega1 > 0);
      CHECK(r.v2 * r.omega2 > 0);
    }
    const auto hc = field_export(make_hypercomplex(g));
    for (const auto& r : hc.rows) {
      if (r.omega1 == 0 || r.omega2 == 0 || r.omega1 == 4 || r.omega2 == 4) continue;
      CHECK(std::hypot(r.v1, r.v2) == doctest::Approx(std::sqrt(2.0)));
      CHECK(std::abs(r.P) == 1.0);
    }
    std::ostringstream csv;
    write_quiver_csv(table, csv);
    CHECK(csv.str().rfind("omega1,omega2,v1,v2,P\n", 0) == 0);
    CHECK(csv.str().find("\n1,0,1,0,0\n") != std::string::npos);
    CHECK_THROWS_AS(field_export(make_hahn(g)), Error);
  }

  TEST_CASE("build enforces option rules") {
    MultiplierSpec s;
    s.name = "monogenic";
    s.seed = 3;
    CHECK_THROWS_AS(build(s, kGrid), Error);
    s.seed.reset();
    s.params = ParametricParams{};
    CHECK_THROWS_AS(build(s, kGrid), Error);
    s.name = "parametric";
    CHECK(build(s, kGrid).name() == "parametric");
    s.name = "nope";
    s.params.reset();
    CHECK_THROWS_AS(build(s, kGrid), Error);
    MultiplierSpec r;
    r.name = "random";
    r.seed = 9;
    CHECK(build(r, kGrid).name() == "random");
    CHECK(to_string(sign_rule_from_string("sign-product")) == "sign-product");
    CHECK_THROWS_AS(sign_rule_from_string("both"), Error);
  }

  TEST_CASE("rank requirements") {
    CHECK_THROWS_AS(make_monogenic(FrequencyGrid({16})), Error);
    CHECK_THROWS_AS(make_sign_1d(kGrid), Error);
  }
}
