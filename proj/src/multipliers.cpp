/**
 * @file multipliers.cpp
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "clifsig/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "clifsig/error.hpp"

namespace clifsig::multipliers {

namespace {

using spectral::FrequencyGrid;

constexpr std::uint32_t kE1 = 0b001;
constexpr std::uint32_t kE2 = 0b010;
constexpr std::uint32_t kE3 = 0b100;
constexpr std::uint32_t kE12 = 0b011;

double sgn(long w) { return w > 0 ? 1.0 : (w < 0 ? -1.0 : 0.0); }

void require_rank(const FrequencyGrid& grid, std::size_t rank, const char* who) {
  if (grid.rank() != rank) {
    throw Error(std::string(who) + " requires a " + std::to_string(rank) + "-D grid, got " +
                std::to_string(grid.rank()) + "-D");
  }
}

std::vector<std::uint8_t> grid_mask(const FrequencyGrid& grid) { return grid.exceptional_mask(); }

// Grid exceptional bins plus every bin on the w1 = 0 or w2 = 0 axes, where
// sgn(w_k) = w_k/|w_k| is undefined.
std::vector<std::uint8_t> axis_mask(const FrequencyGrid& grid) {
  auto mask = grid_mask(grid);
  for (std::size_t b = 0; b < grid.size(); ++b) {
    if (grid.omega(b, 0) == 0 || grid.omega(b, 1) == 0) mask[b] = 1;
  }
  return mask;
}

// A * (x1, x2) / |(x1, x2)|; shared by the named constructors and the
// parametric family so that the two routes round identically.
std::array<double, 2> scaled_direction(double x1, double x2, double A) {
  const double k = A / std::sqrt(x1 * x1 + x2 * x2);
  return {k * x1, k * x2};
}

void set_vector(MultivectorField& f, std::size_t bin, double v1, double v2, double P) {
  auto c = f.cell(bin);
  c[kE1] = v1;
  c[kE2] = v2;
  c[kE12] = P;
}

std::string bin_string(const FrequencyGrid& grid, std::size_t bin) {
  std::string s = "(";
  auto w = grid.omega(bin);
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(w[k]);
  }
  return s + ")";
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::string to_string(Kind kind) {
  return kind == Kind::scalar ? "scalar" : "vector_pseudovector";
}

std::string to_string(SymmetryClass cls) {
  switch (cls) {
    case SymmetryClass::generalized: return "generalized";
    case SymmetryClass::generic: return "generic";
    case SymmetryClass::ordinary: return "ordinary";
  }
  return "generalized";
}

SymmetryClass symmetry_class_from_string(const std::string& s) {
  if (s == "generalized") return SymmetryClass::generalized;
  if (s == "generic") return SymmetryClass::generic;
  if (s == "ordinary") return SymmetryClass::ordinary;
  throw Error("unknown symmetry class '" + s + "'");
}

std::string to_string(SignRule rule) { return rule == SignRule::one ? "one" : "sign-product"; }

SignRule sign_rule_from_string(const std::string& s) {
  if (s == "one" || s == "+1") return SignRule::one;
  if (s == "sign-product") return SignRule::sign_product;
  throw Error("unknown s-rule '" + s + "' (expected one | sign-product)");
}

MultiplierField::MultiplierField(FrequencyGrid grid, MultivectorField values, Kind kind,
                                 std::string name, std::vector<std::uint8_t> exceptional)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      kind_(kind),
      name_(std::move(name)),
      exceptional_(std::move(exceptional)) {}

ValidationReport MultiplierField::validate(const FrequencyGrid& grid,
                                           const MultivectorField& values, Kind kind,
                                           std::span<const std::uint8_t> exceptional) {
  ValidationReport rep;
  auto fail = [&](std::size_t bin, double residual, std::string reason) {
    if (rep.ok || residual > rep.residual) {
      rep.ok = false;
      rep.worst_bin = bin;
      rep.residual = residual;
      rep.reason = std::move(reason);
    }
  };
  if (values.dim() != 3) {
    fail(0, 0.0, "multiplier values must live in G_3");
    return rep;
  }
  if (values.shape() != grid.shape() || exceptional.size() != grid.size()) {
    fail(0, 0.0, "multiplier values/mask do not match the frequency grid");
    return rep;
  }
  if (kind == Kind::vector_pseudovector && grid.rank() > 2) {
    fail(0, 0.0, "vector multipliers are defined for 1-D and 2-D grids");
    return rep;
  }
  for (std::size_t b = 0; b < grid.size(); ++b) {
    if ((exceptional[b] != 0) != (exceptional[grid.negate(b)] != 0)) {
      fail(b, 0.0, "exceptional mask is not closed under w -> -w");
      return rep;
    }
  }

  const auto& table = ga::AlgebraTable::of(3);
  std::array<double, 8> sq{};
  for (std::size_t b = 0; b < grid.size(); ++b) {
    auto c = values.cell(b);
    // structural check applies to every bin
    double stray = 0.0;
    for (std::uint32_t k = 0; k < 8; ++k) {
      bool allowed = false;
      if (kind == Kind::scalar) {
        allowed = k == 0;
      } else {
        allowed = k == kE1 || (k == kE2 && grid.rank() >= 2) || k == kE12;
      }
      if (!allowed) stray = std::max(stray, std::abs(c[k]));
    }
    if (stray > 0.0) {
      fail(b, stray, "blade outside the " + to_string(kind) + " structure");
      continue;
    }
    if (exceptional[b]) continue;
    table.multiply(c, c, sq);
    double residual = std::abs(sq[0] - 1.0);
    for (std::size_t k = 1; k < 8; ++k) residual = std::max(residual, std::abs(sq[k]));
    if (!std::isfinite(residual) || residual > kUnitTolerance) {
      fail(b, residual, "a^2 != 1");
      continue;
    }
    if (kind == Kind::vector_pseudovector) {
      const double vn = std::sqrt(c[kE1] * c[kE1] + c[kE2] * c[kE2]);
      if (vn < 1.0 - kUnitTolerance) fail(b, 1.0 - vn, "|v| < 1");
    }
  }
  return rep;
}

MultiplierField MultiplierField::create(FrequencyGrid grid, MultivectorField values, Kind kind,
                                        std::string name,
                                        std::vector<std::uint8_t> exceptional) {
  if (exceptional.empty()) exceptional.assign(grid.size(), 0);
  if (exceptional.size() == grid.size()) {
    for (std::size_t b = 0; b < grid.size(); ++b) {
      if (grid.is_exceptional(b)) exceptional[b] = 1;
    }
  }
  if (values.shape() == grid.shape() && exceptional.size() == grid.size() && values.dim() == 3) {
    for (std::size_t b = 0; b < grid.size(); ++b) {
      if (!exceptional[b]) continue;
      auto c = values.cell(b);
      std::fill(c.begin(), c.end(), 0.0);
      if (kind == Kind::scalar) c[0] = 1.0;
    }
  }
  auto rep = validate(grid, values, kind, exceptional);
  if (!rep.ok) {
    throw Error("invalid multiplier '" + name + "': " + rep.reason + " at bin " +
                bin_string(grid, rep.worst_bin) + ", residual " + fmt_double(rep.residual));
  }
  MultivectorField v = std::move(values);
  // frequency-domain tag is part of the contract
  if (v.domain() != Domain::frequency) {
    MultivectorField tagged(v.shape(), Domain::frequency, 3);
    std::copy(v.data().begin(), v.data().end(), tagged.data().begin());
    v = std::move(tagged);
  }
  return MultiplierField(std::move(grid), std::move(v), kind, std::move(name),
                         std::move(exceptional));
}

double MultiplierField::unit_residual() const {
  const auto& table = ga::AlgebraTable::of(3);
  std::array<double, 8> sq{};
  double worst = 0.0;
  for (std::size_t b = 0; b < grid_.size(); ++b) {
    if (exceptional_[b]) continue;
    auto c = values_.cell(b);
    table.multiply(c, c, sq);
    worst = std::max(worst, std::abs(sq[0] - 1.0));
    for (std::size_t k = 1; k < 8; ++k) worst = std::max(worst, std::abs(sq[k]));
  }
  return worst;
}

MultivectorField idempotent_of(const MultiplierField& a) {
  const auto& grid = a.grid();
  MultivectorField psi(grid.shape(), Domain::frequency, 3);
  const auto& table = ga::AlgebraTable::of(3);
  std::array<double, 8> sq{};
  double worst = 0.0;
  std::size_t worst_bin = 0;
  for (std::size_t b = 0; b < grid.size(); ++b) {
    auto in = a.values().cell(b);
    auto out = psi.cell(b);
    for (std::size_t k = 0; k < 8; ++k) out[k] = 0.5 * in[k];
    out[0] += 0.5;
    if (a.is_exceptional(b)) continue;
    table.multiply(out, out, sq);
    for (std::size_t k = 0; k < 8; ++k) {
      const double r = std::abs(sq[k] - out[k]);
      if (r > worst) {
        worst = r;
        worst_bin = b;
      }
    }
  }
  if (worst > kUnitTolerance) {
    throw Error("idempotent of '" + a.name() + "' fails psi^2 = psi at bin " +
                bin_string(grid, worst_bin) + ", residual " + fmt_double(worst));
  }
  return psi;
}

MultiplierField make_hahn(const FrequencyGrid& grid) {
  require_rank(grid, 2, "make_hahn");
  auto mask = axis_mask(grid);
  MultivectorField values(grid.shape(), Domain::frequency, 3);
  for (std::size_t b = 0; b < grid.size(); ++b) {
    if (mask[b]) continue;
    const double s1 = sgn(grid.omega(b, 0));
    const double s2 = sgn(grid.omega(b, 1));
    values.cell(b)[0] = (s1 + s2 + s1 * s2 - 1.0) / 2.0;
  }
  return MultiplierField::create(grid, std::move(values), Kind::scalar, "hahn", std::move(mask));
}

MultiplierField make_hypercomplex(const FrequencyGrid& grid) {
  require_rank(grid, 2, "make_hypercomplex");
  auto mask = axis_mask(grid);
  MultivectorField values(grid.shape(), Domain::frequency, 3);
  for (std::size_t b = 0; b < grid.size(); ++b) {
    if (mask[b]) continue;
    const double s1 = sgn(grid.omega(b, 0));
    const double s2 = sgn(grid.omega(b, 1));
    set_vector(values, b, s1, s2, s1 * s2);
  }
  return MultiplierField::create(grid, std::move(values), Kind::vector_pseudovector,
                                 "hypercomplex", std::move(mask));
}

MultiplierField make_modified_hypercomplex(const FrequencyGrid& grid) {
  require_rank(grid, 2, "make_modified_hypercomplex");
  auto mask = axis_mask(grid);
  MultivectorField values(grid.shape(), Domain::frequency, 3);
  for (std::size_t b = 0; b < grid.size(); ++b) {
    if (mask[b]) continue;
    auto v = scaled_direction(sgn(grid.omega(b, 0)), sgn(grid.omega(b, 1)), 1.0);
    set_vector(values, b, v[0], v[1], 0.0);
  }
  return MultiplierField::create(grid, std::move(values), Kind::vector_pseudovector,
                                 "modified-hypercomplex", std::move(mask));
}

MultiplierField make_monogenic(const FrequencyGrid& grid) {
  require_rank(grid, 2, "make_monogenic");
  auto mask = grid_mask(grid);
  MultivectorField values(grid.shape(), Domain::frequency, 3);
  for (std::size_t b = 0; b < grid.size(); ++b) {
    if (mask[b]) continue;
    auto v = scaled_direction(static_cast<double>(grid.omega(b, 0)),
                              static_cast<double>(grid.omega(b, 1)), 1.0);
    set_vector(values, b, v[0], v[1], 0.0);
  }
  return MultiplierField::create(grid, std::move(values), Kind::vector_pseudovector,
                                 "monogenic", std::move(mask));
}

ParametricParams ParametricParams::monogenic() { return ParametricParams{}; }

ParametricParams ParametricParams::modified_hypercomplex() {
  ParametricParams p;
  p.alpha1 = 0.0;
  p.beta2 = 0.0;
  return p;
}

ParametricParams ParametricParams::hypercomplex() {
  ParametricParams p = modified_hypercomplex();
  p.A = std::numbers::sqrt2;
  p.s_rule = SignRule::sign_product;
  return p;
}

MultiplierField make_parametric(const FrequencyGrid& grid, const ParametricParams& p) {
  require_rank(grid, 2, "make_parametric");
  if (!std::isfinite(p.A) || p.A < 1.0) {
    throw Error("make_parametric: A must be >= 1 (|v|^2 - P^2 = 1 with real P), got " +
                std::to_string(p.A));
  }
  struct Term {
    double coeff;
    int axis;
    double exponent;
  };
  const std::array<Term, 4> terms{Term{p.A1, 0, p.alpha1}, Term{p.B1, 1, p.beta1},
                                  Term{p.A2, 0, p.alpha2}, Term{p.B2, 1, p.beta2}};
  for (const Term& t : terms) {
    if (!std::isfinite(t.exponent) || t.exponent < 0.0 || !std::isfinite(t.coeff)) {
      throw Error("make_parametric: exponents must be finite and >= 0");
    }
  }
  // With one shared exponent the |w|^-e factor is common to v1 and v2 and
  // cancels in the normalization, so it is left out.
  std::optional<double> shared_exponent;
  bool uniform = true;
  for (const Term& t : terms) {
    if (t.coeff == 0.0) continue;
    if (!shared_exponent) shared_exponent = t.exponent;
    else if (*shared_exponent != t.exponent) uniform = false;
  }
  const double pseudo_mag = std::sqrt((p.A - 1.0) * (p.A + 1.0));

  auto mask = grid_mask(grid);
  MultivectorField values(grid.shape(), Domain::frequency, 3);
  for (std::size_t b = 0; b < grid.size(); ++b) {
    if (mask[b]) continue;
    const std::array<long, 2> w{grid.omega(b, 0), grid.omega(b, 1)};
    const double wn = std::sqrt(static_cast<double>(w[0] * w[0] + w[1] * w[1]));
    bool undefined = false;
    auto eval = [&](const Term& t) {
      if (t.coeff == 0.0) return 0.0;
      const long wk = w[t.axis];
      // sgn(w_k) (|w_k|/|w|)^e is 0/0 at w_k = 0 unless e > 0
      if (wk == 0 && t.exponent == 0.0) undefined = true;
      const double mag = static_cast<double>(wk < 0 ? -wk : wk);
      const double ratio = uniform ? std::pow(mag, t.exponent) : std::pow(mag / wn, t.exponent);
      return t.coeff * sgn(wk) * ratio;
    };
    const double v1 = eval(terms[0]) + eval(terms[1]);
    const double v2 = eval(terms[2]) + eval(terms[3]);
    if (undefined || (v1 == 0.0 && v2 == 0.0)) {
      mask[b] = 1;
      continue;
    }
    const double s = p.s_rule == SignRule::one ? 1.0 : sgn(w[0]) * sgn(w[1]);
    if (s == 0.0 && pseudo_mag != 0.0) {
      mask[b] = 1;
      continue;
    }
    auto v = scaled_direction(v1, v2, p.A);
    set_vector(values, b, v[0], v[1], pseudo_mag == 0.0 ? 0.0 : s * pseudo_mag);
  }
  // the degenerate set must be symmetric; the term formulas are odd so it is
  for (std::size_t b = 0; b < grid.size(); ++b) {
    if (mask[b]) mask[grid.negate(b)] = 1;
  }
  return MultiplierField::create(grid, std::move(values), Kind::vector_pseudovector,
                                 "parametric", std::move(mask));
}

MultiplierField make_random_unit(const FrequencyGrid& grid, std::uint64_t seed) {
  require_rank(grid, 2, "make_random_unit");
  auto mask = grid_mask(grid);
  MultivectorField values(grid.shape(), Domain::frequency, 3);
  std::mt19937_64 rng(seed);
  // mt19937_64 output is fully specified; map it to [0, 2pi) by hand rather
  // than through a distribution whose algorithm varies between libraries
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (std::size_t b = 0; b < grid.size(); ++b) {
    if (mask[b]) continue;
    const long w1 = grid.omega(b, 0);
    const long w2 = grid.omega(b, 1);
    if (!(w2 > 0 || (w2 == 0 && w1 > 0))) continue;
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double phi = kTwoPi * u;
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    set_vector(values, b, c, s, 0.0);
    set_vector(values, grid.negate(b), -c, -s, 0.0);
  }
  return MultiplierField::create(grid, std::move(values), Kind::vector_pseudovector, "random",
                                 std::move(mask));
}

MultiplierField make_scalar_set(const FrequencyGrid& grid, const BinPredicate& in_set,
                                std::string name) {
  auto mask = grid_mask(grid);
  MultivectorField values(grid.shape(), Domain::frequency, 3);
  for (std::size_t b = 0; b < grid.size(); ++b) {
    if (mask[b]) continue;
    auto w = grid.omega(b);
    values.cell(b)[0] = in_set(w) ? 1.0 : -1.0;
  }
  return MultiplierField::create(grid, std::move(values), Kind::scalar, std::move(name),
                                 std::move(mask));
}

MultiplierField make_sign_1d(const FrequencyGrid& grid) {
  require_rank(grid, 1, "make_sign_1d");
  return make_scalar_set(
      grid, [](std::span<const long> w) { return w[0] > 0; }, "scalar-set-1d");
}

SymmetryReport symmetry_report(const MultiplierField& a) {
  SymmetryReport r;
  const auto& grid = a.grid();
  for (std::size_t b = 0; b < grid.size(); ++b) {
    if (a.is_exceptional(b)) continue;
    const std::size_t nb = grid.negate(b);
    if (a.is_exceptional(nb)) continue;
    if (a.kind() == Kind::scalar) {
      r.scalar_even = std::max(r.scalar_even, std::abs(0.5 * (a.m(b) + a.m(nb))));
      continue;
    }
    const auto v = a.v(b);
    const auto vn = a.v(nb);
    for (std::size_t k = 0; k < 3; ++k) {
      r.vector_even = std::max(r.vector_even, std::abs(0.5 * (v[k] + vn[k])));
    }
    r.pseudo_odd = std::max(r.pseudo_odd, std::abs(0.5 * (a.P(b) - a.P(nb))));
    r.pseudo_abs = std::max(r.pseudo_abs, std::abs(a.P(b)));
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    r.unit_dev = std::max(r.unit_dev, std::abs(norm - 1.0));
  }
  return r;
}

bool satisfies_generic(const SymmetryReport& r, Kind kind) {
  if (kind == Kind::scalar) return r.scalar_even <= kSymmetryTolerance;
  return r.vector_even <= kSymmetryTolerance && r.pseudo_odd <= kSymmetryTolerance;
}

bool satisfies_ordinary(const SymmetryReport& r, Kind kind) {
  if (!satisfies_generic(r, kind)) return false;
  if (kind == Kind::scalar) return true;
  return r.pseudo_abs <= kSymmetryTolerance && r.unit_dev <= kSymmetryTolerance;
}

SymmetryClass classify(const MultiplierField& a) {
  const auto r = symmetry_report(a);
  if (satisfies_ordinary(r, a.kind())) return SymmetryClass::ordinary;
  if (satisfies_generic(r, a.kind())) return SymmetryClass::generic;
  return SymmetryClass::generalized;
}

QuiverTable field_export(const MultiplierField& a) {
  if (a.kind() != Kind::vector_pseudovector) {
    throw Error("field_export needs a vector multiplier; '" + a.name() + "' is scalar");
  }
  const auto& grid = a.grid();
  if (grid.rank() != 2) throw Error("field_export needs a 2-D grid");
  QuiverTable t;
  t.rows.reserve(grid.size());
  for (std::size_t b = 0; b < grid.size(); ++b) {
    const auto v = a.v(b);
    t.rows.push_back({grid.omega(b, 0), grid.omega(b, 1), v[0], v[1], a.P(b)});
    if (a.is_exceptional(b)) continue;
    const auto vn = a.v(grid.negate(b));
    t.odd_residual = std::max({t.odd_residual, std::abs(v[0] + vn[0]), std::abs(v[1] + vn[1])});
  }
  return t;
}

void write_quiver_csv(const QuiverTable& table, std::ostream& os) {
  os << "omega1,omega2,v1,v2,P\n";
  char buf[160];
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g,%.17g\n", r.omega1, r.omega2, r.v1, r.v2,
                  r.P);
    os << buf;
  }
}

const std::vector<std::string>& known_multiplier_names() {
  static const std::vector<std::string> names{"hahn",       "hypercomplex", "modified-hypercomplex",
                                              "monogenic",  "parametric",   "random",
                                              "scalar-set-1d"};
  return names;
}

MultiplierField build(const MultiplierSpec& spec, const FrequencyGrid& grid) {
  const std::string& n = spec.name;
  if (spec.params && n != "parametric") {
    throw Error("parametric parameters are only accepted with multiplier=parametric");
  }
  if (spec.seed && n != "random") throw Error("a seed is only accepted with multiplier=random");
  if (n == "hahn") return make_hahn(grid);
  if (n == "hypercomplex") return make_hypercomplex(grid);
  if (n == "modified-hypercomplex") return make_modified_hypercomplex(grid);
  if (n == "monogenic") return make_monogenic(grid);
  if (n == "parametric") return make_parametric(grid, spec.params.value_or(ParametricParams{}));
  if (n == "random") return make_random_unit(grid, spec.seed.value_or(0));
  if (n == "scalar-set-1d") return make_sign_1d(grid);
  throw Error("unknown multiplier '" + n + "'");
}

}  // namespace clifsig::multipliers
