/**
 * @file multipliers.hpp
 * @brief Fourier multipliers a(w) with a^2 = 1 and their idempotents
 *        psi(w) = (1 + a(w)) / 2.
 *
 * Two kinds are built: scalar multipliers m(w) = +-1, and vector +
 * pseudovector multipliers a = v(w) + P(w) e1e2 with P^2 = |v|^2 - 1.
 *
 * Bins where a constructor's formula is undefined (DC, Nyquist, sgn(0) on
 * an axis, zero direction vector) are marked exceptional. There a is set to
 * 1 for the scalar kind and to 0 for the vector kind, and those bins are
 * skipped by validation and classification.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clifsig/field.hpp"
#include "clifsig/spectral.hpp"

namespace clifsig::multipliers {

enum class Kind { scalar, vector_pseudovector };
enum class SymmetryClass { generalized, generic, ordinary };

std::string to_string(Kind kind);
std::string to_string(SymmetryClass cls);
SymmetryClass symmetry_class_from_string(const std::string& s);

/// Tolerance on a^2 = 1 and on symmetry residuals; constructors are exact
/// sign arithmetic so anything larger is a construction error.
inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kSymmetryTolerance = 1e-12;

struct ValidationReport {
  bool ok = true;
  std::size_t worst_bin = 0;
  double residual = 0.0;
  std::string reason;
};

class MultiplierField {
 public:
  /// Validates and returns a multiplier; throws clifsig::Error naming the
  /// worst bin and its residual on failure. Exceptional bins are reset to
  /// the kind's convention value, and the grid's own exceptional bins are
  /// always included in the mask.
  static MultiplierField create(spectral::FrequencyGrid grid, MultivectorField values,
                                Kind kind, std::string name,
                                std::vector<std::uint8_t> exceptional);

  static ValidationReport validate(const spectral::FrequencyGrid& grid,
                                   const MultivectorField& values, Kind kind,
                                   std::span<const std::uint8_t> exceptional);

  const spectral::FrequencyGrid& grid() const { return grid_; }
  const MultivectorField& values() const { return values_; }
  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  bool is_exceptional(std::size_t bin) const { return exceptional_[bin] != 0; }
  const std::vector<std::uint8_t>& exceptional_mask() const { return exceptional_; }

  ga::Multivector at(std::size_t bin) const { return values_.at(bin); }
  /// Scalar multiplier value m(w).
  double m(std::size_t bin) const { return values_.cell(bin)[0]; }
  /// Vector part (e1, e2, e3 coefficients).
  std::array<double, 3> v(std::size_t bin) const {
    auto c = values_.cell(bin);
    return {c[0b001], c[0b010], c[0b100]};
  }
  /// Coefficient of the pseudovector I_2 = e1e2.
  double P(std::size_t bin) const { return values_.cell(bin)[0b011]; }

  /// max |a(w)^2 - 1| over non-exceptional bins.
  double unit_residual() const;

 private:
  MultiplierField(spectral::FrequencyGrid grid, MultivectorField values, Kind kind,
                  std::string name, std::vector<std::uint8_t> exceptional);

  spectral::FrequencyGrid grid_;
  MultivectorField values_;
  Kind kind_;
  std::string name_;
  std::vector<std::uint8_t> exceptional_;
};

/// Per-bin (1 + a)/2. Throws if psi^2 != psi on a non-exceptional bin.
MultivectorField idempotent_of(const MultiplierField& a);

MultiplierField make_hahn(const spectral::FrequencyGrid& grid);
MultiplierField make_hypercomplex(const spectral::FrequencyGrid& grid);
MultiplierField make_modified_hypercomplex(const spectral::FrequencyGrid& grid);
MultiplierField make_monogenic(const spectral::FrequencyGrid& grid);

enum class SignRule { one, sign_product };
std::string to_string(SignRule rule);
SignRule sign_rule_from_string(const std::string& s);

/// v_G = A * (v1, v2) / |(v1, v2)| with
///   v1 = A1 sgn(w1) (|w1|/|w|)^alpha1 + B1 sgn(w2) (|w2|/|w|)^beta1
///   v2 = A2 sgn(w1) (|w1|/|w|)^alpha2 + B2 sgn(w2) (|w2|/|w|)^beta2
/// and P = s(w) sqrt(A^2 - 1). Defaults reproduce the monogenic multiplier.
struct ParametricParams {
  double A = 1.0;
  double A1 = 1.0, A2 = 0.0, B1 = 0.0, B2 = 1.0;
  double alpha1 = 1.0, alpha2 = 0.0, beta1 = 0.0, beta2 = 1.0;
  SignRule s_rule = SignRule::one;

  static ParametricParams monogenic();
  static ParametricParams modified_hypercomplex();
  static ParametricParams hypercomplex();
};

MultiplierField make_parametric(const spectral::FrequencyGrid& grid, const ParametricParams& p);

/// Random unit directions v = (cos phi, sin phi) on the half-plane
/// w2 > 0 or (w2 == 0, w1 > 0), mirrored as v(-w) = -v(w).
MultiplierField make_random_unit(const spectral::FrequencyGrid& grid, std::uint64_t seed);

using BinPredicate = std::function<bool(std::span<const long> omega)>;

/// a = 1 on the set, -1 on its complement.
MultiplierField make_scalar_set(const spectral::FrequencyGrid& grid, const BinPredicate& in_set,
                                std::string name = "scalar-set");

/// The classical sgn(w) multiplier on a 1-D grid: the set {w > 0}.
MultiplierField make_sign_1d(const spectral::FrequencyGrid& grid);

/// Even/odd residuals over bin pairs (w, -w), both non-exceptional.
struct SymmetryReport {
  double scalar_even = 0.0;  ///< max |m_e|
  double vector_even = 0.0;  ///< max |v_e|
  double pseudo_odd = 0.0;   ///< max |P_o|
  double pseudo_abs = 0.0;   ///< max |P|
  double unit_dev = 0.0;     ///< max | |v| - 1 |
};

SymmetryReport symmetry_report(const MultiplierField& a);
bool satisfies_generic(const SymmetryReport& r, Kind kind);
bool satisfies_ordinary(const SymmetryReport& r, Kind kind);
SymmetryClass classify(const MultiplierField& a);

struct QuiverRow {
  long omega1, omega2;
  double v1, v2, P;
};

struct QuiverTable {
  std::vector<QuiverRow> rows;
  /// max |v(-w) + v(w)| over non-exceptional pairs.
  double odd_residual = 0.0;
};

/// Vector-field samples of a vector-kind multiplier, one row per bin.
QuiverTable field_export(const MultiplierField& a);
void write_quiver_csv(const QuiverTable& table, std::ostream& os);

/// Name + options that fully determine a multiplier on a given grid.
struct MultiplierSpec {
  std::string name = "monogenic";
  std::optional<std::uint64_t> seed;
  std::optional<ParametricParams> params;
};

/// Builds hahn | hypercomplex | modified-hypercomplex | monogenic |
/// parametric | random | scalar-set-1d.
MultiplierField build(const MultiplierSpec& spec, const spectral::FrequencyGrid& grid);

const std::vector<std::string>& known_multiplier_names();

}  // namespace clifsig::multipliers
