/**
 * @file analytic.hpp
 * @brief Extended Hilbert transform H[g] = F^-1[a(w) F[g](w)], analytic
 *        signals f_A = f/2 + H[f]/2, and their polar decomposition.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clifsig/field.hpp"
#include "clifsig/multipliers.hpp"

namespace clifsig::analytic {

/// Below this magnitude (relative to max|f|) the Hilbert part of a cell is
/// treated as zero: its orientation is undefined and flagged invalid.
inline constexpr double kZeroMagnitude = 1e-12;

/// Largest deviation from |v| = 1 accepted by reconstruct_from_orientation.
inline constexpr double kOrientationUnitTolerance = 1e-6;

struct AnalyticDecomposition {
  std::string multiplier;
  multipliers::Kind kind = multipliers::Kind::scalar;
  multipliers::SymmetryClass symmetry = multipliers::SymmetryClass::generalized;

  ScalarField f;
  MultivectorField fH{{1}, Domain::spatial};
  MultivectorField fA{{1}, Domain::spatial};

  // scalar kind: fH = fH_re + I3 fH_im
  std::optional<ScalarField> fH_re;
  std::optional<ScalarField> fH_im;

  // vector kind: fH = I3 V + W, V and W real vector fields on e1, e2, e3
  std::optional<VectorField3> V;
  std::optional<VectorField3> W;

  // generic (and ordinary) class only
  std::optional<ScalarField> fH_norm;  ///< |fH_im| or |V|
  std::optional<ScalarField> R;
  std::optional<ScalarField> theta;
  std::optional<VectorField3> vhat;  ///< vector kind only
  std::optional<ScalarField> sigma;  ///< vector kind only
  std::optional<ScalarField> kappa;  ///< vector kind only
  std::vector<std::uint8_t> invalid;  ///< cells whose Hilbert part vanishes

  bool has_polar() const { return R.has_value(); }

  /// sigma(x); throws for scalar-kind or non-generic decompositions.
  const ScalarField& orientation_angle() const;
  /// kappa(x); throws for scalar-kind or non-generic decompositions.
  const ScalarField& elevation_angle() const;
  /// Unit Hilbert direction at a cell: I3 sgn(fH_im) or I3 vhat.
  ga::Multivector unit_hilbert(std::size_t cell) const;
};

struct PartialTransforms {
  ScalarField fH1, fH2, fHT;  ///< partial and total Hilbert transforms
  ScalarField fR1, fR2;       ///< Riesz transforms
};

struct Reconstruction {
  ScalarField f;
  /// Largest non-scalar coefficient left after applying H; zero up to
  /// round-off when the input came from a real signal.
  double nonscalar_residual = 0.0;
};

struct ExceptionalSplit {
  ScalarField kept;     ///< f with exceptional-bin content removed
  ScalarField removed;  ///< the removed content; kept + removed == f
};

MultivectorField extended_hilbert(const MultivectorField& g, const multipliers::MultiplierField& a);
MultivectorField extended_hilbert(const ScalarField& f, const multipliers::MultiplierField& a);

MultivectorField analytic_signal(const ScalarField& f, const multipliers::MultiplierField& a);

/// Applies H to fH and returns the scalar part (H is its own inverse).
Reconstruction reconstruct(const MultivectorField& fH, const multipliers::MultiplierField& a);

AnalyticDecomposition decompose(const ScalarField& f, const multipliers::MultiplierField& a);

/// Partial/total Hilbert and Riesz transforms of a 2-D real field.
PartialTransforms partial_transforms(const ScalarField& f);

/// Scalar part of H[I3 vhat] for an ordinary multiplier. Cells of vhat must
/// be unit vectors or exactly zero (undefined orientation).
ScalarField reconstruct_from_orientation(const VectorField3& vhat,
                                         const multipliers::MultiplierField& a);

/// 1-D analytic signal with the sgn(w) multiplier.
AnalyticDecomposition classical_1d(const ScalarField& f);

/// Splits off the signal content living on the multiplier's exceptional bins.
ExceptionalSplit remove_exceptional(const ScalarField& f, const multipliers::MultiplierField& a);

}  // namespace clifsig::analytic
