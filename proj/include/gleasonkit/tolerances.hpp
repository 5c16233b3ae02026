#pragma once

namespace gleasonkit {

/// Numerical cutoffs used throughout the library. Every check that compares
/// floating-point quantities against an exact identity reads its threshold
/// from here.
struct Tolerances {
  /// Max-abs entry difference between M and M^dagger.
  double hermiticity = 1e-12;
  /// A minimum eigenvalue at or above this counts as positive semidefinite.
  double psd_cutoff = -1e-9;
  /// Reconstruction residual / round-trip bound.
  double reconstruction_residual = 1e-8;
  /// Idempotence, orthogonality and completeness of projections, and
  /// entrywise equality of projections shared between contexts.
  double projection = 1e-10;
  /// Range and normalization of probability vectors.
  double probability = 1e-10;
  /// Restriction (coarse-graining) and cross-context agreement of sections.
  double consistency = 1e-9;
  /// Relative singular-value cutoff for numerical rank.
  double rank = 1e-10;
  /// Unit trace of functional operators.
  double normalization = 1e-9;
  /// A product expectation below this is a certified violation of block positivity.
  double block_positivity = -1e-7;
  /// Superoperator identity checks (homomorphism, orientation equation, dilations).
  double identity = 1e-9;
};

}  // namespace gleasonkit
