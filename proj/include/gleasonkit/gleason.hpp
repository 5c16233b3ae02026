#pragma once

#include <cstdint>
#include <optional>

#include "gleasonkit/contexts.hpp"

namespace gleasonkit {

/// Least-squares lift of a section to a Hermitian operator.
struct ReconstructionResult {
  HermitianOperator state;  // the minimum-norm minimizer; a density operator iff is_state
  double residual = 0.0;
  Index completeness_rank = 0;
  double psd_defect = 0.0;  // most negative eigenvalue, 0 if none
  bool is_state = false;

  std::optional<DensityOperator> density() const;
};

/// Rank of the real span of all projections in the poset (at most d^2).
Index informational_completeness_rank(const ContextPoset& poset, const Tolerances& tol = {});

/// Throws "invalid-section" if validate_section reports any violation.
ReconstructionResult reconstruct_state(const Section& s, const Tolerances& tol = {});

struct CounterexampleReport {
  std::size_t n_contexts = 0;
  int exponent = 3;
  std::uint64_t seed = 0;
  bool section_valid = false;
  /// Least-squares residual of the best Hermitian fit, all d^2 parameters free.
  double residual = 0.0;
  /// Same minimum from the trace-one Bloch parametrization (3x3 normal equations).
  double closed_form_residual = 0.0;
  Index completeness_rank = 0;
  double psd_defect = 0.0;
  HermitianOperator best_fit;
  /// residual >= 0.01 whenever n_contexts >= 20 (vacuous below).
  bool residual_bound_holds = false;
};

/// Frame function of `exponent` along z over n_contexts Haar-random qubit
/// contexts, checked as a section and fitted by linear functionals.
/// Throws "bad-n-contexts" for n_contexts < 4.
CounterexampleReport demonstrate_qubit_failure(std::size_t n_contexts, std::uint64_t seed,
                                               int exponent = 3, const Tolerances& tol = {});

/// Section values of the frame function over a rank-one qubit poset.
Section frame_function_section(const QubitFrameFunctionSpec& spec, const ContextPoset& poset);

}  // namespace gleasonkit
