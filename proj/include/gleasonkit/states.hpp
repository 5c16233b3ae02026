#pragma once

#include "gleasonkit/opcore.hpp"

namespace gleasonkit {

/// Positive semidefinite unit-trace operator. Construction throws
/// "not-a-state" when either property fails beyond tolerance.
class DensityOperator {
 public:
  explicit DensityOperator(const ComplexMatrix& m, const Tolerances& tol = {});
  explicit DensityOperator(const HermitianOperator& h, const Tolerances& tol = {});

  static DensityOperator maximally_mixed(Index d);
  static DensityOperator pure(const ComplexVector& psi);

  Index dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const ComplexMatrix& matrix() const { return op_.matrix(); }

  /// sigma(a) = tr[rho a]
  Complex expectation(const ComplexMatrix& a) const;

 private:
  HermitianOperator op_;
};

}  // namespace gleasonkit
