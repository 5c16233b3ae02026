#include "gleasonkit/states.hpp"

#include <cmath>

namespace gleasonkit {

DensityOperator::DensityOperator(const ComplexMatrix& m, const Tolerances& tol)
    : DensityOperator(
          [&] {
            try {
              return HermitianOperator(m, tol);
            } catch (const Error& e) {
              throw Error("not-a-state", e.what());
            }
          }(),
          tol) {}

DensityOperator::DensityOperator(const HermitianOperator& h, const Tolerances& tol) : op_(h) {
  if (std::abs(op_.trace() - 1.0) > tol.probability)
    throw Error("not-a-state", "trace " + std::to_string(op_.trace()));
  const double lmin = min_eigenvalue(op_);
  if (lmin < tol.psd_cutoff) throw Error("not-a-state", "min eigenvalue " + std::to_string(lmin));
}

DensityOperator DensityOperator::maximally_mixed(Index d) {
  return DensityOperator(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  const ComplexVector unit = psi / psi.norm();
  return DensityOperator(HermitianOperator::symmetrized(unit * unit.adjoint()));
}

Complex DensityOperator::expectation(const ComplexMatrix& a) const {
  if (a.rows() != dim() || a.cols() != dim()) throw Error("bad-dims");
  return (op_.matrix().transpose().cwiseProduct(a)).sum();
}

}  // namespace gleasonkit
