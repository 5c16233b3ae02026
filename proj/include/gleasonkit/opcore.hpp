#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gleasonkit/error.hpp"
#include "gleasonkit/tolerances.hpp"

namespace gleasonkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Self-adjoint square matrix. The stored matrix is exactly Hermitian: the
/// constructor checks the input against the hermiticity tolerance and then
/// keeps (M + M^dagger) / 2.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const ComplexMatrix& m, const Tolerances& tol = {});

  /// Symmetrizes without checking; for matrices that are Hermitian up to rounding.
  static HermitianOperator symmetrized(const ComplexMatrix& m);

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }

 private:
  ComplexMatrix matrix_;
};

struct EigenDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns

  double min_eigenvalue() const { return eigenvalues(0); }
};

enum class Subsystem { First = 1, Second = 2 };

struct Dims {
  Index first;
  Index second;

  Index total() const { return first * second; }
};

bool is_hermitian(const ComplexMatrix& m, double tol);
bool all_finite(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Traces out `traced` from an operator on C^{d1} (x) C^{d2}.
ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced, Dims dims);

/// Transposes the `transposed` tensor factor in the computational basis.
ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem transposed, Dims dims);

/// Throws "not-hermitian" when m deviates from m^dagger beyond tolerance.
EigenDecomposition eig_hermitian(const ComplexMatrix& m, const Tolerances& tol = {});
EigenDecomposition eig_hermitian(const HermitianOperator& m);

double min_eigenvalue(const HermitianOperator& m);

/// tr[A^dagger B]
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Real embedding of the Hermitian d x d matrices: an orthonormal basis
// {E_ii, (E_ij + E_ji)/sqrt2, i(E_ij - E_ji)/sqrt2 : i < j} so that
// tr[X A] = <coords(X), coords(A)> for Hermitian X, A.
std::vector<ComplexMatrix> hermitian_basis(Index d);
RealVector hermitian_coordinates(const ComplexMatrix& a);
ComplexMatrix from_hermitian_coordinates(const RealVector& x, Index d);

/// tr[X A] = value
struct TraceConstraint {
  ComplexMatrix observable;
  double value;
};

struct LstsqResult {
  HermitianOperator solution;
  double residual;  // sum of squared constraint violations at the minimizer
  Index rank;       // rank of the constraint design inside the d^2-dim Hermitian space
};

/// Minimum-Frobenius-norm Hermitian X minimizing sum_i (tr[X A_i] - b_i)^2.
LstsqResult solve_hermitian_lstsq(std::span<const TraceConstraint> constraints, Index dim,
                                  const Tolerances& tol = {});

/// Numerical rank of the real span of the given Hermitian matrices.
Index hermitian_span_rank(std::span<const ComplexMatrix> ops, Index dim, const Tolerances& tol = {});

// Common fixed operators.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix matrix_unit(Index d, Index i, Index j);
/// |Omega><Omega| with Omega = sum_i |ii>/sqrt(d).
ComplexMatrix max_entangled_projector(Index d);
ComplexMatrix swap_operator(Index d);

}  // namespace gleasonkit
