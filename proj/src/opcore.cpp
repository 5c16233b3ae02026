#include "gleasonkit/opcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gleasonkit {

namespace {

void require_square(const ComplexMatrix& m, Index n) {
  if (m.rows() != n || m.cols() != n)
    throw Error("bad-dims", "expected " + std::to_string(n) + "x" + std::to_string(n) + ", got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

}  // namespace

HermitianOperator::HermitianOperator(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw Error("bad-dims", "hermitian operator must be square");
  if (!all_finite(m)) throw Error("not-finite");
  if (!is_hermitian(m, tol.hermiticity)) throw Error("not-hermitian");
  matrix_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::symmetrized(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error("bad-dims", "hermitian operator must be square");
  HermitianOperator h;
  h.matrix_ = 0.5 * (m + m.adjoint());
  return h;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool all_finite(const ComplexMatrix& m) {
  for (Index k = 0; k < m.size(); ++k) {
    const Complex z = m.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced, Dims dims) {
  const Index d1 = dims.first, d2 = dims.second;
  if (d1 < 1 || d2 < 1) throw Error("bad-dims");
  require_square(m, d1 * d2);
  if (traced == Subsystem::Second) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (Index i = 0; i < d1; ++i)
      for (Index j = 0; j < d1; ++j)
        for (Index k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Index i = 0; i < d1; ++i) out += m.block(i * d2, i * d2, d2, d2);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem transposed, Dims dims) {
  const Index d1 = dims.first, d2 = dims.second;
  if (d1 < 1 || d2 < 1) throw Error("bad-dims");
  require_square(m, d1 * d2);
  ComplexMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d1; ++j) {
      if (transposed == Subsystem::Second)
        out.block(i * d2, j * d2, d2, d2) = m.block(i * d2, j * d2, d2, d2).transpose();
      else
        out.block(i * d2, j * d2, d2, d2) = m.block(j * d2, i * d2, d2, d2);
    }
  return out;
}

EigenDecomposition eig_hermitian(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw Error("bad-dims", "eigendecomposition needs a square matrix");
  if (!is_hermitian(m, tol.hermiticity)) throw Error("not-hermitian");
  return eig_hermitian(HermitianOperator::symmetrized(m));
}

EigenDecomposition eig_hermitian(const HermitianOperator& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) throw Error("eig-failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const HermitianOperator& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eig-failed");
  return solver.eigenvalues()(0);
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("bad-dims");
  // tr[A^dagger B] = sum_ij conj(A_ij) B_ij
  return (a.conjugate().cwiseProduct(b)).sum();
}

std::vector<ComplexMatrix> hermitian_basis(Index d) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(d * d));
  const double s = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < d; ++i) basis.push_back(matrix_unit(d, i, i));
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      ComplexMatrix sym = ComplexMatrix::Zero(d, d);
      sym(i, j) = sym(j, i) = s;
      basis.push_back(sym);
      ComplexMatrix anti = ComplexMatrix::Zero(d, d);
      anti(i, j) = Complex(0, s);
      anti(j, i) = Complex(0, -s);
      basis.push_back(anti);
    }
  return basis;
}

RealVector hermitian_coordinates(const ComplexMatrix& a) {
  const Index d = a.rows();
  RealVector x(d * d);
  const double r2 = std::sqrt(2.0);
  Index k = 0;
  for (Index i = 0; i < d; ++i) x(k++) = a(i, i).real();
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      // average the two triangles so slightly non-Hermitian input is projected
      const Complex z = 0.5 * (a(i, j) + std::conj(a(j, i)));
      x(k++) = r2 * z.real();
      x(k++) = r2 * z.imag();
    }
  return x;
}

ComplexMatrix from_hermitian_coordinates(const RealVector& x, Index d) {
  if (x.size() != d * d) throw Error("bad-dims");
  ComplexMatrix m(d, d);
  const double s = 1.0 / std::sqrt(2.0);
  Index k = 0;
  for (Index i = 0; i < d; ++i) m(i, i) = x(k++);
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      const Complex z(s * x(k), s * x(k + 1));
      k += 2;
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  return m;
}

LstsqResult solve_hermitian_lstsq(std::span<const TraceConstraint> constraints, Index dim,
                                  const Tolerances& tol) {
  if (constraints.empty()) throw Error("no-constraints");
  const Index n = dim * dim;
  const auto rows = static_cast<Index>(constraints.size());
  RealMatrix design(rows, n);
  RealVector rhs(rows);
  for (Index r = 0; r < rows; ++r) {
    const auto& c = constraints[static_cast<std::size_t>(r)];
    if (c.observable.rows() != dim || c.observable.cols() != dim) throw Error("bad-dims");
    design.row(r) = hermitian_coordinates(c.observable).transpose();
    rhs(r) = c.value;
  }
  Eigen::JacobiSVD<RealMatrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(tol.rank);  // relative to the largest singular value
  RealVector x = svd.solve(rhs);
  const double residual = (design * x - rhs).squaredNorm();
  return {HermitianOperator::symmetrized(from_hermitian_coordinates(x, dim)), residual, svd.rank()};
}

Index hermitian_span_rank(std::span<const ComplexMatrix> ops, Index dim, const Tolerances& tol) {
  if (ops.empty()) return 0;
  RealMatrix design(static_cast<Index>(ops.size()), dim * dim);
  for (std::size_t r = 0; r < ops.size(); ++r) {
    if (ops[r].rows() != dim) throw Error("bad-dims");
    design.row(static_cast<Index>(r)) = hermitian_coordinates(ops[r]).transpose();
  }
  Eigen::JacobiSVD<RealMatrix> svd(design);
  svd.setThreshold(tol.rank);
  return svd.rank();
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix matrix_unit(Index d, Index i, Index j) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix max_entangled_projector(Index d) {
  ComplexVector omega = ComplexVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) omega(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return omega * omega.adjoint();
}

ComplexMatrix swap_operator(Index d) {
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) m(i * d + j, j * d + i) = 1.0;
  return m;
}

}  // namespace gleasonkit
