#include "gleasonkit/jordan.hpp"

#include <algorithm>
#include <cmath>

namespace gleasonkit {

namespace {

const Complex kHalfI(0.0, 0.5);

ComplexMatrix unit(Index d, Index k) {
  // column-stacking index k = i + j*d
  return matrix_unit(d, k % d, k / d);
}

}  // namespace

ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw Error("bad-dims");
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

SuperOperator::SuperOperator(Index in_dim, Index out_dim, ComplexMatrix matrix)
    : in_dim_(in_dim), out_dim_(out_dim), matrix_(std::move(matrix)) {
  if (in_dim_ < 1 || out_dim_ < 1 || matrix_.rows() != out_dim_ * out_dim_ ||
      matrix_.cols() != in_dim_ * in_dim_)
    throw Error("bad-dims", "superoperator shape does not match in/out dims");
}

SuperOperator SuperOperator::from_map(Index in_dim, Index out_dim, const Map& f) {
  ComplexMatrix m(out_dim * out_dim, in_dim * in_dim);
  for (Index k = 0; k < in_dim * in_dim; ++k) {
    const ComplexMatrix image = f(unit(in_dim, k));
    if (image.rows() != out_dim || image.cols() != out_dim) throw Error("bad-dims");
    m.col(k) = vec(image);
  }
  return SuperOperator(in_dim, out_dim, std::move(m));
}

ComplexMatrix SuperOperator::apply(const ComplexMatrix& a) const {
  if (a.rows() != in_dim_ || a.cols() != in_dim_) throw Error("bad-dims");
  return unvec(matrix_ * vec(a), out_dim_, out_dim_);
}

SuperOperator SuperOperator::after(const SuperOperator& inner) const {
  if (inner.out_dim() != in_dim_) throw Error("bad-dims");
  return SuperOperator(inner.in_dim(), out_dim_, matrix_ * inner.matrix());
}

SuperOperator identity_map(Index d) {
  return SuperOperator(d, d, ComplexMatrix::Identity(d * d, d * d));
}

SuperOperator transpose_map(Index d) {
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) m(j + i * d, i + j * d) = 1.0;
  return SuperOperator(d, d, std::move(m));
}

SuperOperator unitary_conjugation(const ComplexMatrix& u) {
  return SuperOperator(u.cols(), u.rows(), kron(ComplexMatrix(u.conjugate()), u));
}

SuperOperator depolarizing_map(Index d) {
  return SuperOperator::from_map(d, d, [d](const ComplexMatrix& a) -> ComplexMatrix {
    return a.trace() * ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  });
}

SuperOperator kraus_map(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw Error("bad-dims", "no Kraus operators");
  const Index out = kraus.front().rows(), in = kraus.front().cols();
  ComplexMatrix m = ComplexMatrix::Zero(out * out, in * in);
  for (const auto& k : kraus) {
    if (k.rows() != out || k.cols() != in) throw Error("bad-dims");
    m += kron(ComplexMatrix(k.conjugate()), k);
  }
  return SuperOperator(in, out, std::move(m));
}

SuperOperator direct_sum_map(const SuperOperator& first, const SuperOperator& second) {
  if (first.in_dim() != second.in_dim()) throw Error("bad-dims");
  const Index n1 = first.out_dim(), n2 = second.out_dim();
  return SuperOperator::from_map(first.in_dim(), n1 + n2, [&](const ComplexMatrix& a) -> ComplexMatrix {
    ComplexMatrix out = ComplexMatrix::Zero(n1 + n2, n1 + n2);
    out.topLeftCorner(n1, n1) = first.apply(a);
    out.bottomRightCorner(n2, n2) = second.apply(a);
    return out;
  });
}

SuperOperator random_cp_map(Index in_dim, Index out_dim, Index kraus_rank, Rng& rng, bool trace_preserving) {
  if (kraus_rank < 1) throw Error("bad-dims", "need at least one Kraus operator");
  if (trace_preserving && kraus_rank * out_dim < in_dim)
    throw Error("bad-dims", "trace preservation needs kraus_rank * out_dim >= in_dim");
  std::vector<ComplexMatrix> kraus;
  for (Index k = 0; k < kraus_rank; ++k) kraus.push_back(ginibre(out_dim, in_dim, rng));
  if (trace_preserving) {
    ComplexMatrix s = ComplexMatrix::Zero(in_dim, in_dim);
    for (const auto& k : kraus) s += k.adjoint() * k;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
    const ComplexMatrix inv_sqrt = es.operatorInverseSqrt();
    for (auto& k : kraus) k = (k * inv_sqrt).eval();
  }
  return kraus_map(kraus);
}

ComplexMatrix choi_matrix(const SuperOperator& phi) {
  const Index n = phi.in_dim(), m = phi.out_dim();
  ComplexMatrix c = ComplexMatrix::Zero(n * m, n * m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) c.block(i * m, j * m, m, m) = phi.apply(matrix_unit(n, i, j));
  return c;
}

SuperOperator superop_from_choi(const ComplexMatrix& choi, Index in_dim, Index out_dim) {
  if (choi.rows() != in_dim * out_dim || choi.cols() != in_dim * out_dim) throw Error("bad-dims");
  ComplexMatrix m(out_dim * out_dim, in_dim * in_dim);
  for (Index i = 0; i < in_dim; ++i)
    for (Index j = 0; j < in_dim; ++j)
      m.col(i + j * in_dim) = vec(choi.block(i * out_dim, j * out_dim, out_dim, out_dim));
  return SuperOperator(in_dim, out_dim, std::move(m));
}

ComplexMatrix jordan_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("bad-dims");
  return 0.5 * (a * b + b * a);
}

HermitianOperator jordan_product(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator::symmetrized(jordan_product(a.matrix(), b.matrix()));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("bad-dims");
  return a * b - b * a;
}

SuperOperator psi(const HermitianOperator& a, bool star) {
  const Index d = a.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  // vec(ab) = (I (x) a) vec(b), vec(ba) = (a^T (x) I) vec(b)
  const ComplexMatrix ad = kron(id, a.matrix()) - kron(ComplexMatrix(a.matrix().transpose()), id);
  return SuperOperator(d, d, (star ? -kHalfI : kHalfI) * ad);
}

SuperOperator jordan_multiplication(const HermitianOperator& a) {
  const Index d = a.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  return SuperOperator(d, d, 0.5 * (kron(id, a.matrix()) + kron(ComplexMatrix(a.matrix().transpose()), id)));
}

HomReport check_jordan_star_hom(const SuperOperator& phi, const Tolerances& tol) {
  const Index n = phi.in_dim();
  const auto basis = hermitian_basis(n);
  std::vector<ComplexMatrix> images;
  images.reserve(basis.size());
  for (const auto& b : basis) images.push_back(phi.apply(b));

  HomReport r;
  for (std::size_t x = 0; x < basis.size(); ++x)
    for (std::size_t y = x; y < basis.size(); ++y) {
      const ComplexMatrix lhs = phi.apply(jordan_product(basis[x], basis[y]));
      r.jordan_defect = std::max(r.jordan_defect, (lhs - jordan_product(images[x], images[y])).norm());
    }
  for (Index k = 0; k < n * n; ++k) {
    const ComplexMatrix e = unit(n, k);
    r.star_defect = std::max(r.star_defect, (phi.apply(e.adjoint()) - phi.apply(e).adjoint()).norm());
  }
  r.passes = r.jordan_defect <= tol.identity && r.star_defect <= tol.identity;
  return r;
}

const char* to_string(CommutatorCharacter c) {
  switch (c) {
    case CommutatorCharacter::Hom: return "Hom";
    case CommutatorCharacter::AntiHom: return "AntiHom";
    case CommutatorCharacter::Mixed: return "Mixed";
  }
  return "unknown";
}

CommutatorCharacter commutator_character(const SuperOperator& phi, const Tolerances& tol) {
  if (!check_jordan_star_hom(phi, tol).passes) throw Error("not-jordan-hom");
  const auto basis = hermitian_basis(phi.in_dim());
  std::vector<ComplexMatrix> images;
  for (const auto& b : basis) images.push_back(phi.apply(b));
  double hom = 0.0, anti = 0.0;
  for (std::size_t x = 0; x < basis.size(); ++x)
    for (std::size_t y = x + 1; y < basis.size(); ++y) {
      const ComplexMatrix lhs = phi.apply(commutator(basis[x], basis[y]));
      const ComplexMatrix rhs = commutator(images[x], images[y]);
      hom = std::max(hom, (lhs - rhs).norm());
      anti = std::max(anti, (lhs + rhs).norm());
    }
  if (hom <= tol.identity) return CommutatorCharacter::Hom;
  if (anti <= tol.identity) return CommutatorCharacter::AntiHom;
  return CommutatorCharacter::Mixed;
}

OrientationEqReport check_time_orientation_eq(const SuperOperator& phi, Index d1, Index d2, bool starred,
                                              const Tolerances& tol) {
  if (phi.in_dim() != d1 || phi.out_dim() != d2) throw Error("bad-dims");
  const auto basis = hermitian_basis(d1);
  std::vector<ComplexMatrix> images;
  for (const auto& b : basis) images.push_back(phi.apply(b));
  const Complex in_factor = starred ? -kHalfI : kHalfI;
  OrientationEqReport r;
  for (std::size_t x = 0; x < basis.size(); ++x)
    for (std::size_t y = 0; y < basis.size(); ++y) {
      const ComplexMatrix lhs = phi.apply(in_factor * commutator(basis[x], basis[y]));
      const ComplexMatrix rhs = kHalfI * commutator(images[x], images[y]);
      r.max_defect = std::max(r.max_defect, (lhs - rhs).norm());
    }
  r.passes = r.max_defect <= tol.identity;
  return r;
}

ComplexMatrix represent(const DilationTriple& t, const ComplexMatrix& a) {
  const ComplexVector coeffs = vec(a);
  if (static_cast<std::size_t>(coeffs.size()) != t.representation.size()) throw Error("bad-dims");
  ComplexMatrix out = ComplexMatrix::Zero(t.representation.front().rows(), t.representation.front().cols());
  for (Index k = 0; k < coeffs.size(); ++k)
    if (coeffs(k) != Complex(0.0)) out += coeffs(k) * t.representation[static_cast<std::size_t>(k)];
  return out;
}

ComplexMatrix compress(const DilationTriple& t, const ComplexMatrix& a) {
  return t.isometry_or_vector.adjoint() * represent(t, a) * t.isometry_or_vector;
}

DilationTriple naimark_dilate(const Context& c, const RealVector& probs, const Tolerances& tol) {
  const auto m = static_cast<Index>(c.outcomes());
  if (probs.size() != m) throw Error("bad-probs", "length differs from outcome count");
  if (std::abs(probs.sum() - 1.0) > tol.probability) throw Error("bad-probs", "does not sum to 1");
  for (Index i = 0; i < m; ++i)
    if (!(probs(i) >= -tol.probability && probs(i) <= 1.0 + tol.probability))
      throw Error("bad-probs", "entry out of [0,1]");

  DilationTriple t;
  t.ancilla_dim = m;
  t.isometry_or_vector = ComplexMatrix(m, 1);
  for (Index i = 0; i < m; ++i) t.isometry_or_vector(i, 0) = std::sqrt(std::max(0.0, probs(i)));
  ComplexMatrix total = ComplexMatrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    t.representation.push_back(matrix_unit(m, i, i));
    total += t.representation.back();
  }

  const ComplexMatrix& v = t.isometry_or_vector;
  double err = (total - ComplexMatrix::Identity(m, m)).norm();  // unital
  for (Index i = 0; i < m; ++i) {
    const auto& e = t.representation[static_cast<std::size_t>(i)];
    err = std::max(err, std::abs((v.adjoint() * e * v)(0, 0).real() - probs(i)));
    err = std::max(err, (e * e - e).norm());
    for (Index j = i + 1; j < m; ++j)  // orthogonality preserved
      err = std::max(err, (e * t.representation[static_cast<std::size_t>(j)]).norm());
  }
  t.verification_error = err;
  return t;
}

DilationTriple stinespring_dilate(const SuperOperator& phi, Index d1, Index d2, const Tolerances& tol) {
  if (phi.in_dim() != d1 || phi.out_dim() != d2) throw Error("bad-dims");
  const ComplexMatrix choi = choi_matrix(phi);
  const EigenDecomposition eig = eig_hermitian(HermitianOperator::symmetrized(choi));
  if (eig.min_eigenvalue() < tol.psd_cutoff)
    throw Error("not-cp", "Choi min eigenvalue " + std::to_string(eig.min_eigenvalue()));

  const double lmax = std::max(eig.eigenvalues.maxCoeff(), 0.0);
  std::vector<Index> kept;
  for (Index k = 0; k < eig.eigenvalues.size(); ++k)
    if (eig.eigenvalues(k) > tol.rank * lmax) kept.push_back(k);
  const auto r = static_cast<Index>(kept.size());

  // Kraus A_k (d2 x d1) with A_k(m, i) = sqrt(l_k) c_k(i*d2 + m); W(i*r + k, m) = conj(A_k(m, i)).
  DilationTriple t;
  t.ancilla_dim = r;
  t.isometry_or_vector = ComplexMatrix::Zero(d1 * r, d2);
  for (Index k = 0; k < r; ++k) {
    const Index col = kept[static_cast<std::size_t>(k)];
    const double s = std::sqrt(eig.eigenvalues(col));
    for (Index i = 0; i < d1; ++i)
      for (Index m = 0; m < d2; ++m)
        t.isometry_or_vector(i * r + k, m) = std::conj(s * eig.eigenvectors(i * d2 + m, col));
  }
  const ComplexMatrix id_r = ComplexMatrix::Identity(r, r);
  for (Index k = 0; k < d1 * d1; ++k) t.representation.push_back(kron(unit(d1, k), id_r));

  double err = 0.0;
  for (const auto& a : hermitian_basis(d1)) err = std::max(err, (compress(t, a) - phi.apply(a)).norm());
  t.verification_error = err;
  return t;
}

DilationTriple gns(const DensityOperator& sigma, const Tolerances& tol) {
  const Index d = sigma.dim();
  const Index n = d * d;
  const ComplexMatrix& rho = sigma.matrix();
  // G[(ij),(kl)] = sigma(E_ij^dagger E_kl) = delta_ik rho(l, j), indices column-stacked.
  ComplexMatrix gram = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index l = 0; l < d; ++l) gram(i + j * d, i + l * d) = rho(l, j);

  const EigenDecomposition eig = eig_hermitian(HermitianOperator::symmetrized(gram));
  const double lmax = std::max(eig.eigenvalues.maxCoeff(), 0.0);
  std::vector<Index> kept;
  for (Index k = 0; k < n; ++k)
    if (eig.eigenvalues(k) > tol.rank * lmax) kept.push_back(k);
  const auto r = static_cast<Index>(kept.size());

  ComplexMatrix to_quotient(r, n), from_quotient(n, r);
  for (Index k = 0; k < r; ++k) {
    const Index col = kept[static_cast<std::size_t>(k)];
    const double s = std::sqrt(eig.eigenvalues(col));
    to_quotient.row(k) = s * eig.eigenvectors.col(col).adjoint();
    from_quotient.col(k) = eig.eigenvectors.col(col) / s;
  }

  DilationTriple t;
  t.ancilla_dim = r;
  t.isometry_or_vector = to_quotient * vec(ComplexMatrix::Identity(d, d));
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (Index k = 0; k < n; ++k)
    t.representation.push_back(to_quotient * kron(id, unit(d, k)) * from_quotient);

  double err = 0.0;
  for (const auto& a : hermitian_basis(d))
    err = std::max(err, std::abs(compress(t, a)(0, 0) - sigma.expectation(a)));
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) {
      const ComplexMatrix prod = unit(d, p) * unit(d, q);
      const ComplexMatrix lhs = represent(t, prod);
      const auto& rp = t.representation[static_cast<std::size_t>(p)];
      const auto& rq = t.representation[static_cast<std::size_t>(q)];
      err = std::max(err, (lhs - rp * rq).norm());
    }
  t.verification_error = err;
  return t;
}

}  // namespace gleasonkit
