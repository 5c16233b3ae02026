#pragma once

#include <functional>
#include <vector>

#include "gleasonkit/contexts.hpp"
#include "gleasonkit/opcore.hpp"
#include "gleasonkit/states.hpp"

namespace gleasonkit {

// Vectorization is column stacking throughout: vec(X)[i + j*rows] = X(i, j),
// so vec(A X B) = (B^T (x) A) vec(X).
ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols);

/// Linear map M_in -> M_out stored as an (out^2 x in^2) matrix on vec(.).
class SuperOperator {
 public:
  using Map = std::function<ComplexMatrix(const ComplexMatrix&)>;

  SuperOperator(Index in_dim, Index out_dim, ComplexMatrix matrix);
  /// Tabulates `f` on the matrix units.
  static SuperOperator from_map(Index in_dim, Index out_dim, const Map& f);

  Index in_dim() const { return in_dim_; }
  Index out_dim() const { return out_dim_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  ComplexMatrix apply(const ComplexMatrix& a) const;
  ComplexMatrix operator()(const ComplexMatrix& a) const { return apply(a); }

  /// (this o inner)(a) = this(inner(a))
  SuperOperator after(const SuperOperator& inner) const;

 private:
  Index in_dim_;
  Index out_dim_;
  ComplexMatrix matrix_;
};

// ---- stock maps ----
SuperOperator identity_map(Index d);
SuperOperator transpose_map(Index d);
SuperOperator unitary_conjugation(const ComplexMatrix& u);
/// a -> tr[a] I / d
SuperOperator depolarizing_map(Index d);
/// a -> sum_k K_k a K_k^dagger, each K_k of shape (out x in).
SuperOperator kraus_map(const std::vector<ComplexMatrix>& kraus);
/// a -> diag(first(a), second(a))
SuperOperator direct_sum_map(const SuperOperator& first, const SuperOperator& second);
/// Random CP map with `kraus_rank` Gaussian Kraus operators, trace-preserving if
/// requested (needs kraus_rank * out_dim >= in_dim, else "bad-dims").
SuperOperator random_cp_map(Index in_dim, Index out_dim, Index kraus_rank, Rng& rng,
                            bool trace_preserving = false);

/// C = sum_ij E_ij (x) Phi(E_ij), shape (in*out)^2.
ComplexMatrix choi_matrix(const SuperOperator& phi);
/// Inverse of choi_matrix: Phi(a) = tr_1[(a^T (x) I) C].
SuperOperator superop_from_choi(const ComplexMatrix& choi, Index in_dim, Index out_dim);

// ---- Jordan structure and dynamical correspondences ----

/// (ab + ba) / 2. Throws "bad-dims".
HermitianOperator jordan_product(const HermitianOperator& a, const HermitianOperator& b);
ComplexMatrix jordan_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// b -> (i/2)[a, b], or -(i/2)[a, b] for the time-reversed (starred) version.
SuperOperator psi(const HermitianOperator& a, bool star = false);
/// b -> a o b
SuperOperator jordan_multiplication(const HermitianOperator& a);

struct HomReport {
  double jordan_defect = 0.0;  // max ||Phi(a o b) - Phi(a) o Phi(b)||_F over Hermitian basis pairs
  double star_defect = 0.0;    // max ||Phi(x^dagger) - Phi(x)^dagger||_F over matrix units
  bool passes = false;
};

HomReport check_jordan_star_hom(const SuperOperator& phi, const Tolerances& tol = {});

enum class CommutatorCharacter { Hom, AntiHom, Mixed };
const char* to_string(CommutatorCharacter c);

/// Throws "not-jordan-hom" if check_jordan_star_hom fails.
CommutatorCharacter commutator_character(const SuperOperator& phi, const Tolerances& tol = {});

struct OrientationEqReport {
  double max_defect = 0.0;
  bool passes = false;
};

/// max ||Phi(psi*_a(b)) - psi_{Phi(a)}(Phi(b))||_F over Hermitian basis pairs.
/// With starred = false the unstarred psi_a is used on the input side.
/// Throws "bad-dims" if phi does not map d1-operators to d2-operators.
OrientationEqReport check_time_orientation_eq(const SuperOperator& phi, Index d1, Index d2,
                                              bool starred = true, const Tolerances& tol = {});

// ---- dilations ----

/// Compression data phi(x) = W^dagger rep(x) W.
///  - naimark_dilate: W is the dilating vector (m x 1), representation[i] is the
///    embedded image of the i-th context projection.
///  - stinespring_dilate, gns: representation[k] is the image of the matrix
///    unit with column-stacking index k, so rep(a) = sum_k vec(a)_k representation[k].
struct DilationTriple {
  Index ancilla_dim = 0;
  ComplexMatrix isometry_or_vector;
  std::vector<ComplexMatrix> representation;
  double verification_error = 0.0;
};

/// rep(a) for triples whose representation is indexed by matrix units.
ComplexMatrix represent(const DilationTriple& t, const ComplexMatrix& a);
/// W^dagger rep(a) W
ComplexMatrix compress(const DilationTriple& t, const ComplexMatrix& a);

/// Throws "bad-probs".
DilationTriple naimark_dilate(const Context& c, const RealVector& probs, const Tolerances& tol = {});

/// Throws "not-cp" if the Choi matrix has an eigenvalue below the PSD cutoff.
DilationTriple stinespring_dilate(const SuperOperator& phi, Index d1, Index d2, const Tolerances& tol = {});

/// GNS triple of sigma(a) = tr[rho a] on M_d.
DilationTriple gns(const DensityOperator& sigma, const Tolerances& tol = {});

}  // namespace gleasonkit
