#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gleasonkit/contexts.hpp"
#include "gleasonkit/gleason.hpp"
#include "gleasonkit/jordan.hpp"

namespace gleasonkit {

using LabelPair = std::pair<std::string, std::string>;

/// Probability tables over product contexts V1 x V2. The table of (l1, l2)
/// has outcome (i, j) at index i * outcomes(V2) + j.
struct BipartiteSection {
  ContextPoset poset1;
  ContextPoset poset2;
  std::map<LabelPair, RealVector> values;

  Index d1() const { return poset1.dim(); }
  Index d2() const { return poset2.dim(); }
};

/// Range, normalization, marginal consistency, arrow consistency along either
/// factor and agreement on shared projections within either factor.
ValidationReport validate_bipartite_section(const BipartiteSection& s, const Tolerances& tol = {});

/// Unit-trace Hermitian R on C^{d1} (x) C^{d2}, sigma(x) = tr[R x].
class FunctionalOperator {
 public:
  /// Throws "bad-dims" or "bad-normalization".
  FunctionalOperator(Index d1, Index d2, HermitianOperator r, const Tolerances& tol = {});

  Index d1() const { return d1_; }
  Index d2() const { return d2_; }
  Dims dims() const { return {d1_, d2_}; }
  const HermitianOperator& R() const { return r_; }
  const ComplexMatrix& matrix() const { return r_.matrix(); }
  double trace_value() const { return r_.trace(); }

  double expectation(const ComplexMatrix& x) const;
  /// <u (x) v| R |u (x) v>
  double product_expectation(const ComplexVector& u, const ComplexVector& v) const;

 private:
  Index d1_;
  Index d2_;
  HermitianOperator r_;
};

enum class Verdict { State, BlockPositiveNotState, NotBlockPositive };
enum class Orientation { Canonical, Reversed, Both, Neither };

const char* to_string(Verdict v);
const char* to_string(Orientation o);
Verdict verdict_from_string(const std::string& s);
Orientation orientation_from_string(const std::string& s);

struct ProductWitness {
  ComplexVector u;
  ComplexVector v;
};

struct ProductMinimum {
  double value = 0.0;
  ComplexVector u;
  ComplexVector v;
  std::size_t best_restart = 0;
  /// Objective after every half-step of the best restart.
  std::vector<double> trajectory;
};

struct Classification {
  Verdict verdict = Verdict::State;
  double min_eigenvalue = 0.0;
  double min_product_expectation = 0.0;
  std::optional<ProductWitness> witness;  // present iff verdict == NotBlockPositive
  Orientation orientation = Orientation::Neither;
  int restarts = 0;
  std::uint64_t seed = 0;
};

struct ConditionalState {
  double weight = 0.0;
  HermitianOperator sigma2;  // zero operator when weight vanishes
};

/// Throws "not-a-section-on-poset" naming the offending (context, outcome).
BipartiteSection bipartite_section_from_operator(const FunctionalOperator& r, const ContextPoset& poset1,
                                                 const ContextPoset& poset2, const Tolerances& tol = {});

/// Conditional state of system 2 given projection p of system 1, together
/// with its weight mu(p). Throws "unknown-projection".
ConditionalState conditional_state(const BipartiteSection& s, const ComplexMatrix& p,
                                   const Tolerances& tol = {});

/// Unique Hermitian R reproducing the section on all product projections.
/// Throws "invalid-section", "not-informationally-complete" or "inconsistent-section".
FunctionalOperator induced_operator(const BipartiteSection& s, const Tolerances& tol = {});

/// Reversed: R itself. Canonical: partial transpose of R on the first factor.
HermitianOperator choi_of(const FunctionalOperator& r, Orientation orientation);
/// The map M_{d1} -> M_{d2} whose Choi matrix is choi_of(r, orientation).
SuperOperator induced_map(const FunctionalOperator& r, Orientation orientation);

/// See-saw minimization of <u (x) v|R|u (x) v> over unit product vectors.
ProductMinimum min_product_expectation(const FunctionalOperator& r, int restarts, std::uint64_t seed);

Orientation time_orientation(const FunctionalOperator& r, const Tolerances& tol = {});

Classification classify_functional(const FunctionalOperator& r, int restarts, std::uint64_t seed,
                                   const Tolerances& tol = {});

}  // namespace gleasonkit
