#pragma once

#include <map>
#include <string>
#include <vector>

#include "gleasonkit/opcore.hpp"
#include "gleasonkit/random.hpp"
#include "gleasonkit/states.hpp"

namespace gleasonkit {

/// A projection-valued measure: mutually orthogonal projections summing to
/// the identity. Outcome labels are positional.
class Context {
 public:
  /// Throws "bad-context" if any PVM invariant fails.
  Context(std::vector<ComplexMatrix> projections, std::string label, const Tolerances& tol = {});

  Index dim() const { return dim_; }
  std::size_t outcomes() const { return projections_.size(); }
  const std::vector<ComplexMatrix>& projections() const { return projections_; }
  const ComplexMatrix& projection(std::size_t i) const { return projections_.at(i); }
  const std::string& label() const { return label_; }
  bool is_rank_one() const;

 private:
  std::vector<ComplexMatrix> projections_;
  std::string label_;
  Index dim_ = 0;
};

/// Blocks of outcome indices of the fine context.
using Partition = std::vector<std::vector<std::size_t>>;

/// Coarse-graining arrow: the coarse context's i-th projection is the sum of
/// the fine projections indexed by partition[i].
struct Arrow {
  std::string coarse;
  std::string fine;
  Partition partition;
};

/// Finite sampled poset of contexts with coarse-graining arrows.
class ContextPoset {
 public:
  ContextPoset() = default;
  explicit ContextPoset(std::vector<Context> contexts, std::vector<Arrow> arrows = {},
                        const Tolerances& tol = {});

  void add_context(Context c);
  /// Validates the partition and the block-sum relation.
  void add_arrow(Arrow a, const Tolerances& tol = {});
  /// Coarse-grains an existing context, registers it and the arrow, returns the new context.
  const Context& add_coarse_graining(const std::string& fine_label, const Partition& partition,
                                     std::string coarse_label);

  bool contains(const std::string& label) const { return index_.count(label) > 0; }
  const Context& context(const std::string& label) const;
  const std::vector<Context>& contexts() const { return contexts_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::size_t size() const { return contexts_.size(); }
  Index dim() const { return contexts_.empty() ? 0 : contexts_.front().dim(); }

  /// Every projection of every context, in poset order.
  std::vector<ComplexMatrix> all_projections() const;

 private:
  std::vector<Context> contexts_;
  std::vector<Arrow> arrows_;
  std::map<std::string, std::size_t> index_;
};

/// Probability assignment per context. Not validated on construction;
/// see validate_section.
struct Section {
  ContextPoset poset;
  std::map<std::string, RealVector> values;
};

struct Violation {
  enum class Kind { Missing, Range, Normalization, ArrowConsistency, Noncontextuality, MarginalConsistency };
  Kind kind;
  std::string location;
  double magnitude;
};

const char* to_string(Violation::Kind k);

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Bloch-sphere frame function mu(p) = (1 + (axis . n_p)^exponent) / 2.
struct QubitFrameFunctionSpec {
  int exponent = 3;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
};

// ---- constructors ----

/// Rank-one PVM from the columns of a unitary. Throws "not-unitary".
Context context_from_unitary(const ComplexMatrix& u, std::string label, const Tolerances& tol = {});
Context standard_context(Index d, std::string label = "standard");
ComplexMatrix fourier_matrix(Index d);
ComplexMatrix hadamard_matrix();

/// Throws "bad-partition" unless `partition` partitions the outcome indices.
Context coarse_grain(const Context& c, const Partition& partition, std::string label);
/// Outcomes ordered i * outcomes(c2) + j for p_i (x) q_j.
Context product_context(const Context& c1, const Context& c2, std::string label = {});

/// Poset of `n` Haar-random rank-one contexts labeled prefix0, prefix1, ...
ContextPoset random_poset(Index d, std::size_t n, Rng& rng, const std::string& prefix = "c");

// ---- measures and sections ----

/// Born probabilities tr[rho p_i]. Throws "bad-dims".
RealVector born_measure(const DensityOperator& rho, const Context& c);
Section section_from_state(const DensityOperator& rho, const ContextPoset& poset);
ValidationReport validate_section(const Section& s, const Tolerances& tol = {});

/// Throws "not-qubit-rank1" unless c is a rank-one PVM on C^2.
RealVector qubit_frame_function(const QubitFrameFunctionSpec& spec, const Context& c);
Eigen::Vector3d bloch_vector(const ComplexMatrix& rank_one_qubit_projection);

bool same_projection(const ComplexMatrix& p, const ComplexMatrix& q, double tol);

}  // namespace gleasonkit
