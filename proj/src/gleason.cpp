#include "gleasonkit/gleason.hpp"

#include <algorithm>

namespace gleasonkit {

std::optional<DensityOperator> ReconstructionResult::density() const {
  if (!is_state) return std::nullopt;
  return DensityOperator(state);
}

Index informational_completeness_rank(const ContextPoset& poset, const Tolerances& tol) {
  if (poset.size() == 0) throw Error("empty-poset");
  const auto projections = poset.all_projections();
  return hermitian_span_rank(projections, poset.dim(), tol);
}

ReconstructionResult reconstruct_state(const Section& s, const Tolerances& tol) {
  const ValidationReport report = validate_section(s, tol);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw Error("invalid-section", std::string(to_string(v.kind)) + " at " + v.location);
  }
  const Index d = s.poset.dim();
  std::vector<TraceConstraint> constraints;
  for (const auto& c : s.poset.contexts()) {
    const RealVector& probs = s.values.at(c.label());
    for (std::size_t i = 0; i < c.outcomes(); ++i)
      constraints.push_back({c.projection(i), probs(static_cast<Index>(i))});
  }
  constraints.push_back({ComplexMatrix::Identity(d, d), 1.0});

  LstsqResult fit = solve_hermitian_lstsq(constraints, d, tol);
  ReconstructionResult out;
  out.completeness_rank = informational_completeness_rank(s.poset, tol);
  out.residual = fit.residual;
  out.psd_defect = std::min(0.0, min_eigenvalue(fit.solution));
  out.is_state = out.psd_defect >= tol.psd_cutoff && out.completeness_rank == d * d;
  out.state = std::move(fit.solution);
  return out;
}

Section frame_function_section(const QubitFrameFunctionSpec& spec, const ContextPoset& poset) {
  Section s{poset, {}};
  for (const auto& c : poset.contexts()) s.values.emplace(c.label(), qubit_frame_function(spec, c));
  return s;
}

CounterexampleReport demonstrate_qubit_failure(std::size_t n_contexts, std::uint64_t seed, int exponent,
                                               const Tolerances& tol) {
  if (n_contexts < 4) throw Error("bad-n-contexts", "need at least 4 contexts");
  Rng rng = make_rng(seed);
  const ContextPoset poset = random_poset(2, n_contexts, rng, "q");
  QubitFrameFunctionSpec spec;
  spec.exponent = exponent;
  const Section s = frame_function_section(spec, poset);

  CounterexampleReport report;
  report.n_contexts = n_contexts;
  report.exponent = exponent;
  report.seed = seed;
  report.section_valid = validate_section(s, tol).ok();

  const ReconstructionResult fit = reconstruct_state(s, tol);
  report.residual = fit.residual;
  report.completeness_rank = fit.completeness_rank;
  report.psd_defect = fit.psd_defect;
  report.best_fit = fit.state;

  // With complementary pairs and an odd frame function the trace decouples:
  // residual(t, m) = n_ctx-sum of ((t-1)^2 + (m.n - f(n))^2) / 2, so t = 1.
  Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  double ff = 0.0;
  for (const auto& c : poset.contexts()) {
    const Eigen::Vector3d n = bloch_vector(c.projection(0));
    const double f = 2.0 * s.values.at(c.label())(0) - 1.0;
    normal += n * n.transpose();
    rhs += f * n;
    ff += f * f;
  }
  const Eigen::Vector3d m = normal.ldlt().solve(rhs);
  report.closed_form_residual = 0.5 * (ff - rhs.dot(m));
  report.residual_bound_holds = n_contexts < 20 || report.residual >= 0.01;
  return report;
}

}  // namespace gleasonkit
