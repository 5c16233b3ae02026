#include "gleasonkit/contexts.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace gleasonkit {

namespace {

std::string outcome_location(const std::string& label, std::size_t i) {
  std::ostringstream os;
  os << "context '" << label << "' outcome " << i;
  return os.str();
}

void check_partition(const Partition& partition, std::size_t outcomes) {
  std::vector<int> seen(outcomes, 0);
  for (const auto& block : partition) {
    if (block.empty()) throw Error("bad-partition", "empty block");
    for (std::size_t i : block) {
      if (i >= outcomes) throw Error("bad-partition", "index out of range");
      if (seen[i]++) throw Error("bad-partition", "index repeated");
    }
  }
  for (int s : seen)
    if (!s) throw Error("bad-partition", "index missing");
}

}  // namespace

Context::Context(std::vector<ComplexMatrix> projections, std::string label, const Tolerances& tol)
    : projections_(std::move(projections)), label_(std::move(label)) {
  if (projections_.empty()) throw Error("bad-context", "no projections");
  dim_ = projections_.front().rows();
  ComplexMatrix total = ComplexMatrix::Zero(dim_, dim_);
  for (auto& p : projections_) {
    if (p.rows() != dim_ || p.cols() != dim_) throw Error("bad-context", "projection dims differ");
    if (!is_hermitian(p, tol.projection)) throw Error("bad-context", "projection not hermitian");
    p = 0.5 * (p + p.adjoint()).eval();
    if ((p * p - p).norm() > tol.projection) throw Error("bad-context", "projection not idempotent");
    total += p;
  }
  for (std::size_t i = 0; i < projections_.size(); ++i)
    for (std::size_t j = i + 1; j < projections_.size(); ++j)
      if ((projections_[i] * projections_[j]).norm() > tol.projection)
        throw Error("bad-context", "projections not orthogonal");
  if ((total - ComplexMatrix::Identity(dim_, dim_)).norm() > tol.projection)
    throw Error("bad-context", "projections do not sum to identity");
}

bool Context::is_rank_one() const {
  return projections_.size() == static_cast<std::size_t>(dim_);
}

ContextPoset::ContextPoset(std::vector<Context> contexts, std::vector<Arrow> arrows,
                           const Tolerances& tol) {
  for (auto& c : contexts) add_context(std::move(c));
  for (auto& a : arrows) add_arrow(std::move(a), tol);
}

void ContextPoset::add_context(Context c) {
  if (!contexts_.empty() && c.dim() != dim()) throw Error("bad-dims", "context dimension differs");
  if (contains(c.label())) throw Error("duplicate-label", c.label());
  index_.emplace(c.label(), contexts_.size());
  contexts_.push_back(std::move(c));
}

void ContextPoset::add_arrow(Arrow a, const Tolerances& tol) {
  const Context& coarse = context(a.coarse);
  const Context& fine = context(a.fine);
  check_partition(a.partition, fine.outcomes());
  if (a.partition.size() != coarse.outcomes())
    throw Error("bad-arrow", "partition size differs from coarse outcome count");
  for (std::size_t b = 0; b < a.partition.size(); ++b) {
    ComplexMatrix sum = ComplexMatrix::Zero(dim(), dim());
    for (std::size_t i : a.partition[b]) sum += fine.projection(i);
    if ((sum - coarse.projection(b)).cwiseAbs().maxCoeff() > tol.projection)
      throw Error("bad-arrow", "coarse projection is not the block sum");
  }
  arrows_.push_back(std::move(a));
}

const Context& ContextPoset::add_coarse_graining(const std::string& fine_label,
                                                 const Partition& partition,
                                                 std::string coarse_label) {
  Context coarse = coarse_grain(context(fine_label), partition, coarse_label);
  add_context(std::move(coarse));
  add_arrow({coarse_label, fine_label, partition});
  return contexts_.back();
}

const Context& ContextPoset::context(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw Error("unknown-context", label);
  return contexts_[it->second];
}

std::vector<ComplexMatrix> ContextPoset::all_projections() const {
  std::vector<ComplexMatrix> out;
  for (const auto& c : contexts_)
    for (const auto& p : c.projections()) out.push_back(p);
  return out;
}

const char* to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Missing: return "missing";
    case Violation::Kind::Range: return "range";
    case Violation::Kind::Normalization: return "normalization";
    case Violation::Kind::ArrowConsistency: return "arrow-consistency";
    case Violation::Kind::Noncontextuality: return "noncontextuality";
    case Violation::Kind::MarginalConsistency: return "marginal-consistency";
  }
  return "unknown";
}

Context context_from_unitary(const ComplexMatrix& u, std::string label, const Tolerances& tol) {
  if (u.rows() != u.cols()) throw Error("not-unitary", "not square");
  const Index d = u.rows();
  if ((u.adjoint() * u - ComplexMatrix::Identity(d, d)).norm() > tol.projection)
    throw Error("not-unitary");
  std::vector<ComplexMatrix> projections;
  projections.reserve(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) projections.push_back(u.col(i) * u.col(i).adjoint());
  return Context(std::move(projections), std::move(label), tol);
}

Context standard_context(Index d, std::string label) {
  return context_from_unitary(ComplexMatrix::Identity(d, d), std::move(label));
}

ComplexMatrix fourier_matrix(Index d) {
  ComplexMatrix f(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index j = 0; j < d; ++j)
    for (Index k = 0; k < d; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(d);
      f(j, k) = norm * Complex(std::cos(angle), std::sin(angle));
    }
  return f;
}

ComplexMatrix hadamard_matrix() {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Context coarse_grain(const Context& c, const Partition& partition, std::string label) {
  check_partition(partition, c.outcomes());
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(partition.size());
  for (const auto& block : partition) {
    ComplexMatrix sum = ComplexMatrix::Zero(c.dim(), c.dim());
    for (std::size_t i : block) sum += c.projection(i);
    blocks.push_back(std::move(sum));
  }
  return Context(std::move(blocks), std::move(label));
}

Context product_context(const Context& c1, const Context& c2, std::string label) {
  std::vector<ComplexMatrix> projections;
  projections.reserve(c1.outcomes() * c2.outcomes());
  for (const auto& p : c1.projections())
    for (const auto& q : c2.projections()) projections.push_back(kron(p, q));
  if (label.empty()) label = c1.label() + "x" + c2.label();
  return Context(std::move(projections), std::move(label));
}

ContextPoset random_poset(Index d, std::size_t n, Rng& rng, const std::string& prefix) {
  ContextPoset poset;
  for (std::size_t k = 0; k < n; ++k)
    poset.add_context(context_from_unitary(haar_unitary(d, rng), prefix + std::to_string(k)));
  return poset;
}

RealVector born_measure(const DensityOperator& rho, const Context& c) {
  if (rho.dim() != c.dim()) throw Error("bad-dims", "state and context dimensions differ");
  RealVector probs(static_cast<Index>(c.outcomes()));
  for (std::size_t i = 0; i < c.outcomes(); ++i)
    probs(static_cast<Index>(i)) = rho.expectation(c.projection(i)).real();
  return probs;
}

Section section_from_state(const DensityOperator& rho, const ContextPoset& poset) {
  Section s{poset, {}};
  for (const auto& c : poset.contexts()) s.values.emplace(c.label(), born_measure(rho, c));
  return s;
}

bool same_projection(const ComplexMatrix& p, const ComplexMatrix& q, double tol) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) return false;
  return (0.5 * (p + p.adjoint()) - 0.5 * (q + q.adjoint())).cwiseAbs().maxCoeff() <= tol;
}

ValidationReport validate_section(const Section& s, const Tolerances& tol) {
  ValidationReport report;
  auto flag = [&](Violation::Kind k, std::string where, double mag) {
    report.violations.push_back({k, std::move(where), mag});
  };

  for (const auto& c : s.poset.contexts()) {
    auto it = s.values.find(c.label());
    if (it == s.values.end() || it->second.size() != static_cast<Index>(c.outcomes())) {
      flag(Violation::Kind::Missing, "context '" + c.label() + "'", 1.0);
      continue;
    }
    const RealVector& v = it->second;
    for (Index i = 0; i < v.size(); ++i) {
      const double x = v(i);
      if (!std::isfinite(x)) {
        flag(Violation::Kind::Range, outcome_location(c.label(), static_cast<std::size_t>(i)), 1.0);
      } else if (x < -tol.probability) {
        flag(Violation::Kind::Range, outcome_location(c.label(), static_cast<std::size_t>(i)), -x);
      } else if (x > 1.0 + tol.probability) {
        flag(Violation::Kind::Range, outcome_location(c.label(), static_cast<std::size_t>(i)), x - 1.0);
      }
    }
    const double defect = std::abs(v.sum() - 1.0);
    if (defect > tol.probability)
      flag(Violation::Kind::Normalization, "context '" + c.label() + "'", defect);
  }

  for (const auto& a : s.poset.arrows()) {
    auto coarse = s.values.find(a.coarse);
    auto fine = s.values.find(a.fine);
    if (coarse == s.values.end() || fine == s.values.end()) continue;  // reported above
    if (coarse->second.size() != static_cast<Index>(a.partition.size())) continue;
    for (std::size_t b = 0; b < a.partition.size(); ++b) {
      double sum = 0.0;
      for (std::size_t i : a.partition[b])
        if (static_cast<Index>(i) < fine->second.size()) sum += fine->second(static_cast<Index>(i));
      const double defect = std::abs(coarse->second(static_cast<Index>(b)) - sum);
      if (defect > tol.consistency)
        flag(Violation::Kind::ArrowConsistency,
             "arrow '" + a.fine + "' -> '" + a.coarse + "' block " + std::to_string(b), defect);
    }
  }

  const auto& cs = s.poset.contexts();
  for (std::size_t x = 0; x < cs.size(); ++x) {
    auto vx = s.values.find(cs[x].label());
    if (vx == s.values.end() || vx->second.size() != static_cast<Index>(cs[x].outcomes())) continue;
    for (std::size_t y = x + 1; y < cs.size(); ++y) {
      auto vy = s.values.find(cs[y].label());
      if (vy == s.values.end() || vy->second.size() != static_cast<Index>(cs[y].outcomes())) continue;
      for (std::size_t i = 0; i < cs[x].outcomes(); ++i)
        for (std::size_t j = 0; j < cs[y].outcomes(); ++j) {
          const auto& p = cs[x].projection(i);
          const auto& q = cs[y].projection(j);
          if (std::abs(p.trace().real() - q.trace().real()) > 0.5) continue;
          if (!same_projection(p, q, tol.projection)) continue;
          const double defect = std::abs(vx->second(static_cast<Index>(i)) - vy->second(static_cast<Index>(j)));
          if (defect > tol.consistency)
            flag(Violation::Kind::Noncontextuality,
                 outcome_location(cs[x].label(), i) + " vs " + outcome_location(cs[y].label(), j),
                 defect);
        }
    }
  }
  return report;
}

Eigen::Vector3d bloch_vector(const ComplexMatrix& p) {
  if (p.rows() != 2 || p.cols() != 2) throw Error("not-qubit-rank1");
  // p = (I + n.sigma)/2
  return {2.0 * p(0, 1).real(), -2.0 * p(0, 1).imag(), (p(0, 0) - p(1, 1)).real()};
}

RealVector qubit_frame_function(const QubitFrameFunctionSpec& spec, const Context& c) {
  if (spec.exponent < 1 || spec.exponent % 2 == 0) throw Error("bad-exponent", "exponent must be odd and positive");
  if (c.dim() != 2 || c.outcomes() != 2) throw Error("not-qubit-rank1");
  auto f = [&](const Eigen::Vector3d& n) {
    const double t = spec.axis.dot(n);
    double out = 1.0;
    for (int k = 0; k < spec.exponent; ++k) out *= t;
    return out;
  };
  const Eigen::Vector3d n = bloch_vector(c.projection(0));
  RealVector probs(2);
  probs(0) = 0.5 * (1.0 + f(n));
  probs(1) = 0.5 * (1.0 + f(-n));
  return probs;
}

}  // namespace gleasonkit
