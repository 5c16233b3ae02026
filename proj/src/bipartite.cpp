#include "gleasonkit/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gleasonkit {

namespace {

struct SharedProjection {
  std::size_t ctx_a, out_a, ctx_b, out_b;
};

std::vector<SharedProjection> shared_projections(const ContextPoset& poset, double tol) {
  std::vector<SharedProjection> out;
  const auto& cs = poset.contexts();
  for (std::size_t x = 0; x < cs.size(); ++x)
    for (std::size_t y = x + 1; y < cs.size(); ++y)
      for (std::size_t i = 0; i < cs[x].outcomes(); ++i)
        for (std::size_t j = 0; j < cs[y].outcomes(); ++j) {
          const auto& p = cs[x].projection(i);
          const auto& q = cs[y].projection(j);
          if (std::abs(p.trace().real() - q.trace().real()) > 0.5) continue;
          if (same_projection(p, q, tol)) out.push_back({x, i, y, j});
        }
  return out;
}

std::string pair_location(const std::string& l1, const std::string& l2) {
  return "contexts ('" + l1 + "', '" + l2 + "')";
}

// M(u) = (u^dagger (x) I) R (u (x) I)
ComplexMatrix reduce_first(const ComplexMatrix& r, const ComplexVector& u, Index d2) {
  const Index d1 = u.size();
  ComplexMatrix m = ComplexMatrix::Zero(d2, d2);
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d1; ++j) m += std::conj(u(i)) * u(j) * r.block(i * d2, j * d2, d2, d2);
  return 0.5 * (m + m.adjoint());
}

// N(v) = (I (x) v^dagger) R (I (x) v)
ComplexMatrix reduce_second(const ComplexMatrix& r, const ComplexVector& v, Index d1) {
  const Index d2 = v.size();
  ComplexMatrix n(d1, d1);
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d1; ++j) n(i, j) = v.dot(r.block(i * d2, j * d2, d2, d2) * v);
  return 0.5 * (n + n.adjoint());
}

std::pair<double, ComplexVector> lowest_eigenpair(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

}  // namespace

ValidationReport validate_bipartite_section(const BipartiteSection& s, const Tolerances& tol) {
  ValidationReport report;
  auto flag = [&](Violation::Kind k, std::string where, double mag) {
    report.violations.push_back({k, std::move(where), mag});
  };
  const auto& cs1 = s.poset1.contexts();
  const auto& cs2 = s.poset2.contexts();

  auto table = [&](const std::string& l1, const std::string& l2) -> const RealVector* {
    auto it = s.values.find({l1, l2});
    if (it == s.values.end()) return nullptr;
    const auto k = static_cast<Index>(s.poset1.context(l1).outcomes() * s.poset2.context(l2).outcomes());
    return it->second.size() == k ? &it->second : nullptr;
  };

  for (const auto& c1 : cs1)
    for (const auto& c2 : cs2) {
      const RealVector* t = table(c1.label(), c2.label());
      if (!t) {
        flag(Violation::Kind::Missing, pair_location(c1.label(), c2.label()), 1.0);
        continue;
      }
      for (Index k = 0; k < t->size(); ++k) {
        const double x = (*t)(k);
        double mag = 0.0;
        if (!std::isfinite(x)) mag = 1.0;
        else if (x < -tol.probability) mag = -x;
        else if (x > 1.0 + tol.probability) mag = x - 1.0;
        if (mag > 0.0)
          flag(Violation::Kind::Range, pair_location(c1.label(), c2.label()) + " outcome " + std::to_string(k), mag);
      }
      const double defect = std::abs(t->sum() - 1.0);
      if (defect > tol.probability) flag(Violation::Kind::Normalization, pair_location(c1.label(), c2.label()), defect);
    }
  if (!report.ok()) return report;

  // marginals must not depend on the partner context
  for (const auto& c1 : cs1) {
    const auto k1 = static_cast<Index>(c1.outcomes());
    RealVector ref;
    for (const auto& c2 : cs2) {
      const RealVector& t = *table(c1.label(), c2.label());
      const auto k2 = static_cast<Index>(c2.outcomes());
      RealVector marg = RealVector::Zero(k1);
      for (Index i = 0; i < k1; ++i) marg(i) = t.segment(i * k2, k2).sum();
      if (ref.size() == 0) {
        ref = marg;
        continue;
      }
      const double defect = (marg - ref).cwiseAbs().maxCoeff();
      if (defect > tol.consistency)
        flag(Violation::Kind::MarginalConsistency, "system 1 " + pair_location(c1.label(), c2.label()), defect);
    }
  }
  for (const auto& c2 : cs2) {
    const auto k2 = static_cast<Index>(c2.outcomes());
    RealVector ref;
    for (const auto& c1 : cs1) {
      const RealVector& t = *table(c1.label(), c2.label());
      const auto k1 = static_cast<Index>(c1.outcomes());
      RealVector marg = RealVector::Zero(k2);
      for (Index i = 0; i < k1; ++i) marg += t.segment(i * k2, k2);
      if (ref.size() == 0) {
        ref = marg;
        continue;
      }
      const double defect = (marg - ref).cwiseAbs().maxCoeff();
      if (defect > tol.consistency)
        flag(Violation::Kind::MarginalConsistency, "system 2 " + pair_location(c1.label(), c2.label()), defect);
    }
  }

  for (const auto& a : s.poset1.arrows())
    for (const auto& c2 : cs2) {
      const RealVector& coarse = *table(a.coarse, c2.label());
      const RealVector& fine = *table(a.fine, c2.label());
      const auto k2 = static_cast<Index>(c2.outcomes());
      for (std::size_t b = 0; b < a.partition.size(); ++b) {
        RealVector sum = RealVector::Zero(k2);
        for (std::size_t i : a.partition[b]) sum += fine.segment(static_cast<Index>(i) * k2, k2);
        const double defect = (coarse.segment(static_cast<Index>(b) * k2, k2) - sum).cwiseAbs().maxCoeff();
        if (defect > tol.consistency)
          flag(Violation::Kind::ArrowConsistency,
               "system 1 arrow '" + a.fine + "' -> '" + a.coarse + "' with '" + c2.label() + "'", defect);
      }
    }
  for (const auto& a : s.poset2.arrows()) {
    const auto kf = static_cast<Index>(s.poset2.context(a.fine).outcomes());
    const auto kc = static_cast<Index>(a.partition.size());
    for (const auto& c1 : cs1) {
      const RealVector& coarse = *table(c1.label(), a.coarse);
      const RealVector& fine = *table(c1.label(), a.fine);
      for (Index i = 0; i < static_cast<Index>(c1.outcomes()); ++i)
        for (Index b = 0; b < kc; ++b) {
          double sum = 0.0;
          for (std::size_t j : a.partition[static_cast<std::size_t>(b)]) sum += fine(i * kf + static_cast<Index>(j));
          const double defect = std::abs(coarse(i * kc + b) - sum);
          if (defect > tol.consistency)
            flag(Violation::Kind::ArrowConsistency,
                 "system 2 arrow '" + a.fine + "' -> '" + a.coarse + "' with '" + c1.label() + "'", defect);
        }
    }
  }

  for (const auto& sp : shared_projections(s.poset1, tol.projection))
    for (const auto& c2 : cs2) {
      const auto k2 = static_cast<Index>(c2.outcomes());
      const RealVector& ta = *table(cs1[sp.ctx_a].label(), c2.label());
      const RealVector& tb = *table(cs1[sp.ctx_b].label(), c2.label());
      const double defect = (ta.segment(static_cast<Index>(sp.out_a) * k2, k2) -
                             tb.segment(static_cast<Index>(sp.out_b) * k2, k2))
                                .cwiseAbs()
                                .maxCoeff();
      if (defect > tol.consistency)
        flag(Violation::Kind::Noncontextuality,
             "system 1 contexts '" + cs1[sp.ctx_a].label() + "' and '" + cs1[sp.ctx_b].label() + "'", defect);
    }
  for (const auto& sp : shared_projections(s.poset2, tol.projection)) {
    const auto ka = static_cast<Index>(cs2[sp.ctx_a].outcomes());
    const auto kb = static_cast<Index>(cs2[sp.ctx_b].outcomes());
    for (const auto& c1 : cs1) {
      const RealVector& ta = *table(c1.label(), cs2[sp.ctx_a].label());
      const RealVector& tb = *table(c1.label(), cs2[sp.ctx_b].label());
      for (Index i = 0; i < static_cast<Index>(c1.outcomes()); ++i) {
        const double defect =
            std::abs(ta(i * ka + static_cast<Index>(sp.out_a)) - tb(i * kb + static_cast<Index>(sp.out_b)));
        if (defect > tol.consistency)
          flag(Violation::Kind::Noncontextuality,
               "system 2 contexts '" + cs2[sp.ctx_a].label() + "' and '" + cs2[sp.ctx_b].label() + "'", defect);
      }
    }
  }
  return report;
}

FunctionalOperator::FunctionalOperator(Index d1, Index d2, HermitianOperator r, const Tolerances& tol)
    : d1_(d1), d2_(d2), r_(std::move(r)) {
  if (d1_ < 1 || d2_ < 1 || r_.dim() != d1_ * d2_) throw Error("bad-dims");
  if (std::abs(r_.trace() - 1.0) > tol.normalization)
    throw Error("bad-normalization", "trace " + std::to_string(r_.trace()));
}

double FunctionalOperator::expectation(const ComplexMatrix& x) const {
  if (x.rows() != r_.dim() || x.cols() != r_.dim()) throw Error("bad-dims");
  return (r_.matrix().transpose().cwiseProduct(x)).sum().real();
}

double FunctionalOperator::product_expectation(const ComplexVector& u, const ComplexVector& v) const {
  if (u.size() != d1_ || v.size() != d2_) throw Error("bad-dims");
  const ComplexVector w = kron(u, v);
  return w.dot(r_.matrix() * w).real();
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::State: return "State";
    case Verdict::BlockPositiveNotState: return "BlockPositiveNotState";
    case Verdict::NotBlockPositive: return "NotBlockPositive";
  }
  return "unknown";
}

const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::Canonical: return "Canonical";
    case Orientation::Reversed: return "Reversed";
    case Orientation::Both: return "Both";
    case Orientation::Neither: return "Neither";
  }
  return "unknown";
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::State, Verdict::BlockPositiveNotState, Verdict::NotBlockPositive})
    if (s == to_string(v)) return v;
  throw Error("parse-error", "unknown verdict " + s);
}

Orientation orientation_from_string(const std::string& s) {
  for (Orientation o : {Orientation::Canonical, Orientation::Reversed, Orientation::Both, Orientation::Neither})
    if (s == to_string(o)) return o;
  throw Error("parse-error", "unknown orientation " + s);
}

BipartiteSection bipartite_section_from_operator(const FunctionalOperator& r, const ContextPoset& poset1,
                                                 const ContextPoset& poset2, const Tolerances& tol) {
  if (poset1.dim() != r.d1() || poset2.dim() != r.d2()) throw Error("bad-dims");
  BipartiteSection s{poset1, poset2, {}};
  for (const auto& c1 : poset1.contexts())
    for (const auto& c2 : poset2.contexts()) {
      const auto k2 = c2.outcomes();
      RealVector t(static_cast<Index>(c1.outcomes() * k2));
      for (std::size_t i = 0; i < c1.outcomes(); ++i)
        for (std::size_t j = 0; j < k2; ++j) {
          const double x = r.expectation(kron(c1.projection(i), c2.projection(j)));
          if (x < -tol.probability || x > 1.0 + tol.probability) {
            std::ostringstream os;
            os << pair_location(c1.label(), c2.label()) << " outcome (" << i << ", " << j << ") value " << x;
            throw Error("not-a-section-on-poset", os.str());
          }
          t(static_cast<Index>(i * k2 + j)) = std::clamp(x, 0.0, 1.0);
        }
      s.values.emplace(LabelPair{c1.label(), c2.label()}, std::move(t));
    }
  return s;
}

ConditionalState conditional_state(const BipartiteSection& s, const ComplexMatrix& p, const Tolerances& tol) {
  const Context* owner = nullptr;
  std::size_t outcome = 0;
  for (const auto& c : s.poset1.contexts()) {
    for (std::size_t i = 0; i < c.outcomes() && !owner; ++i)
      if (same_projection(c.projection(i), p, tol.projection)) {
        owner = &c;
        outcome = i;
      }
    if (owner) break;
  }
  if (!owner) throw Error("unknown-projection");

  const auto d2 = s.d2();
  const auto row = [&](const Context& c2) -> RealVector {
    const auto k2 = static_cast<Index>(c2.outcomes());
    return s.values.at({owner->label(), c2.label()}).segment(static_cast<Index>(outcome) * k2, k2);
  };
  const double weight = row(s.poset2.contexts().front()).sum();
  if (weight <= 1e-12) return {0.0, HermitianOperator::symmetrized(ComplexMatrix::Zero(d2, d2))};

  // mu(q | p) = mu(p, q) / mu(p); each row is normalized by its own sum, which
  // equals mu(p) up to the marginal-consistency tolerance.
  Section conditional{s.poset2, {}};
  for (const auto& c2 : s.poset2.contexts()) {
    const RealVector r = row(c2);
    conditional.values.emplace(c2.label(), r / r.sum());
  }
  Tolerances scaled = tol;
  scaled.consistency = tol.consistency / std::min(1.0, weight);
  scaled.probability = tol.probability / std::min(1.0, weight);
  ReconstructionResult fit = reconstruct_state(conditional, scaled);
  return {weight, std::move(fit.state)};
}

FunctionalOperator induced_operator(const BipartiteSection& s, const Tolerances& tol) {
  const ValidationReport report = validate_bipartite_section(s, tol);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw Error("invalid-section", std::string(to_string(v.kind)) + " at " + v.location);
  }
  const Index d1 = s.d1(), d2 = s.d2();
  if (informational_completeness_rank(s.poset1, tol) != d1 * d1 ||
      informational_completeness_rank(s.poset2, tol) != d2 * d2)
    throw Error("not-informationally-complete");

  std::vector<TraceConstraint> constraints;
  for (const auto& c1 : s.poset1.contexts())
    for (const auto& c2 : s.poset2.contexts()) {
      const RealVector& t = s.values.at({c1.label(), c2.label()});
      const auto k2 = c2.outcomes();
      for (std::size_t i = 0; i < c1.outcomes(); ++i)
        for (std::size_t j = 0; j < k2; ++j)
          constraints.push_back({kron(c1.projection(i), c2.projection(j)), t(static_cast<Index>(i * k2 + j))});
    }
  constraints.push_back({ComplexMatrix::Identity(d1 * d2, d1 * d2), 1.0});
  LstsqResult fit = solve_hermitian_lstsq(constraints, d1 * d2, tol);
  if (fit.residual > tol.reconstruction_residual)
    throw Error("inconsistent-section", "residual " + std::to_string(fit.residual));
  return FunctionalOperator(d1, d2, std::move(fit.solution), tol);
}

HermitianOperator choi_of(const FunctionalOperator& r, Orientation orientation) {
  switch (orientation) {
    case Orientation::Reversed: return r.R();
    case Orientation::Canonical:
      return HermitianOperator::symmetrized(partial_transpose(r.matrix(), Subsystem::First, r.dims()));
    default: throw Error("bad-orientation", "choi_of takes Canonical or Reversed");
  }
}

SuperOperator induced_map(const FunctionalOperator& r, Orientation orientation) {
  return superop_from_choi(choi_of(r, orientation).matrix(), r.d1(), r.d2());
}

ProductMinimum min_product_expectation(const FunctionalOperator& r, int restarts, std::uint64_t seed) {
  if (restarts < 1) throw Error("bad-restarts", "need at least one restart");
  constexpr int kMaxIterations = 500;
  constexpr double kConvergence = 1e-12;
  const Index d1 = r.d1(), d2 = r.d2();
  const ComplexMatrix& rm = r.matrix();

  ProductMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  for (int k = 0; k < restarts; ++k) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(k));
    ComplexVector u = haar_vector(d1, rng);
    ComplexVector v;
    std::vector<double> trajectory;
    double previous = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxIterations; ++it) {
      auto [after_v, new_v] = lowest_eigenpair(reduce_first(rm, u, d2));
      v = std::move(new_v);
      auto [after_u, new_u] = lowest_eigenpair(reduce_second(rm, v, d1));
      u = std::move(new_u);
      trajectory.push_back(after_v);
      trajectory.push_back(after_u);
      if (std::abs(previous - after_u) < kConvergence) break;
      previous = after_u;
    }
    const double value = r.product_expectation(u, v);
    if (value < best.value) {
      best.value = value;
      best.u = u;
      best.v = v;
      best.best_restart = static_cast<std::size_t>(k);
      best.trajectory = std::move(trajectory);
    }
  }
  return best;
}

Orientation time_orientation(const FunctionalOperator& r, const Tolerances& tol) {
  const bool reversed = min_eigenvalue(choi_of(r, Orientation::Reversed)) >= tol.psd_cutoff;
  const bool canonical = min_eigenvalue(choi_of(r, Orientation::Canonical)) >= tol.psd_cutoff;
  if (reversed && canonical) return Orientation::Both;
  if (reversed) return Orientation::Reversed;
  if (canonical) return Orientation::Canonical;
  return Orientation::Neither;
}

Classification classify_functional(const FunctionalOperator& r, int restarts, std::uint64_t seed,
                                   const Tolerances& tol) {
  Classification c;
  c.restarts = restarts;
  c.seed = seed;
  c.min_eigenvalue = min_eigenvalue(r.R());
  const ProductMinimum pm = min_product_expectation(r, restarts, seed);
  c.min_product_expectation = r.product_expectation(pm.u, pm.v);
  c.orientation = time_orientation(r, tol);
  if (c.min_eigenvalue >= tol.psd_cutoff) {
    c.verdict = Verdict::State;
  } else if (c.min_product_expectation < tol.block_positivity) {
    c.verdict = Verdict::NotBlockPositive;
    c.witness = ProductWitness{pm.u, pm.v};
  } else {
    c.verdict = Verdict::BlockPositiveNotState;
  }
  return c;
}

}  // namespace gleasonkit
