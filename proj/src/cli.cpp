#include "gleasonkit/cli.hpp"

#include <cmath>

#include "gleasonkit/json_io.hpp"

namespace gleasonkit::cli {

using nlohmann::json;

namespace {

CommandResult failure(int code, const std::string& error, const std::string& detail) {
  return {code, {{"error", error}, {"detail", detail}}};
}

json parse_input(const std::string& input) {
  try {
    return json::parse(input);
  } catch (const json::parse_error& e) {
    throw Error("parse-error", e.what());
  }
}

class Report {
 public:
  void check(const std::string& name, bool passed, json value = nullptr) {
    all_passed_ = all_passed_ && passed;
    assertions_.push_back({{"name", name}, {"passed", passed}, {"value", std::move(value)}});
  }
  bool passed() const { return all_passed_; }

  CommandResult finish(const std::string& demo, const RunConfig& config, json details) const {
    json out = {{"demo", demo},
                {"seed", config.seed},
                {"assertions", assertions_},
                {"details", std::move(details)},
                {"passed", all_passed_}};
    return {all_passed_ ? kOk : kAssertionFailed, std::move(out)};
  }

 private:
  json assertions_ = json::array();
  bool all_passed_ = true;
};

CommandResult demo_qubit_counterexample(const RunConfig& config) {
  constexpr std::size_t kContexts = 50;
  const CounterexampleReport r = demonstrate_qubit_failure(kContexts, config.seed, 3, config.tol);
  const CounterexampleReport linear = demonstrate_qubit_failure(kContexts, config.seed, 1, config.tol);
  Report rep;
  rep.check("section-valid", r.section_valid);
  rep.check("best-linear-residual>=0.01", r.residual >= 0.01, r.residual);
  rep.check("closed-form-residual-agrees", std::abs(r.residual - r.closed_form_residual) <= 1e-9,
            r.closed_form_residual);
  rep.check("exponent-1-is-linear", linear.residual <= 1e-12, linear.residual);
  json details = {{"n_contexts", r.n_contexts},
                  {"exponent", r.exponent},
                  {"completeness_rank", r.completeness_rank},
                  {"psd_defect", r.psd_defect},
                  {"best_fit", io::matrix_to_json(r.best_fit.matrix())}};
  return rep.finish("qubit-counterexample", config, std::move(details));
}

CommandResult demo_pt_qutrit(const RunConfig& config) {
  constexpr Index d = 3;
  const HermitianOperator rm =
      HermitianOperator::symmetrized(partial_transpose(max_entangled_projector(d), Subsystem::Second, {d, d}));
  const FunctionalOperator r(d, d, rm, config.tol);

  Rng rng = make_rng(config.seed);
  const ContextPoset p1 = random_poset(d, d + 2, rng, "a");
  const ContextPoset p2 = random_poset(d, d + 2, rng, "b");

  Report rep;
  bool section_ok = false;
  double recovery = -1.0;
  try {
    const BipartiteSection s = bipartite_section_from_operator(r, p1, p2, config.tol);
    section_ok = validate_bipartite_section(s, config.tol).ok();
    const FunctionalOperator back = induced_operator(s, config.tol);
    recovery = (back.matrix() - r.matrix()).norm();
  } catch (const Error& e) {
    rep.check(std::string("pipeline-error:") + e.code(), false, e.what());
  }
  rep.check("section-valid", section_ok);
  rep.check("induced-operator-recovers-R", recovery >= 0.0 && recovery <= 1e-8, recovery);

  const Classification c = classify_functional(r, config.restarts, config.seed, config.tol);
  rep.check("min-eigenvalue=-1/3", std::abs(c.min_eigenvalue + 1.0 / 3.0) <= 1e-9, c.min_eigenvalue);
  rep.check("verdict-BlockPositiveNotState", c.verdict == Verdict::BlockPositiveNotState, to_string(c.verdict));
  rep.check("min-product-expectation>=-1e-7", c.min_product_expectation >= -1e-7, c.min_product_expectation);
  rep.check("orientation-Canonical", c.orientation == Orientation::Canonical, to_string(c.orientation));

  double dilation_error = -1.0;
  try {
    dilation_error = stinespring_dilate(induced_map(r, Orientation::Canonical), d, d, config.tol).verification_error;
  } catch (const Error& e) {
    rep.check(std::string("stinespring-error:") + e.code(), false, e.what());
  }
  rep.check("stinespring-of-orientation-corrected-map", dilation_error >= 0.0 && dilation_error <= 1e-9,
            dilation_error);
  std::string state_reading = "cp";
  try {
    stinespring_dilate(induced_map(r, Orientation::Reversed), d, d, config.tol);
  } catch (const Error& e) {
    state_reading = e.code();
  }
  rep.check("state-reading-rejected-not-cp", state_reading == "not-cp", state_reading);

  json details = {{"classification", io::classification_to_json(c)}};
  return rep.finish("pt-qutrit", config, std::move(details));
}

CommandResult demo_gns_roundtrip(const RunConfig& config) {
  constexpr int kStates = 50;
  constexpr Index d = 3;
  Rng rng = make_rng(config.seed);
  int reproduced = 0;
  double worst = 0.0;
  for (int k = 0; k < kStates; ++k) {
    const DensityOperator rho = random_density(d, rng);
    const DilationTriple t = gns(rho, config.tol);
    double err = t.verification_error;
    for (const auto& a : hermitian_basis(d))
      err = std::max(err, std::abs(compress(t, a)(0, 0) - rho.expectation(a)));
    worst = std::max(worst, err);
    if (err <= 1e-9) ++reproduced;
  }
  Report rep;
  rep.check("states-reproduced", reproduced == kStates, reproduced);
  rep.check("max-error<=1e-9", worst <= 1e-9, worst);
  return rep.finish("gns-roundtrip", config, {{"n_states", kStates}, {"dim", d}});
}

}  // namespace

std::string render(const json& j) { return j.dump(2) + "\n"; }

CommandResult cmd_reconstruct(const std::string& input, const RunConfig& config) {
  Section s;
  try {
    s = io::section_from_json(parse_input(input));
  } catch (const Error& e) {
    if (e.code() == "parse-error") return failure(kParseError, e.code(), e.what());
    return failure(kInvalidInput, "invalid-section", e.what());
  }
  try {
    return {kOk, io::reconstruction_to_json(reconstruct_state(s, config.tol))};
  } catch (const Error& e) {
    return failure(kInvalidInput, e.code(), e.what());
  }
}

CommandResult cmd_classify(const std::string& input, const RunConfig& config) {
  json j;
  try {
    j = parse_input(input);
  } catch (const Error& e) {
    return failure(kParseError, e.code(), e.what());
  }
  try {
    const bool is_section = j.is_object() && j.contains("poset1");
    if (!is_section && !(j.is_object() && j.contains("R")))
      return failure(kParseError, "parse-error", "expected a functional operator or bipartite section");
    std::optional<FunctionalOperator> r;
    if (is_section) {
      const BipartiteSection s = io::bipartite_section_from_json(j);
      r.emplace(induced_operator(s, config.tol));
    } else {
      r.emplace(io::functional_from_json(j));
    }
    return {kOk, io::classification_to_json(classify_functional(*r, config.restarts, config.seed, config.tol))};
  } catch (const Error& e) {
    if (e.code() == "parse-error") return failure(kParseError, e.code(), e.what());
    return failure(kInvalidInput, e.code(), e.what());
  }
}

CommandResult cmd_demo(const std::string& name, const RunConfig& config) {
  try {
    if (name == "qubit-counterexample") return demo_qubit_counterexample(config);
    if (name == "pt-qutrit") return demo_pt_qutrit(config);
    if (name == "gns-roundtrip") return demo_gns_roundtrip(config);
  } catch (const Error& e) {
    return failure(kAssertionFailed, e.code(), e.what());
  }
  return failure(kUnknownName, "unknown-demo", name);
}

CommandResult cmd_gen(const std::string& kind, long long dim, const RunConfig& config) {
  if (dim < 2 || dim > 9) return failure(kInvalidInput, "bad-dims", "dim must be in 2..9");
  const Index d = dim;
  Rng rng = make_rng(config.seed);
  if (kind == "state") return {kOk, io::matrix_to_json(random_density(d, rng).matrix())};
  if (kind == "functional") {
    const DensityOperator rho = random_density(d * d, rng);
    return {kOk, io::functional_to_json(FunctionalOperator(d, d, rho.op()))};
  }
  if (kind == "section") {
    const DensityOperator rho = random_density(d, rng);
    const ContextPoset poset = random_poset(d, static_cast<std::size_t>(3 * d), rng);
    return {kOk, io::section_to_json(section_from_state(rho, poset))};
  }
  if (kind == "bipartite") {
    const DensityOperator rho = random_density(d * d, rng);
    const ContextPoset p1 = random_poset(d, static_cast<std::size_t>(d + 2), rng, "a");
    const ContextPoset p2 = random_poset(d, static_cast<std::size_t>(d + 2), rng, "b");
    const FunctionalOperator r(d, d, rho.op());
    return {kOk, io::bipartite_section_to_json(bipartite_section_from_operator(r, p1, p2, config.tol))};
  }
  return failure(kUnknownName, "unknown-kind", kind);
}

}  // namespace gleasonkit::cli
