#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "gleasonkit/cli.hpp"
#include "gleasonkit/json_io.hpp"
#include "support/expect.hpp"
#include "support/process.hpp"

using namespace gleasonkit;
using namespace gleasonkit::cli;
using nlohmann::json;

namespace {

const std::string kCli = GLEASONKIT_CLI_PATH;

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("gleasonkit_test_" + name);
  std::ofstream(path, std::ios::binary) << content;
  return path.string();
}

std::string functional_json(const ComplexMatrix& m, Index d1, Index d2) {
  return io::functional_to_json(FunctionalOperator(d1, d2, HermitianOperator::symmetrized(m))).dump();
}

std::string pt_fixture() {
  return functional_json(partial_transpose(max_entangled_projector(3), Subsystem::Second, {3, 3}), 3, 3);
}

}  // namespace

TEST_CASE("json matrix schema") {
  ComplexMatrix m(2, 3);
  m << Complex(1, 2), 3, 4, 5, 6, Complex(0, -1);
  const json j = io::matrix_to_json(m);
  CHECK(j["rows"] == 2);
  CHECK(j["cols"] == 3);
  CHECK(j["entries"][1] == json::array({3.0, 0.0}));
  CHECK(j["entries"][5] == json::array({0.0, -1.0}));
  CHECK(io::matrix_from_json(j) == m);
  expect_error("parse-error", [] { io::matrix_from_json(json::parse(R"({"rows":2,"cols":2,"entries":[[1,0]]})")); });
  expect_error("parse-error", [] { io::matrix_from_json(json::parse(R"({"rows":1,"cols":1,"entries":[[1]]})")); });
  expect_error("parse-error", [] { io::matrix_from_json(json::parse(R"({"cols":1,"entries":[[1,0]]})")); });
}

TEST_CASE("json round trips for posets, sections and superoperators") {
  Rng rng = make_rng(81);
  ContextPoset poset = random_poset(3, 4, rng);
  poset.add_coarse_graining("c0", {{0, 2}, {1}}, "c0c");
  const Section s = section_from_state(random_density(3, rng), poset);
  const Section back = io::section_from_json(json::parse(io::section_to_json(s).dump()));
  CHECK(back.poset.size() == 5);
  CHECK(back.poset.arrows().size() == 1);
  CHECK(back.poset.arrows()[0].partition == Partition{{0, 2}, {1}});
  for (const auto& [label, v] : s.values) CHECK(back.values.at(label) == v);
  CHECK(validate_section(back).ok());

  const SuperOperator phi = random_cp_map(2, 3, 2, rng);
  const json sj = io::superoperator_to_json(phi);
  CHECK(sj["vec_convention"] == "column");
  CHECK(io::superoperator_from_json(sj).matrix() == phi.matrix());
  json wrong = sj;
  wrong["vec_convention"] = "row";
  expect_error("parse-error", [&] { io::superoperator_from_json(wrong); });

  const ContextPoset p2 = random_poset(2, 4, rng, "b");
  const BipartiteSection bs = bipartite_section_from_operator(
      FunctionalOperator(3, 2, HermitianOperator::symmetrized(random_density(6, rng).matrix())), poset, p2);
  const BipartiteSection bb = io::bipartite_section_from_json(io::bipartite_section_to_json(bs));
  CHECK(bb.values == bs.values);
  json bad_dims = io::bipartite_section_to_json(bs);
  bad_dims["d1"] = 4;
  expect_error("parse-error", [&] { io::bipartite_section_from_json(bad_dims); });
}

TEST_CASE("output schemas") {
  const json r = io::reconstruction_to_json(reconstruct_state(section_from_state(
      DensityOperator::maximally_mixed(2), ContextPoset({standard_context(2, "z")}))));
  for (const char* k : {"state", "residual", "completeness_rank", "psd_defect", "is_state"}) CHECK(r.contains(k));
  const json c = io::classification_to_json(classify_functional(
      FunctionalOperator(2, 2, HermitianOperator(ComplexMatrix::Identity(4, 4) / 4.0)), 2, 9));
  for (const char* k : {"verdict", "min_eigenvalue", "min_product_expectation", "orientation", "witness", "restarts", "seed"})
    CHECK(c.contains(k));
  CHECK(c["witness"].is_null());
  CHECK(c["seed"] == 9);
}

TEST_CASE("cmd_reconstruct") {
  RunConfig config;
  config.seed = 4;
  const CommandResult gen = cmd_gen("section", 4, config);
  REQUIRE(gen.exit_code == kOk);
  const CommandResult ok = cmd_reconstruct(gen.output.dump(), config);
  CHECK(ok.exit_code == kOk);
  CHECK(ok.output["is_state"] == true);
  CHECK(ok.output["residual"].get<double>() <= 1e-8);

  Rng rng = make_rng(82);
  const Section qubit = frame_function_section({}, random_poset(2, 30, rng));
  const CommandResult q = cmd_reconstruct(io::section_to_json(qubit).dump(), config);
  CHECK(q.exit_code == kOk);
  CHECK((q.output["is_state"] == false || q.output["residual"].get<double>() > 0.01));

  CHECK(cmd_reconstruct("{not json", config).exit_code == kParseError);
  CHECK(cmd_reconstruct("{not json", config).output["error"] == "parse-error");
  CHECK(cmd_reconstruct(R"({"values":{}})", config).exit_code == kParseError);

  json invalid = gen.output;
  invalid["values"]["c0"][0] = 0.9;
  const CommandResult bad = cmd_reconstruct(invalid.dump(), config);
  CHECK(bad.exit_code == kInvalidInput);
  CHECK(bad.output["error"] == "invalid-section");

  json not_pvm = gen.output;
  not_pvm["poset"]["contexts"][0]["projections"][0]["entries"][0] = json::array({0.5, 0.0});
  CHECK(cmd_reconstruct(not_pvm.dump(), config).exit_code == kInvalidInput);
}

TEST_CASE("cmd_classify") {
  RunConfig config;
  config.seed = 5;
  const CommandResult pt = cmd_classify(pt_fixture(), config);
  CHECK(pt.exit_code == kOk);
  CHECK(pt.output["verdict"] == "BlockPositiveNotState");
  CHECK(pt.output["orientation"] == "Canonical");

  const ComplexMatrix iso = 0.5 * max_entangled_projector(3) + 0.5 * ComplexMatrix::Identity(9, 9) / 9.0;
  CHECK(cmd_classify(functional_json(iso, 3, 3), config).output["verdict"] == "State");

  const CommandResult w = cmd_classify(
      functional_json(kron(pauli_z(), pauli_z()) + ComplexMatrix::Identity(4, 4) / 4.0, 2, 2), config);
  CHECK(w.output["verdict"] == "NotBlockPositive");
  CHECK(w.output["witness"]["u"].size() == 2);
  CHECK(w.output["witness"]["v"].size() == 2);

  const CommandResult bip = cmd_gen("bipartite", 2, config);
  const CommandResult cb = cmd_classify(bip.output.dump(), config);
  CHECK(cb.exit_code == kOk);
  CHECK(cb.output["verdict"] == "State");

  Rng rng = make_rng(83);
  const BipartiteSection thin = bipartite_section_from_operator(
      FunctionalOperator(3, 3, HermitianOperator(max_entangled_projector(3))), random_poset(3, 2, rng, "a"),
      random_poset(3, 5, rng, "b"));
  const CommandResult incomplete = cmd_classify(io::bipartite_section_to_json(thin).dump(), config);
  CHECK(incomplete.exit_code == kInvalidInput);
  CHECK(incomplete.output["error"] == "not-informationally-complete");

  CHECK(cmd_classify("[1,2", config).exit_code == kParseError);
  CHECK(cmd_classify(R"({"x":1})", config).exit_code == kParseError);
  const CommandResult unnormalized = cmd_classify(functional_json(ComplexMatrix::Identity(4, 4) / 4.0, 2, 2), config);
  CHECK(unnormalized.exit_code == kOk);
  json bad = json::parse(functional_json(ComplexMatrix::Identity(4, 4) / 4.0, 2, 2));
  bad["R"]["entries"][0] = json::array({0.5, 0.0});
  CHECK(cmd_classify(bad.dump(), config).output["error"] == "bad-normalization");
}

TEST_CASE("cmd_demo reports") {
  RunConfig config;
  config.seed = 6;
  for (const char* name : {"qubit-counterexample", "pt-qutrit", "gns-roundtrip"}) {
    const CommandResult r = cmd_demo(name, config);
    CHECK(r.exit_code == kOk);
    CHECK(r.output["passed"] == true);
    CHECK(r.output["demo"] == name);
    for (const auto& a : r.output["assertions"]) CHECK_MESSAGE(a["passed"] == true, a.dump());
    CHECK(render(r.output) == render(cmd_demo(name, config).output));
  }
  CHECK(cmd_demo("nope", config).exit_code == kUnknownName);
}

TEST_CASE("cmd_gen") {
  RunConfig config;
  config.seed = 7;
  for (const char* kind : {"state", "functional", "section", "bipartite"}) {
    const CommandResult a = cmd_gen(kind, 2, config);
    CHECK(a.exit_code == kOk);
    CHECK(render(a.output) == render(cmd_gen(kind, 2, config).output));
  }
  CHECK(io::matrix_from_json(cmd_gen("state", 3, config).output).rows() == 3);
  CHECK(cmd_gen("state", 1, config).exit_code == kInvalidInput);
  CHECK(cmd_gen("state", 10, config).exit_code == kInvalidInput);
  CHECK(cmd_gen("no-such-kind", 3, config).exit_code == kUnknownName);
  RunConfig other = config;
  other.seed = 8;
  CHECK(render(cmd_gen("state", 3, config).output) != render(cmd_gen("state", 3, other).output));
}

TEST_CASE("binary exit-code contract and determinism") {
  const std::string cli = "'" + kCli + "'";
  const ProcessResult d1 = run_command(cli + " demo pt-qutrit --seed 3");
  const ProcessResult d2 = run_command(cli + " demo pt-qutrit --seed 3");
  CHECK(d1.status == 0);
  CHECK(d1.out == d2.out);
  CHECK(json::parse(d1.out)["seed"] == 3);

  CHECK(run_command(cli + " demo nope").status == 4);
  CHECK(run_command(cli + " gen nope").status == 4);
  CHECK(run_command(cli + " gen state --dim 12").status == 2);

  const std::string garbage = temp_file("garbage.json", "{{{");
  CHECK(run_command(cli + " reconstruct '" + garbage + "'").status == 3);
  CHECK(run_command(cli + " classify '" + garbage + "'").status == 3);
  CHECK(run_command(cli + " reconstruct /nonexistent/file.json").status == 3);

  const std::string pt = temp_file("pt.json", pt_fixture());
  const ProcessResult c = run_command(cli + " classify '" + pt + "' --restarts 8 --seed 2");
  CHECK(c.status == 0);
  CHECK(json::parse(c.out)["verdict"] == "BlockPositiveNotState");
  CHECK(json::parse(c.out)["restarts"] == 8);
  CHECK(run_command("cat '" + pt + "' | " + cli + " classify -").out == run_command(cli + " classify '" + pt + "'").out);

  const ProcessResult section = run_command(cli + " gen section --dim 3 --seed 11");
  CHECK(section.status == 0);
  const std::string sec = temp_file("section.json", section.out);
  const ProcessResult rec = run_command(cli + " reconstruct '" + sec + "'");
  CHECK(rec.status == 0);
  CHECK(json::parse(rec.out)["is_state"] == true);
  json broken = json::parse(section.out);
  broken["values"]["c1"][1] = 0.99;
  CHECK(run_command(cli + " reconstruct '" + temp_file("broken.json", broken.dump()) + "'").status == 2);

  // Seed falls back to GLEASONKIT_SEED, and --out writes the same bytes.
  const ProcessResult env = run_command("GLEASONKIT_SEED=11 " + cli + " gen section --dim 3");
  CHECK(env.out == section.out);
  const auto out_path = std::filesystem::temp_directory_path() / "gleasonkit_test_out.json";
  CHECK(run_command(cli + " gen section --dim 3 --seed 11 --out '" + out_path.string() + "'").status == 0);
  std::ifstream in(out_path, std::ios::binary);
  CHECK(std::string(std::istreambuf_iterator<char>(in), {}) == section.out);
  CHECK(run_command("GLEASONKIT_SEED=abc " + cli + " demo gns-roundtrip").status == 3);

  const ProcessResult tight = run_command(cli + " --tol-psd -0.5 classify '" + pt + "'");
  CHECK(json::parse(tight.out)["verdict"] == "State");
}
