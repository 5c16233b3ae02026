// gleasonkit command-line front end.
//
//   gleasonkit reconstruct section.json
//   gleasonkit classify functional.json --restarts 64
//   gleasonkit demo pt-qutrit --seed 7
//   gleasonkit gen bipartite --dim 3 --seed 1 --out fixture.json

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gleasonkit/cli.hpp"

namespace {

std::optional<std::string> read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int emit(const gleasonkit::cli::CommandResult& r, const gleasonkit::cli::RunConfig& config) {
  const std::string text = gleasonkit::cli::render(r.output);
  if (config.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << config.output_path << "\n";
      return gleasonkit::cli::kInvalidInput;
    }
    out << text;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace gleasonkit::cli;

  CLI::App app{"Gleason-type state reconstruction and bipartite functional classification"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::optional<std::uint64_t> seed;
  double tol_psd = config.tol.psd_cutoff;
  app.add_option("--seed", seed, "RNG seed (falls back to GLEASONKIT_SEED, then 0)");
  app.add_option("--restarts", config.restarts, "see-saw restarts")->check(CLI::PositiveNumber);
  app.add_option("--tol-psd", tol_psd, "PSD cutoff on the minimum eigenvalue");
  app.add_option("--out", config.output_path, "output file (default stdout)");

  std::string input;
  auto* reconstruct = app.add_subcommand("reconstruct", "reconstruct a state from a Section JSON");
  reconstruct->add_option("input", input, "Section JSON file, or - for stdin")->required();
  auto* classify = app.add_subcommand("classify", "classify a FunctionalOperator or BipartiteSection JSON");
  classify->add_option("input", input, "input JSON file, or - for stdin")->required();

  std::string name;
  auto* demo = app.add_subcommand("demo", "run a self-checking end-to-end scenario");
  demo->add_option("name", name, "qubit-counterexample | pt-qutrit | gns-roundtrip")->required();

  std::string kind;
  long long dim = 3;
  auto* gen = app.add_subcommand("gen", "generate a seeded fixture");
  gen->add_option("kind", kind, "state | functional | section | bipartite")->required();
  gen->add_option("--dim", dim, "local dimension");

  CLI11_PARSE(app, argc, argv);

  if (!seed) {
    if (const char* env = std::getenv("GLEASONKIT_SEED")) {
      try {
        seed = std::stoull(env);
      } catch (const std::exception&) {
        std::cerr << "GLEASONKIT_SEED is not an unsigned integer\n";
        return kParseError;
      }
    }
  }
  config.seed = seed.value_or(0);
  config.tol.psd_cutoff = tol_psd;

  if (*demo) return emit(cmd_demo(name, config), config);
  if (*gen) return emit(cmd_gen(kind, dim, config), config);

  const auto text = read_input(input);
  if (!text) {
    return emit({kParseError, {{"error", "parse-error"}, {"detail", "cannot read " + input}}}, config);
  }
  if (*reconstruct) return emit(cmd_reconstruct(*text, config), config);
  return emit(cmd_classify(*text, config), config);
}
