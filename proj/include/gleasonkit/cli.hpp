#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "gleasonkit/tolerances.hpp"

namespace gleasonkit::cli {

enum ExitCode : int {
  kOk = 0,
  kAssertionFailed = 1,
  kInvalidInput = 2,
  kParseError = 3,
  kUnknownName = 4,
};

struct RunConfig {
  std::uint64_t seed = 0;
  Tolerances tol;
  int restarts = 16;
  std::string output_path;  // empty: stdout
};

struct CommandResult {
  int exit_code = kOk;
  nlohmann::json output;
};

/// Section JSON -> ReconstructionResult JSON.
CommandResult cmd_reconstruct(const std::string& input, const RunConfig& config);
/// FunctionalOperator or BipartiteSection JSON -> Classification JSON.
CommandResult cmd_classify(const std::string& input, const RunConfig& config);
/// "qubit-counterexample", "pt-qutrit" or "gns-roundtrip".
CommandResult cmd_demo(const std::string& name, const RunConfig& config);
/// Fixture generator: "state", "functional", "section" or "bipartite".
CommandResult cmd_gen(const std::string& kind, long long dim, const RunConfig& config);

/// Canonical serialization; identical inputs give identical bytes.
std::string render(const nlohmann::json& j);

}  // namespace gleasonkit::cli
