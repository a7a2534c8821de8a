#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gcy/io.hpp"

namespace gcy::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNotConverged = 3, kUnstable = 4 };

// Runs one command line; argv[0] is the program name.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

struct CaseResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool exact = false;  // value must be exactly 0
  bool passed() const;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;
  json to_json() const;
  bool ok() const;
};

std::vector<std::string> suite_names();
// nullopt for an unknown suite name
std::optional<SuiteResult> run_suite(const std::string& name, std::uint64_t seed);

// Keys: dim, N, K, seed, initial, perturbation, H, tol, max_iter, mode.
// Relative "file:" paths resolve against base_dir.
FlowProblem parse_config(const json& j, const std::filesystem::path& base_dir);

}  // namespace gcy::cli
