#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace modal {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint32_t seed = 0;
  std::string suite;  // run everything when empty
};

/// Runs the verification suites (all of them, or the one named in the
/// options) and reports one result per suite. Suites never throw; an
/// escaped exception is reported as a failure of its suite. Output is
/// deterministic for a fixed seed.
std::vector<SuiteResult> run_acceptance(const AcceptanceOptions& options);

/// Suite names in run order: marker-uniqueness, chain-structure,
/// guard-faithfulness, witness-embedding, root-linking, star-substitution,
/// qbf-translation, single-variable-pipeline, oracle-agreement.
std::vector<std::string> acceptance_suite_names();

}  // namespace modal
