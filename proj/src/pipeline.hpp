#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "field.hpp"

namespace frjac {

struct run_options {
  std::optional<std::string> field_name;  // "Q" or "Fp"
  std::optional<uint64_t> prime;
  std::optional<int> gb_cap;
  std::optional<int> degree_cap;   // graded internal-degree cap
  std::optional<int> resolve_cap;  // projective-resolution cap
  bool graded = false;
  bool dump_matrices = false;  // include sparse-triplet dumps of the differentials
};

// Fills unset caps from FRJAC_GB_CAP / FRJAC_DEGREE_CAP / FRJAC_RESOLVE_CAP.
run_options with_env_defaults(run_options opts);

// Full pipeline: parse, grading, Groebner completion, basis, complex,
// homology, self-duality, CY suite (finite route) or per-simple graded
// certificates (graded route). The returned document always contains
// "verdict" and "exit_code".
nlohmann::json run_check(const std::string& text, const std::string& name, const run_options& opts);

// Single-stage commands: "gb", "basis", "relations", "grade",
// "resolve:<S|P|I>:<vertex>".
nlohmann::json run_stage(const std::string& text, const std::string& name, const std::string& command,
                         const run_options& opts);

int exit_code_of(const nlohmann::json& report);

// Canonical serialization with volatile fields (timings) removed; two runs on
// the same input compare byte-identical.
std::string golden_form(const nlohmann::json& report);

}  // namespace frjac
