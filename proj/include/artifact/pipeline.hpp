#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "artifact/contraction_engine.hpp"
#include "json.hpp"

namespace artifact {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string pairPath;
  int trunc = 5;
  int arity = 3;
  std::vector<std::string> suites;  // already expanded, in pipeline order
  std::uint64_t seed = 1;
};

// Pipeline order of the suites; "all" expands to this list.
const std::vector<std::string>& suite_names();
// Comma-separated selection; "" and "none" select nothing. Throws ConfigError.
std::vector<std::string> parse_suites(const std::string& text);
// Throws ConfigError unless arity >= 1 and trunc >= arity + 2.
void validate_config(const RunConfig& cfg);

// Check families; the acceptance driver groups results by these.
enum class CheckKind { Validate, Fedosov, Contraction, Perturbed, Transfer, Matched, Uniqueness, Cohomology, Structural };
std::string to_string(CheckKind k);

struct CheckRecord {
  CheckKind kind;
  IdentityCheck check;
  bool sampled = false;
};

// A deliberately broken input that the checks must reject.
struct ControlRecord {
  ControlRecord() = default;
  explicit ControlRecord(std::string n) : name(std::move(n)) {}
  std::string name;
  bool applicable = true;
  bool detected = false;
  std::string witness;
  std::string note;
  bool pass() const { return !applicable || detected; }
};

struct Finding {
  std::string name;
  std::string detail;
};

struct StageReport {
  std::string name;
  std::string status;  // pass | fail | skipped | not-applicable | error
  std::vector<CheckRecord> checks;
  std::vector<ControlRecord> controls;
  std::vector<Finding> findings;
  nlohmann::ordered_json artifacts = nlohmann::ordered_json::object();
  std::string error;
};

struct RunReport {
  RunConfig config;
  std::string pairName;
  std::string error;  // input error before any stage ran
  std::vector<StageReport> stages;
  int exit_code() const;
  long total_checks() const;
  long failed_checks() const;
  nlohmann::ordered_json to_json() const;
  std::string summary() const;
};

// Runs the selected suites on one pair file. Input errors are recorded, not thrown.
RunReport run_pipeline(const RunConfig& cfg);

}  // namespace artifact
