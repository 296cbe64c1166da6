#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kakeya/errors.hpp"
#include "kakeya/field.hpp"

namespace kakeya {

// Malformed or inconsistent experiment configuration.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct MapSpec {
  std::string l;
  std::string m;
  friend bool operator==(const MapSpec&, const MapSpec&) = default;
};

// Seeded random maps: L and M of total degree at most max_degree in (t1, t2).
struct FamilySpec {
  std::uint32_t count = 0;
  std::uint32_t max_degree = 3;
  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

struct ExperimentConfig {
  std::string base = "5";                              // coefficient field of the maps
  std::vector<std::string> tower{"25", "125", "625"};  // sweep fields
  std::vector<MapSpec> maps;                           // explicit maps
  std::optional<FamilySpec> family;                    // generated after the explicit maps
  std::vector<std::string> fields;  // when set, replaces the field list of every suite check
  std::optional<std::vector<std::string>> suite;  // check names; unset runs every check
  std::uint64_t budget = 1'000'000'000;           // evaluated points per enumeration
  std::uint64_t memory_mb = 1024;                 // working memory per enumeration
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string out = "kakeya-out";
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// YAML text form. Unknown keys and wrong types raise ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
// Canonical text: fixed key order, every key written.
std::string emit_config(const ExperimentConfig& config);

// Deterministic in (base, count, max_degree, seed).
std::vector<MapSpec> generate_family(const FieldRef& base, const FamilySpec& family, std::uint64_t seed);

// Explicit maps then the generated family; the two cubic maps
// (t1^3, t2^3) and (t2^3, t1^3) when both are empty.
std::vector<MapSpec> resolve_maps(const ExperimentConfig& config);

enum class CheckStatus { kPass, kFail, kEvidenceOnly, kHypothesisRefused, kBudgetExceeded };

std::string to_string(CheckStatus status);

struct CheckRecord {
  std::string name;
  std::string field;   // field spec, or the comma-joined tower
  std::string anchor;  // the statement being checked
  CheckStatus status = CheckStatus::kPass;
  nlohmann::json numbers = nlohmann::json::object();
  std::string note;
  double wall_ms = 0;  // kept out of the JSON and CSV reports
};

struct SuiteResult {
  std::vector<CheckRecord> records;

  // No proved-statement check failed.
  bool passed() const;
  int exit_code() const { return passed() ? 0 : 1; }
};

// Names of every suite check in run order.
const std::vector<std::string>& suite_check_names();
// Field list a check uses when the config does not override it.
std::vector<std::string> default_check_fields(const std::string& name);

// Runs the selected checks in catalog order. Budget and hypothesis problems
// are recorded per check and do not stop the suite.
SuiteResult run_suite(const ExperimentConfig& config);

nlohmann::json to_json(const SuiteResult& result);
std::string suite_csv(const SuiteResult& result);
std::string suite_timing_csv(const SuiteResult& result);

struct SweepRow {
  std::string l, m;
  std::string field;
  std::uint64_t q = 0;
  std::uint64_t image_size = 0;
  double margin = 0;  // |E| - q^3/4
  double c_of_q = 0;
  std::uint64_t fiber_count = 0;
  std::uint64_t cs_bound = 0;
  std::string branch;
  double wall_ms = 0;
};

// One row per (map, field of the tower), maps outermost.
std::vector<SweepRow> sweep(const ExperimentConfig& config);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_timing_csv(const std::vector<SweepRow>& rows);

// Writes the string to `path`, creating parent directories.
void write_text(const std::string& path, const std::string& text);

}  // namespace kakeya
