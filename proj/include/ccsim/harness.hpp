#pragma once

// Experiment driver: runs a registered protocol over a set of inputs, many
// seeded trials each, and reports estimates against exact values.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccsim/field.hpp"
#include "ccsim/runtime.hpp"

namespace ccsim {

enum class InputMode { Explicit, Grid, Exhaustive, Random };
enum class ReportFormat { Csv, Json };

struct ProtocolParams {
  std::size_t n = 0;  // input length; 0 derives it from k (n = 2^k) or uses a default
  std::size_t k = 2;
  std::size_t m = 2;
  Rational epsilon{1, 4};
};

struct ExperimentConfig {
  std::string protocol;
  InputMode mode = InputMode::Exhaustive;
  std::vector<std::pair<std::string, std::string>> inputs;  // Explicit mode
  std::size_t grid_points = 5;                              // per axis, Grid mode
  std::size_t random_count = 10;                            // Random mode
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::string seed_source = "config";  // recorded in the report header
  ReportFormat format = ReportFormat::Csv;
  double sigma_bound = 5.0;  // pass iff |estimate - exact| <= sigma_bound * SE
  ProtocolParams params;
  unsigned threads = 1;
};

// Reads ExperimentConfig from a JSON document. Throws ConfigError.
ExperimentConfig parse_experiment_config(std::string_view json_text);

// Seed override from the environment, if set.
inline constexpr const char* kSeedEnvVar = "CCSIM_SEED";
void apply_seed_override(ExperimentConfig& config);

struct ResourceCounts {
  std::uint64_t bits_sent = 0;    // max over trials
  std::uint64_t qubits_sent = 0;  // max over trials
  std::size_t ebits = 0;
};

struct EstimateRow {
  std::string protocol;
  std::string input_id;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  double std_err = 0.0;  // sqrt(p(1-p)/trials) at the estimate
  std::optional<double> exact;
  std::optional<double> abs_err;
  ResourceCounts resources;
  bool pass = false;
  std::uint64_t accounting_mismatches = 0;  // runs whose counters disagree with the transcript
};

struct Report {
  ExperimentConfig config;
  std::vector<EstimateRow> rows;

  bool all_pass() const;
  std::string to_csv() const;
  std::string to_json() const;
  std::string render() const { return config.format == ReportFormat::Csv ? to_csv() : to_json(); }
};

struct RegistryEntry {
  std::string name;
  std::string inputs;  // "bits" or "angles"
  std::string summary;
};
std::vector<RegistryEntry> registered_protocols();

Report run_experiment(const ExperimentConfig& config);

std::string format_number(double v);

}  // namespace ccsim
