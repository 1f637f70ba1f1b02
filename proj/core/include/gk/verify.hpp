#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gk/identities.hpp"
#include "gk/model.hpp"

namespace gk {

/// Bad command line or configuration. Maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ReportFormat { text, json };

struct RunConfig {
  std::string model = "example22";
  int n = 2;
  int s = 3;
  double c1 = 1.0;
  double c2 = 1.0;
  double k = 1.0;
  int points = 50;
  std::uint64_t seed = 42;
  std::map<std::string, double> tol;
  std::vector<std::string> checks;
  ReportFormat format = ReportFormat::text;
  /// Not part of the report; 0 picks the hardware concurrency.
  unsigned threads = 0;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct ReportSummary {
  int asserts_total = 0;
  /// Asserted checks that failed or errored.
  int asserts_failed = 0;
  int diagnostics = 0;
  int errors = 0;

  friend bool operator==(const ReportSummary&, const ReportSummary&) = default;
};

struct VerificationReport {
  RunConfig config;
  /// Sorted by id.
  std::vector<IdentityCheck> checks;
  ReportSummary summary;
  double wall_time = 0.0;
};

inline const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names{"control", "example22", "example23", "warped"};
  return names;
}

/// Builds the named model. Throws UsageError for unknown names or
/// parameters the model cannot take.
[[nodiscard]] ChartModel build_model(const RunConfig& config);

/// Throws UsageError on invalid configurations.
void validate_config(const RunConfig& config);

/// Sample points for the configured model, deterministic in the seed.
[[nodiscard]] std::vector<std::vector<double>> config_points(const RunConfig& config, int dim);

[[nodiscard]] ReportSummary summarize(const std::vector<IdentityCheck>& checks);

/// Runs every registered check (or the configured subset). Throws UsageError
/// for invalid configurations; evaluation failures are recorded in the report.
[[nodiscard]] VerificationReport run_verify(const RunConfig& config);

/// 0 when every asserted check passes and nothing errored, 1 otherwise.
[[nodiscard]] int exit_code(const VerificationReport& report) noexcept;

}  // namespace gk
