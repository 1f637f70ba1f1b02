#include "gk/verify.hpp"

#include <algorithm>
#include <chrono>

#include "gk/models.hpp"
#include "gk/sampling.hpp"

namespace gk {

void validate_config(const RunConfig& config) {
  if (std::find(model_names().begin(), model_names().end(), config.model) == model_names().end())
    throw UsageError("unknown model '" + config.model + "' (expected control, example22, example23 or warped)");
  if (config.n < 1 || config.s < 1) throw UsageError("n and s must be at least 1");
  if (config.model == "example23" && (config.n != 2 || config.s != 3))
    throw UsageError("example23 is fixed at n = 2, s = 3");
  if (config.points < 1) throw UsageError("points must be at least 1");
  for (const auto& id : config.checks)
    if (!find_check(id)) throw UsageError("unknown check id '" + id + "'");
  for (const auto& [id, value] : config.tol) {
    if (!find_check(id)) throw UsageError("unknown check id '" + id + "' in --tol");
    if (!(value > 0.0)) throw UsageError("tolerance for '" + id + "' must be positive");
  }
}

ChartModel build_model(const RunConfig& config) {
  validate_config(config);
  try {
    if (config.model == "example22") return build_example_2_2(config.n, config.s);
    if (config.model == "example23") return build_example_2_3(config.c1, config.c2);
    if (config.model == "control") return build_control(config.n, config.s);
    WarpedProductSpec spec;
    spec.n = config.n;
    spec.s = config.s;
    spec.k = config.k;
    return build_warped(spec);
  } catch (const ModelError& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::vector<double>> config_points(const RunConfig& config, int dim) {
  return sample_points(dim, config.points, config.seed);
}

ReportSummary summarize(const std::vector<IdentityCheck>& checks) {
  ReportSummary s;
  for (const auto& c : checks) {
    if (c.result == CheckResult::error) ++s.errors;
    if (c.status == CheckStatus::assertion) {
      ++s.asserts_total;
      if (c.result != CheckResult::pass) ++s.asserts_failed;
    } else {
      ++s.diagnostics;
    }
  }
  return s;
}

VerificationReport run_verify(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const ChartModel model = build_model(config);
  const auto points = config_points(config, model.dim());

  SuiteOptions options;
  options.seed = config.seed;
  options.tolerances = config.tol;
  options.checks = config.checks;
  options.threads = config.threads;

  VerificationReport report;
  report.config = config;
  report.checks = run_checks(model, points, options);
  report.summary = summarize(report.checks);
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

int exit_code(const VerificationReport& report) noexcept {
  for (const auto& c : report.checks) {
    if (c.result == CheckResult::error) return 1;
    if (c.status == CheckStatus::assertion && c.result != CheckResult::pass) return 1;
  }
  return 0;
}

}  // namespace gk
