#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gk/geometry.hpp"
#include "gk/model.hpp"

namespace gk {

enum class CheckStatus { assertion, diagnostic };
/// Upper: the residual must stay below the tolerance. Lower: the value must
/// stay above it (used for the non-degeneracy of the volume form).
enum class Bound { upper, lower };
enum class CheckResult { pass, fail, diagnostic, error };

/// Outcome of one named identity over all sampled points. `residual` is the
/// max-abs over samples (the minimum for lower-bound checks).
struct IdentityCheck {
  std::string id;
  CheckStatus status = CheckStatus::assertion;
  Bound bound = Bound::upper;
  double residual = 0.0;
  std::optional<double> tolerance;
  int samples = 0;
  std::string notes;
  CheckResult result = CheckResult::pass;

  friend bool operator==(const IdentityCheck&, const IdentityCheck&) = default;
};

struct CheckInfo {
  std::string id;
  std::string group;
  /// Plain-text statement of what is measured.
  std::string description;
  double tolerance;
  Bound bound;
  Depth depth;
  /// Whether the identity is asserted on a given model; otherwise it is
  /// reported as a diagnostic.
  bool (*asserted)(const ChartModel&);
};

/// All checks, sorted by id.
[[nodiscard]] const std::vector<CheckInfo>& check_registry();
[[nodiscard]] const CheckInfo* find_check(std::string_view id);

struct SuiteOptions {
  std::uint64_t seed = 42;
  /// Random argument tuples per point (frame-aligned tuples come on top).
  int tuples = 20;
  /// Per-check tolerance overrides.
  std::map<std::string, double> tolerances;
  /// Checks to run; empty means all.
  std::vector<std::string> checks;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Evaluates the selected checks at every point and merges per check by
/// max-abs. Throws std::invalid_argument for unknown check ids.
[[nodiscard]] std::vector<IdentityCheck> run_checks(const ChartModel& model,
                                                    std::span<const std::vector<double>> points,
                                                    const SuiteOptions& options = {});

[[nodiscard]] std::vector<std::string> check_ids_in_group(std::string_view group);

/// Structural axioms of a metric f-manifold.
[[nodiscard]] std::vector<IdentityCheck> axioms_check(const ChartModel& model,
                                                      std::span<const std::vector<double>> points,
                                                      std::uint64_t seed = 42);
/// Closedness of every eta^i and dPhi = 2 sum eta^i ^ Phi.
[[nodiscard]] std::vector<IdentityCheck> gak_check(const ChartModel& model,
                                                   std::span<const std::vector<double>> points,
                                                   std::uint64_t seed = 42);
/// Connection, curvature and Ricci identities of generalized Kenmotsu manifolds.
[[nodiscard]] std::vector<IdentityCheck> identity_suite(const ChartModel& model,
                                                        std::span<const std::vector<double>> points,
                                                        std::uint64_t seed = 42);

[[nodiscard]] const char* to_string(CheckStatus s) noexcept;
[[nodiscard]] const char* to_string(Bound b) noexcept;
[[nodiscard]] const char* to_string(CheckResult r) noexcept;

}  // namespace gk
