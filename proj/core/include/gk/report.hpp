#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gk/verify.hpp"

namespace gk {

[[nodiscard]] std::string emit_report(const VerificationReport& report, ReportFormat format);

/// JSON document with keys config, checks (sorted by id), summary, wall_time.
/// Non-finite residuals are written as null.
[[nodiscard]] nlohmann::json report_to_json(const VerificationReport& report);
[[nodiscard]] VerificationReport report_from_json(const nlohmann::json& doc);

[[nodiscard]] nlohmann::json checks_to_json(const std::vector<IdentityCheck>& checks);

[[nodiscard]] ReportFormat parse_format(std::string_view name);
[[nodiscard]] const char* to_string(ReportFormat format) noexcept;

}  // namespace gk
