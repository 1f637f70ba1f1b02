#include "gk/report.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace gk {
namespace {

using nlohmann::json;

CheckStatus parse_status(const std::string& s) {
  if (s == "assert") return CheckStatus::assertion;
  if (s == "diagnostic") return CheckStatus::diagnostic;
  throw std::invalid_argument("bad check status '" + s + "'");
}

Bound parse_bound(const std::string& s) {
  if (s == "upper") return Bound::upper;
  if (s == "lower") return Bound::lower;
  throw std::invalid_argument("bad bound '" + s + "'");
}

CheckResult parse_result(const std::string& s) {
  for (auto r : {CheckResult::pass, CheckResult::fail, CheckResult::diagnostic, CheckResult::error})
    if (s == to_string(r)) return r;
  throw std::invalid_argument("bad check result '" + s + "'");
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

json config_to_json(const RunConfig& c) {
  json tol = json::object();
  for (const auto& [id, value] : c.tol) tol[id] = value;
  return json{{"model", c.model}, {"n", c.n},           {"s", c.s},        {"c1", c.c1},
              {"c2", c.c2},       {"k", c.k},           {"points", c.points}, {"seed", c.seed},
              {"tol", tol},       {"checks", c.checks}, {"format", to_string(c.format)}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.model = j.at("model").get<std::string>();
  c.n = j.at("n").get<int>();
  c.s = j.at("s").get<int>();
  c.c1 = j.at("c1").get<double>();
  c.c2 = j.at("c2").get<double>();
  c.k = j.at("k").get<double>();
  c.points = j.at("points").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.tol = j.at("tol").get<std::map<std::string, double>>();
  c.checks = j.at("checks").get<std::vector<std::string>>();
  c.format = parse_format(j.at("format").get<std::string>());
  return c;
}

std::string emit_text(const VerificationReport& r) {
  const RunConfig& c = r.config;
  std::string out = fmt::format("model {} (n={}, s={}", c.model, c.n, c.s);
  if (c.model == "example23") out += fmt::format(", c1={}, c2={}", c.c1, c.c2);
  if (c.model == "warped") out += fmt::format(", k={}", c.k);
  out += fmt::format(")  points={}  seed={}\n\n", c.points, c.seed);
  out += fmt::format("{:<20} {:<10} {:<10} {:>12} {:>10} {:>8}\n", "id", "status", "result", "residual", "tolerance",
                     "samples");
  out += std::string(75, '-') + "\n";
  for (const auto& chk : r.checks) {
    const std::string tol = chk.tolerance ? fmt::format("{:.0e}", *chk.tolerance) : "-";
    const std::string bound = chk.bound == Bound::lower ? ">" : "";
    out += fmt::format("{:<20} {:<10} {:<10} {:>12.3e} {:>10} {:>8}\n", chk.id, to_string(chk.status),
                       to_string(chk.result), chk.residual, bound + tol, chk.samples);
    if (chk.result == CheckResult::error) out += fmt::format("    {}\n", chk.notes);
  }
  const ReportSummary& s = r.summary;
  out += fmt::format("\nasserts: {} total, {} failed; diagnostics: {}; errors: {}\n", s.asserts_total,
                     s.asserts_failed, s.diagnostics, s.errors);
  out += fmt::format("wall time: {:.2f} s\n", r.wall_time);
  return out;
}

}  // namespace

json checks_to_json(const std::vector<IdentityCheck>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    arr.push_back(json{{"id", c.id},
                       {"status", to_string(c.status)},
                       {"bound", to_string(c.bound)},
                       {"residual", number_or_null(c.residual)},
                       {"tolerance", c.tolerance ? json(*c.tolerance) : json(nullptr)},
                       {"samples", c.samples},
                       {"result", to_string(c.result)},
                       {"notes", c.notes}});
  }
  return arr;
}

json report_to_json(const VerificationReport& r) {
  return json{{"config", config_to_json(r.config)},
              {"checks", checks_to_json(r.checks)},
              {"summary",
               {{"asserts_total", r.summary.asserts_total},
                {"asserts_failed", r.summary.asserts_failed},
                {"diagnostics", r.summary.diagnostics},
                {"errors", r.summary.errors}}},
              {"wall_time", r.wall_time}};
}

VerificationReport report_from_json(const json& doc) {
  VerificationReport r;
  r.config = config_from_json(doc.at("config"));
  for (const auto& j : doc.at("checks")) {
    IdentityCheck c;
    c.id = j.at("id").get<std::string>();
    c.status = parse_status(j.at("status").get<std::string>());
    c.bound = parse_bound(j.at("bound").get<std::string>());
    c.residual = number_from(j.at("residual"));
    if (!j.at("tolerance").is_null()) c.tolerance = j.at("tolerance").get<double>();
    c.samples = j.at("samples").get<int>();
    c.result = parse_result(j.at("result").get<std::string>());
    c.notes = j.at("notes").get<std::string>();
    r.checks.push_back(std::move(c));
  }
  const json& s = doc.at("summary");
  r.summary.asserts_total = s.at("asserts_total").get<int>();
  r.summary.asserts_failed = s.at("asserts_failed").get<int>();
  r.summary.diagnostics = s.at("diagnostics").get<int>();
  r.summary.errors = s.at("errors").get<int>();
  r.wall_time = doc.at("wall_time").get<double>();
  return r;
}

std::string emit_report(const VerificationReport& report, ReportFormat format) {
  if (format == ReportFormat::json) return report_to_json(report).dump(2) + "\n";
  return emit_text(report);
}

ReportFormat parse_format(std::string_view name) {
  if (name == "text") return ReportFormat::text;
  if (name == "json") return ReportFormat::json;
  throw UsageError("unknown format '" + std::string(name) + "' (expected text or json)");
}

const char* to_string(ReportFormat format) noexcept { return format == ReportFormat::json ? "json" : "text"; }

}  // namespace gk
