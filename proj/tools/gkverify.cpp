#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gk/report.hpp"
#include "gk/verify.hpp"

namespace {

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw gk::UsageError("--tol expects <id>=<value>, got '" + item + "'");
    const std::string id = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw gk::UsageError("--tol value for '" + id + "' is not a number");
    out[id] = v;
  }
  return out;
}

void list_checks() {
  for (const auto& info : gk::check_registry())
    fmt::print("{:<20} {:<12} {:.0e}  {}\n", info.id, info.group, info.tolerance, info.description);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify generalized Kenmotsu identities on coordinate-chart models"};
  app.require_subcommand(1);

  gk::RunConfig config;
  std::vector<std::string> tol_items;
  std::string format = "text";
  auto* verify = app.add_subcommand("verify", "Run the check suite on a model");
  verify->add_option("--model", config.model, "control | example22 | example23 | warped")->required();
  verify->add_option("--n", config.n, "Half the fiber dimension");
  verify->add_option("--s", config.s, "Number of structure vector fields");
  verify->add_option("--c1", config.c1, "example23 constant c1");
  verify->add_option("--c2", config.c2, "example23 constant c2");
  verify->add_option("--k", config.k, "Warping constant, f = k exp(t_1 + ... + t_s)");
  verify->add_option("--points", config.points, "Number of sample points");
  verify->add_option("--seed", config.seed, "Sampling seed");
  verify->add_option("--tol", tol_items, "Tolerance override <id>=<value>, repeatable");
  verify->add_option("--checks", config.checks, "Comma-separated check ids to run")->delimiter(',');
  verify->add_option("--format", format, "text | json");
  verify->add_option("--threads", config.threads, "Worker threads (0 = hardware concurrency)");

  app.add_subcommand("checks", "List the registered checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (app.got_subcommand("checks")) {
    list_checks();
    return 0;
  }

  try {
    config.tol = parse_tolerances(tol_items);
    config.format = gk::parse_format(format);
    const gk::VerificationReport report = gk::run_verify(config);
    std::cout << gk::emit_report(report, config.format);
    return gk::exit_code(report);
  } catch (const gk::UsageError& e) {
    std::cerr << "gkverify: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gkverify: " << e.what() << "\n";
    return 1;
  }
}
