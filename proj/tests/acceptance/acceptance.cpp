// Acceptance suite: one line per criterion, exit status 0 iff every selected
// criterion passes. `--criterion N` runs a single criterion.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fd_oracle.hpp"
#include "gk/identities.hpp"
#include "gk/models.hpp"
#include "gk/report.hpp"
#include "gk/sampling.hpp"
#include "gk/structure.hpp"
#include "gk/verify.hpp"

namespace {

using namespace gk;

constexpr int kPoints = 50;
constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = true;
  std::vector<std::string> detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail.push_back("FAILED " + what);
    }
  }
  void note(const std::string& what) { detail.push_back(what); }
};

ChartModel warped(int n, int s, double k) {
  WarpedProductSpec spec;
  spec.n = n;
  spec.s = s;
  spec.k = k;
  return build_warped(spec);
}

std::vector<ChartModel> kenmotsu_models() {
  return {build_example_2_2(2, 3), build_example_2_3(), warped(2, 3, 2.0)};
}

std::vector<IdentityCheck> run(const ChartModel& model, std::vector<std::string> ids, double lo = sample_lo,
                               double hi = sample_hi) {
  SuiteOptions o;
  o.seed = kSeed;
  o.checks = std::move(ids);
  return run_checks(model, sample_points(model.dim(), kPoints, kSeed, lo, hi), o);
}

std::string fmt_res(double r) { return fmt::format("{:.2e}", r); }

// Every listed check must have a residual strictly below tol.
void require_below(Outcome& out, const ChartModel& model, const std::vector<IdentityCheck>& checks, double tol) {
  double worst = 0.0;
  std::string worst_id;
  for (const auto& c : checks) {
    const bool ok = c.result != CheckResult::error && c.residual < tol;
    out.require(ok, fmt::format("{} {}: {} >= {}", model.name, c.id, fmt_res(c.residual), tol));
    if (!(c.residual <= worst)) {
      worst = c.residual;
      worst_id = c.id;
    }
  }
  out.note(fmt::format("{} n={} s={}: worst {} {}", model.name, model.n, model.s, worst_id, fmt_res(worst)));
}

Outcome c01_axioms() {
  Outcome out;
  for (const auto& model : {build_example_2_2(2, 3), build_example_2_3(), warped(2, 3, 2.0), build_control(2, 3)})
    require_below(out, model, run(model, check_ids_in_group("axioms")), 1e-10);
  return out;
}

Outcome c02_classification() {
  Outcome out;
  for (const auto& model : kenmotsu_models())
    require_below(out, model, run(model, {"gak_deta", "gak_dphi", "normality_n1"}), 1e-9);
  const auto control = build_control(2, 2);
  const auto gak = run(control, {"gak_dphi"}, generic_lo, generic_hi);
  out.require(gak[0].residual > 0.1, "control gak_dphi residual " + fmt_res(gak[0].residual) + " not > 0.1");
  out.note("control gak_dphi " + fmt_res(gak[0].residual));
  require_below(out, control, run(control, check_ids_in_group("axioms"), generic_lo, generic_hi), 1e-10);
  return out;
}

Outcome c03_kenmotsu_condition() {
  Outcome out;
  for (const auto& model : kenmotsu_models()) require_below(out, model, run(model, {"eq9"}), 1e-9);
  // generic points and generic arguments: every coordinate in [0.3, 1]
  const auto control = build_control(2, 2);
  Rng rng(kSeed);
  double smallest = 1e300;
  for (const auto& p : sample_points(control.dim(), kPoints, kSeed, generic_lo, generic_hi)) {
    const StructurePoint sp(control, p, Depth::connection);
    for (int t = 0; t < 20; ++t) {
      Vec x(control.dim());
      Vec y(control.dim());
      for (int a = 0; a < control.dim(); ++a) {
        x(a) = rng.uniform(generic_lo, generic_hi);
        y(a) = rng.uniform(generic_lo, generic_hi);
      }
      smallest = std::min(smallest, sp.geometry().norm(kenmotsu_defect(sp, x, y)));
    }
  }
  out.require(smallest > 0.05, "control kenmotsu defect min " + fmt_res(smallest) + " not > 0.05");
  out.note("control kenmotsu defect min over generic samples " + fmt_res(smallest));
  return out;
}

Outcome c04_eq1() {
  Outcome out;
  auto models = kenmotsu_models();
  models.push_back(build_control(2, 2));
  for (const auto& model : models) require_below(out, model, run(model, {"eq1"}), 1e-8);
  return out;
}

// Koszul results for the frame X_i = e^{-sum z} d/dx_i, Y_i = e^{-sum z} d/dy_i,
// xi_a = d/dz_a of example22, compared with the expected values.
Outcome c05_connection_fixtures() {
  Outcome out;
  const int n = 2;
  const int s = 3;
  const int d = 2 * n + s;
  const auto model = build_example_2_2(n, s);
  std::vector<int> zs;
  for (int a = 0; a < s; ++a) zs.push_back(2 * n + a);
  const Field scale = exp(-coordinate_sum(zs));
  const auto coordinate_field = [&](int a, const Field& f) {
    std::vector<Field> c(static_cast<std::size_t>(d), Field(0.0));
    c[static_cast<std::size_t>(a)] = f;
    return TensorField::vector(c);
  };
  double xx = 0.0, xxi = 0.0, xixj = 0.0, xiyj = 0.0;
  for (const auto& p : sample_points(d, kPoints, kSeed)) {
    const LocalGeometry geo(model, p, Depth::connection);
    Vec xi_sum = Vec::Zero(d);
    for (int a = 0; a < s; ++a) xi_sum(2 * n + a) = 1.0;
    for (int i = 0; i < n; ++i) {
      const TensorField xf = coordinate_field(i, scale);
      const Vec xv = to_vec(xf.evaluate(p));
      xx = std::max(xx, geo.norm(geo.covariant_derivative(xv, xf.evaluate_jet(p)) - xi_sum));
      for (int a = 0; a < s; ++a) {
        const TensorField xif = coordinate_field(2 * n + a, Field(1.0));
        xxi = std::max(xxi, geo.norm(geo.covariant_derivative(xv, xif.evaluate_jet(p)) - xv));
      }
      for (int j = 0; j < n; ++j) {
        if (j != i) xixj = std::max(xixj, geo.norm(geo.covariant_derivative(xv, coordinate_field(j, scale).evaluate_jet(p))));
        xiyj = std::max(xiyj, geo.norm(geo.covariant_derivative(xv, coordinate_field(n + j, scale).evaluate_jet(p))));
      }
    }
  }
  out.require(xx < 1e-9, "nabla_{X_i} X_i = sum xi_a: residual " + fmt_res(xx));
  out.require(xxi < 1e-9, "nabla_{X_i} xi_a = X_i: residual " + fmt_res(xxi));
  out.require(xixj < 1e-9, "nabla_{X_i} X_j = 0: residual " + fmt_res(xixj));
  out.require(xiyj < 1e-9, "nabla_{X_i} Y_j = 0: residual " + fmt_res(xiyj));
  out.note(fmt::format("residuals: X_iX_i {} X_ixi {} X_iX_j {} X_iY_j {}", fmt_res(xx), fmt_res(xxi), fmt_res(xixj),
                       fmt_res(xiyj)));
  return out;
}

Outcome c06_first_order() {
  Outcome out;
  for (const auto& model : kenmotsu_models()) require_below(out, model, run(model, {"eq10", "eq11", "eq12", "lem21"}), 1e-9);
  return out;
}

Outcome c07_curvature() {
  Outcome out;
  for (const auto& model : kenmotsu_models())
    require_below(out, model, run(model, {"eq13", "eq14", "eq15", "eq16", "eq17", "eq18corrected"}), 1e-8);
  for (const auto& model : {warped(2, 3, 2.0), warped(1, 2, 0.5), build_example_2_2(2, 3), build_example_2_3()}) {
    out.require(model.warped_product, model.name + " is not flagged as a warped product");
    require_below(out, model, run(model, {"eq19"}), 1e-8);
  }
  // S(xi_k, xi_i) = -2n at every pair, read out directly
  const auto model = build_example_2_2(2, 3);
  double worst = 0.0;
  for (const auto& p : sample_points(model.dim(), 5, kSeed)) {
    const StructurePoint sp(model, p, Depth::curvature);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(sp.geometry().ricci(sp.xi(k), sp.xi(i)) + 4.0));
  }
  out.require(worst < 1e-8, "S(xi_k, xi_i) + 4 = " + fmt_res(worst));
  return out;
}

Outcome c08_phi_sectional() {
  Outcome out;
  for (int s = 1; s <= 3; ++s)
    for (const auto& model : {build_example_2_2(2, s), warped(2, s, 2.0)}) {
      const auto c = run(model, {"phi_sectional"});
      out.require(c[0].samples >= 20 * kPoints, "fewer than 20 phi-planes per point");
      require_below(out, model, c, 1e-8);
    }
  return out;
}

Outcome c09_s1() {
  Outcome out;
  const std::vector<std::string> ids{"nabla_r", "semi_rr", "semi_rs", "einstein", "projective_flat",
                                     "thm32",   "thm33a",  "thm33b",  "eta_parallel"};
  for (const auto& model : {build_example_2_2(2, 1), build_example_2_2(1, 1), warped(2, 1, 2.0), warped(3, 1, 0.7)}) {
    const auto checks = run(model, ids);
    for (const auto& c : checks)
      out.require(c.status == CheckStatus::assertion, model.name + " " + c.id + " is not asserted at s = 1");
    require_below(out, model, checks, 1e-8);
  }
  return out;
}

Outcome c10_diagnostics() {
  Outcome out;
  std::vector<RunConfig> configs;
  for (const auto& [model, n, s] : std::vector<std::tuple<std::string, int, int>>{
           {"example22", 2, 3}, {"example22", 1, 2}, {"example22", 1, 1}, {"example23", 2, 3}, {"warped", 2, 3},
           {"warped", 2, 1}, {"control", 1, 1}, {"control", 2, 2}}) {
    RunConfig c;
    c.model = model;
    c.n = n;
    c.s = s;
    c.k = 2.0;
    c.points = 10;
    configs.push_back(c);
  }
  for (const auto& cfg : configs) {
    const auto report = run_verify(cfg);
    std::map<std::string, const IdentityCheck*> by_id;
    for (const auto& c : report.checks) by_id[c.id] = &c;
    std::vector<std::string> want{"eq18printed", "thm43", "cor42"};
    if (cfg.s >= 2) want.insert(want.end(), {"thm32", "thm33a", "thm33b", "semi_rs", "semi_rp"});
    for (const auto& id : want) {
      const auto it = by_id.find(id);
      const std::string tag = fmt::format("{} n={} s={} {}", cfg.model, cfg.n, cfg.s, id);
      if (it == by_id.end()) {
        out.require(false, tag + " missing");
        continue;
      }
      const IdentityCheck& c = *it->second;
      out.require(c.status == CheckStatus::diagnostic && c.result == CheckResult::diagnostic, tag + " not a diagnostic");
      out.require(std::isfinite(c.residual), tag + " residual not finite");
      out.require(!c.tolerance.has_value(), tag + " carries a tolerance");
    }
  }
  out.note(fmt::format("{} reports inspected", configs.size()));
  return out;
}

Outcome c11_oracle() {
  Outcome out;
  for (const auto& model : {build_example_2_2(2, 3), build_example_2_2(1, 1), build_example_2_3(), warped(2, 3, 2.0),
                            build_control(2, 3)}) {
    double worst = 0.0;
    for (const auto& p : sample_points(model.dim(), 20, kSeed)) {
      const Tensor gamma = christoffel(model, p);
      const auto fd = oracle::christoffel(model, p);
      for (int a = 0; a < model.dim(); ++a)
        for (int b = 0; b < model.dim(); ++b)
          for (int c = 0; c < model.dim(); ++c) {
            const double want = fd[static_cast<std::size_t>(a)](b, c);
            worst = std::max(worst, std::abs(gamma(a, b, c) - want) / std::max(1.0, std::abs(want)));
          }
    }
    out.require(worst < 1e-6, model.name + " christoffel vs finite differences " + fmt_res(worst));
    out.note(fmt::format("{} n={} s={}: {}", model.name, model.n, model.s, fmt_res(worst)));
  }
  return out;
}

int cli_exit(const std::string& args) {
#ifdef GKVERIFY_PATH
  const std::string cmd = std::string(GKVERIFY_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
  (void)args;
  return -1;
#endif
}

Outcome c12_determinism() {
  Outcome out;
  for (const auto& [model, n, s] :
       std::vector<std::tuple<std::string, int, int>>{{"example22", 2, 3}, {"example23", 2, 3}, {"warped", 2, 2}}) {
    RunConfig c;
    c.model = model;
    c.n = n;
    c.s = s;
    c.points = 20;
    c.threads = 1;
    const auto a = checks_to_json(run_verify(c).checks).dump();
    c.threads = 0;
    const auto b = checks_to_json(run_verify(c).checks).dump();
    out.require(a == b, model + " checks differ between runs");
  }
  const int e0 = cli_exit("verify --model example22 --n 2 --s 3 --points 50 --seed 42");
  const int e1 = cli_exit("verify --model control --n 1 --s 1");
  const int e2 = cli_exit("verify --model nosuch");
  out.require(e0 == 0, fmt::format("example22 exit {}", e0));
  out.require(e1 == 1, fmt::format("control exit {}", e1));
  out.require(e2 == 2, fmt::format("nosuch exit {}", e2));
  out.note(fmt::format("exit codes {} {} {}", e0, e1, e2));
  return out;
}

struct Criterion {
  int number;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  // the oracle gate comes first
  static const std::vector<Criterion> all{
      {11, "finite-difference oracle for Christoffel symbols", c11_oracle},
      {1, "structure axioms", c01_axioms},
      {2, "classification: closedness, dPhi, normality; control separated", c02_classification},
      {3, "Kenmotsu condition in both directions", c03_kenmotsu_condition},
      {4, "nabla phi master formula on all metric f-manifolds", c04_eq1},
      {5, "frame connection of the example22 model", c05_connection_fixtures},
      {6, "first-order identities", c06_first_order},
      {7, "curvature and Ricci identities", c07_curvature},
      {8, "phi-sectional curvature equals -s", c08_phi_sectional},
      {9, "s = 1 specialization", c09_s1},
      {10, "diagnostics completeness", c10_diagnostics},
      {12, "determinism and exit codes", c12_determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--verbose" || arg == "-v") {
      verbose = true;
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N] [--verbose]\n");
      return 2;
    }
  }
  bool all_pass = true;
  bool ran = false;
  for (const auto& c : criteria()) {
    if (only != 0 && c.number != only) continue;
    ran = true;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail.push_back(std::string("exception: ") + e.what());
    }
    all_pass = all_pass && o.pass;
    fmt::print("criterion {:>2} {} {}\n", c.number, o.pass ? "PASS" : "FAIL", c.title);
    for (const auto& line : o.detail)
      if (verbose || only != 0 || line.rfind("FAILED", 0) == 0) fmt::print("    {}\n", line);
  }
  if (!ran) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all_pass ? 0 : 1;
}
