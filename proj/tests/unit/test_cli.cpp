#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun gkverify(const std::string& args) {
  const std::string cmd = std::string(GKVERIFY_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json check(const nlohmann::json& doc, const std::string& id) {
  for (const auto& c : doc["checks"])
    if (c["id"] == id) return c;
  return {};
}

TEST(Cli, Example22Passes) {
  const CliRun r = gkverify("verify --model example22 --n 2 --s 3 --points 50 --seed 42");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("0 failed"), std::string::npos);
}

TEST(Cli, ControlFailsKenmotsuChecks) {
  const CliRun r = gkverify("verify --model control --n 1 --s 1 --format json");
  EXPECT_EQ(r.code, 1);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(check(doc, "gak_dphi")["result"], "fail");
  EXPECT_EQ(check(doc, "eq9")["result"], "fail");
  for (const char* id : {"axiom_phi2", "axiom_eta_xi", "axiom_metric", "axiom_eta_g", "axiom_phi_skew",
                         "axiom_phi_xi", "axiom_eta_phi"})
    EXPECT_EQ(check(doc, id)["result"], "pass") << id;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(gkverify("verify --model nosuch").code, 2);
  EXPECT_EQ(gkverify("verify").code, 2);
  EXPECT_EQ(gkverify("").code, 2);
  EXPECT_EQ(gkverify("verify --model example22 --points 0").code, 2);
  EXPECT_EQ(gkverify("verify --model example22 --tol eq9").code, 2);
  EXPECT_EQ(gkverify("verify --model example22 --tol eq9=abc").code, 2);
  EXPECT_EQ(gkverify("verify --model example22 --tol nosuch=1e-3").code, 2);
  EXPECT_EQ(gkverify("verify --model example22 --checks eq9,nosuch").code, 2);
  EXPECT_EQ(gkverify("verify --model example22 --format yaml").code, 2);
  EXPECT_EQ(gkverify("verify --model example23 --n 3").code, 2);
  EXPECT_EQ(gkverify("verify --model example22 --n x").code, 2);
}

TEST(Cli, FiltersAndOverrides) {
  const CliRun r = gkverify("verify --model example22 --n 1 --s 1 --points 4 --checks eq1,eq9 --tol eq1=1e-30 "
                         "--tol eq9=1e-3 --format json");
  EXPECT_EQ(r.code, 1);
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["checks"].size(), 2u);
  EXPECT_EQ(check(doc, "eq1")["result"], "fail");
  EXPECT_EQ(check(doc, "eq9")["tolerance"], 1e-3);
  EXPECT_EQ(doc["config"]["tol"]["eq1"], 1e-30);
}

TEST(Cli, ChecksOutputIsDeterministic) {
  const std::string args = "verify --model example23 --points 5 --seed 7 --format json";
  const auto a = nlohmann::json::parse(gkverify(args).out);
  const auto b = nlohmann::json::parse(gkverify(args + " --threads 1").out);
  EXPECT_EQ(a["checks"].dump(), b["checks"].dump());
  const auto c = nlohmann::json::parse(gkverify("verify --model example23 --points 5 --seed 8 --format json").out);
  EXPECT_NE(a["checks"].dump(), c["checks"].dump());
}

TEST(Cli, ListsChecks) {
  const CliRun r = gkverify("checks");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("eq18corrected"), std::string::npos);
}

}  // namespace
