#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rtcsim/rtcsim.h"

namespace fs = std::filesystem;

namespace {

class CapiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rtcsim_capi_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  static std::string read(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int cli(const std::string& args) {
    const std::string cmd = std::string(RTCSIM_CLI_PATH) + " " + args + " >" +
                            (dir_ / "stdout.txt").string() + " 2>" + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

const char* kTiny = R"({
  "workloads": [{"name": "lenet", "network": "networks/lenet.net"}],
  "sweep": {"capacities_gib": [0.015625], "fps": [60], "locality": [1],
            "policies": ["Baseline", "FullRtc"]},
  "simulation": {"windows": 2},
  "output": {"dir": "out"}
})";

// Idle row plus a disabled coverage check: Min-RTC stops refreshing a row
// nobody touches.
const char* kMutant = R"({
  "workloads": [{"name": "scan", "synthetic": {"pattern": "streaming", "footprint_mib": 1},
                 "idle_rows": 4}],
  "sweep": {"capacities_gib": [0.015625], "fps": [60], "locality": [1], "policies": ["MinRtc"]},
  "controller": {"skip_coverage_check": true},
  "simulation": {"windows": 3}
})";

void progress(size_t done, size_t total, void* user) {
  auto* seen = static_cast<size_t*>(user);
  EXPECT_LE(done, total);
  *seen = done;
}

}  // namespace

TEST_F(CapiTest, StatusNames) {
  EXPECT_STREQ(rtcsim_status_name(RTCSIM_OK), "Ok");
  EXPECT_STREQ(rtcsim_status_name(RTCSIM_E_CONFIG_INVALID), "ConfigInvalid");
  EXPECT_STREQ(rtcsim_status_name(RTCSIM_E_AXIS_MISMATCH), "AxisMismatch");
  EXPECT_STREQ(rtcsim_status_name(RTCSIM_E_INTERNAL), "Internal");
  EXPECT_STRNE(rtcsim_version(), "");
}

TEST_F(CapiTest, LoadRunWrite) {
  rtcsim_experiment* exp = nullptr;
  ASSERT_EQ(rtcsim_experiment_load(write("c.json", kTiny).c_str(), &exp), RTCSIM_OK)
      << rtcsim_last_error();
  size_t n = 0;
  ASSERT_EQ(rtcsim_experiment_point_count(exp, &n), RTCSIM_OK);
  EXPECT_EQ(n, 2u);
  EXPECT_EQ(rtcsim_experiment_validate(exp), RTCSIM_OK);
  char buf[512];
  ASSERT_EQ(rtcsim_experiment_output_dir(exp, buf, sizeof buf), RTCSIM_OK);
  EXPECT_EQ(fs::path(buf), dir_ / "out");

  size_t seen = 0;
  rtcsim_results* res = nullptr;
  ASSERT_EQ(rtcsim_experiment_run(exp, 1, progress, &seen, &res), RTCSIM_OK) << rtcsim_last_error();
  EXPECT_EQ(seen, 2u);
  EXPECT_EQ(rtcsim_results_count(res), 2u);
  EXPECT_EQ(rtcsim_results_violations(res), 0u);
  EXPECT_EQ(rtcsim_results_failed(res), 0u);

  rtcsim_point_summary base{}, full{};
  ASSERT_EQ(rtcsim_results_point(res, 0, &base), RTCSIM_OK);
  ASSERT_EQ(rtcsim_results_point(res, 1, &full), RTCSIM_OK);
  EXPECT_STREQ(base.policy, "Baseline");
  EXPECT_STREQ(full.policy, "FullRtc");
  EXPECT_STREQ(full.workload, "lenet");
  EXPECT_LT(full.refresh_pj, base.refresh_pj);
  EXPECT_NEAR(base.total_pj, base.refresh_pj + base.access_pj + base.background_pj + base.counters_pj,
              1e-6 * base.total_pj);
  EXPECT_EQ(rtcsim_results_point(res, 2, &full), RTCSIM_E_OUT_OF_RANGE);

  const auto out = dir_ / "written";
  ASSERT_EQ(rtcsim_results_write(res, out.c_str()), RTCSIM_OK);
  EXPECT_TRUE(fs::exists(out / "report.csv"));
  EXPECT_TRUE(fs::exists(out / "report.json"));
  EXPECT_TRUE(fs::exists(out / "plot.csv"));
  rtcsim_results_free(res);
  rtcsim_experiment_free(exp);
}

TEST_F(CapiTest, ErrorsCarryStatusAndMessage) {
  rtcsim_experiment* exp = nullptr;
  EXPECT_EQ(rtcsim_experiment_load(write("bad.json", R"({"workloads": [{"name": "l", "network": "networks/lenet.net"}],
                                  "sweep": {"fps": [0]}})").c_str(), &exp),
            RTCSIM_E_CONFIG_INVALID);
  EXPECT_EQ(exp, nullptr);
  EXPECT_NE(std::string(rtcsim_last_error()).find("sweep.fps[0]"), std::string::npos);
  EXPECT_EQ(rtcsim_experiment_load((dir_ / "missing.json").c_str(), &exp), RTCSIM_E_IO);
  EXPECT_EQ(rtcsim_experiment_load(nullptr, &exp), RTCSIM_E_INVALID_ARGUMENT);
  EXPECT_EQ(rtcsim_compare("a", "b", "total", nullptr, nullptr, nullptr), RTCSIM_E_IO);
  rtcsim_experiment_free(nullptr);
  rtcsim_results_free(nullptr);
}

TEST_F(CapiTest, CliValidateAndExitCodes) {
  EXPECT_EQ(cli("validate --config " + write("c.json", kTiny).string()), 0);
  EXPECT_NE(read(dir_ / "stdout.txt").find("2 sweep points"), std::string::npos);
  EXPECT_EQ(cli("validate --config " + write("bad.json", R"({"workloads": [{"name": "l", "network": "networks/lenet.net"}], "seed": "x"})").string()), 1);
  EXPECT_NE(read(dir_ / "stderr.txt").find("seed"), std::string::npos);
  EXPECT_EQ(cli("bogus"), 1);
}

TEST_F(CapiTest, CliSimulateAndCompare) {
  const auto cfg = write("c.json", kTiny);
  ASSERT_EQ(cli("simulate --config " + cfg.string() + " --out " + (dir_ / "a").string()), 0)
      << read(dir_ / "stderr.txt");
  ASSERT_EQ(cli("simulate --config " + cfg.string() + " --out " + (dir_ / "b").string() +
                " --jobs 2"),
            0);
  EXPECT_EQ(read(dir_ / "a" / "report.csv"), read(dir_ / "b" / "report.csv"));
  const auto a = (dir_ / "a" / "report.csv").string();
  EXPECT_EQ(cli("compare --a " + a + " --b " + a + " --policy-a FullRtc --policy-b Baseline --out " +
                (dir_ / "cmp.csv").string()),
            0);
  EXPECT_NE(read(dir_ / "cmp.csv").find("lenet"), std::string::npos);

  const auto other = write("other.json", R"({
    "workloads": [{"name": "lenet", "network": "networks/lenet.net"}],
    "sweep": {"capacities_gib": [0.015625], "fps": [30], "locality": [1],
              "policies": ["Baseline", "FullRtc"]},
    "simulation": {"windows": 2}})");
  ASSERT_EQ(cli("simulate --config " + other.string() + " --out " + (dir_ / "c").string()), 0);
  EXPECT_EQ(cli("compare --a " + a + " --b " + (dir_ / "c" / "report.csv").string()), 1);
  EXPECT_NE(read(dir_ / "stderr.txt").find("AxisMismatch"), std::string::npos);
}

TEST_F(CapiTest, CliReportsViolations) {
  EXPECT_EQ(cli("simulate --config " + write("m.json", kMutant).string() + " --out " +
                (dir_ / "m").string()),
            2);
  EXPECT_NE(read(dir_ / "stderr.txt").find("retention violations"), std::string::npos);
}

TEST_F(CapiTest, CliTrace) {
  const auto cfg = write("c.json", kTiny);
  ASSERT_EQ(cli("trace --config " + cfg.string() + " --point 0 --frames 1 --out " +
                (dir_ / "t.txt").string()),
            0);
  EXPECT_EQ(read(dir_ / "t.txt").rfind("# rtcsim-trace v1", 0), 0u);
  ASSERT_EQ(cli("trace --config " + cfg.string() + " --point 1 --commands --frames 1"), 0);
  EXPECT_NE(read(dir_ / "stdout.txt").find("REF_ROW"), std::string::npos);
  EXPECT_EQ(cli("trace --config " + cfg.string() + " --point 9"), 1);
}
