#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "bbckit/error.hpp"
#include "bbckit/experiment.hpp"

using namespace bbckit;

namespace {

const std::filesystem::path kData = BBCKIT_DATA_DIR;

const char* kConfig = R"(# two systems, two properties each
sut=crash:crash.dot
sut=lock:lock.dot
spec=crash:no-crash:no_crash.dot
spec=crash:crash-bug:crash_bug.dot:bug
spec=lock:no-open:lock_no-open.dot
spec=lock:no-leak:lock_no-leak.dot:plain
modes=bbc,learn-then-check
seeds=3
seed_base=10
)";

std::string rows_text(const std::vector<ExperimentRow>& rows, bool wall) {
  std::ostringstream out;
  write_rows_csv(out, rows, wall);
  return out.str();
}

}  // namespace

TEST(ExperimentConfig, ParsesAllKeys) {
  ExperimentConfig cfg = parse_experiment_config(
      "sut = a : x/a.dot\n"
      "spec=a:p:p.dot:split-io\n"
      "modes=mbt,bbc-nomon\n"
      "seeds=4\nseed_base=2\nstep_budget=1000\nmax_tests=50\n"
      "expected_infix_length=3.5\nmonitor_testing=on\nmbt_factor=2\n"
      "mbt_test_length=9\nout=res\n",
      "/base");
  ASSERT_EQ(cfg.suts.size(), 1u);
  EXPECT_EQ(cfg.suts[0].id, "a");
  EXPECT_EQ(cfg.suts[0].path, std::filesystem::path("/base/x/a.dot"));
  EXPECT_EQ(cfg.specs[0].format, SpecFormat::split_io);
  EXPECT_EQ(cfg.modes, (std::vector<RunMode>{RunMode::mbt, RunMode::bbc_nomon}));
  EXPECT_EQ(cfg.seeds, 4u);
  EXPECT_EQ(cfg.seed_base, 2u);
  EXPECT_EQ(cfg.step_budget, std::optional<std::uint64_t>(1000));
  EXPECT_EQ(cfg.max_tests, std::optional<std::uint64_t>(50));
  EXPECT_DOUBLE_EQ(cfg.expected_infix_length, 3.5);
  EXPECT_TRUE(cfg.monitor_testing);
  EXPECT_EQ(cfg.mbt_factor, 2u);
  EXPECT_EQ(cfg.mbt_test_length, std::optional<std::size_t>(9));
  EXPECT_EQ(cfg.out_dir, std::filesystem::path("/base/res"));
}

TEST(ExperimentConfig, ErrorsNameTheLine) {
  auto message = [](const char* text) -> std::string {
    try {
      parse_experiment_config(text);
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "no error";
  };
  EXPECT_NE(message("sut=a:a.dot\nbogus\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("sut=a:a.dot\ncolour=red\n").find("unknown key"), std::string::npos);
  EXPECT_NE(message("sut=a:a.dot\nmodes=bbc,fast\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("sut=a:a.dot\nseeds=-1\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("sut=a:a.dot\nspec=b:p:p.dot\n").find("unknown sut"), std::string::npos);
  EXPECT_NE(message("sut=a:a.dot\nspec=a:p:p.dot:weird\n").find("format"), std::string::npos);
  EXPECT_NE(message("seeds=2\n").find("no sut"), std::string::npos);
  EXPECT_NE(message("sut=a:a.dot\nexpected_infix_length=0\n").find("positive"), std::string::npos);
  EXPECT_THROW(parse_run_mode("slow"), ConfigError);
  for (RunMode m : {RunMode::bbc, RunMode::bbc_nomon, RunMode::learn_then_check, RunMode::mbt}) {
    EXPECT_EQ(parse_run_mode(to_string(m)), m);
  }
}

class ExperimentRun : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    cfg_ = parse_experiment_config(kConfig, kData);
    rows_ = run_experiment(cfg_, 1);
  }
  static ExperimentConfig cfg_;
  static std::vector<ExperimentRow> rows_;
};
ExperimentConfig ExperimentRun::cfg_;
std::vector<ExperimentRow> ExperimentRun::rows_;

TEST_F(ExperimentRun, OneRowPerCell) {
  ASSERT_EQ(rows_.size(), 24u);
  // Config order: sut, property, mode, then seed.
  EXPECT_EQ(rows_[0].sut, "crash");
  EXPECT_EQ(rows_[0].property, "no-crash");
  EXPECT_EQ(rows_[0].mode, RunMode::bbc);
  EXPECT_EQ(rows_[0].seed, 10u);
  EXPECT_EQ(rows_[2].seed, 12u);
  EXPECT_EQ(rows_[3].mode, RunMode::learn_then_check);
  EXPECT_EQ(rows_[6].property, "crash-bug");
  EXPECT_EQ(rows_[12].sut, "lock");
  for (const auto& r : rows_) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_TRUE(r.sut_violates);
    EXPECT_EQ(r.resolved, "bug");
    EXPECT_TRUE(r.bug_step.has_value());
  }
}

TEST_F(ExperimentRun, RerunsAreByteIdenticalAcrossWorkerCounts) {
  const std::string a = rows_text(rows_, false);
  EXPECT_EQ(a, rows_text(run_experiment(cfg_, 1), false));
  EXPECT_EQ(a, rows_text(run_experiment(cfg_, 3), false));
}

TEST_F(ExperimentRun, CsvRoundTripAndSummaryFromRowsAlone) {
  const std::string text = rows_text(rows_, true);
  std::istringstream in(text);
  std::vector<ExperimentRow> back = read_rows_csv(in);
  EXPECT_EQ(rows_text(back, true), text);

  std::ostringstream s1, s2;
  write_summary_csv(s1, summarize(rows_));
  write_summary_csv(s2, summarize(back));
  EXPECT_EQ(s1.str(), s2.str());
  EXPECT_EQ(s1.str().rfind("section,sut,property,mode,metric,value\n", 0), 0u);

  std::map<std::string, double> m;
  for (const auto& e : summarize(rows_)) {
    m[e.section + "/" + e.sut + "/" + e.property + "/" + e.mode + "/" + e.metric] = e.value;
  }
  EXPECT_EQ(m["cell/lock/no-leak/bbc/runs"], 3);
  EXPECT_EQ(m["cell/lock/no-leak/bbc/bug"], 3);
  EXPECT_EQ(m["baseline/lock/no-leak//pairs"], 3);
  EXPECT_EQ(m["baseline/lock/no-leak//bbc_found"], 3);
  EXPECT_LT(m["baseline/lock/no-leak//median_ratio"], 1.0);
  EXPECT_EQ(m["fct/crash//bbc/f"], 2);
}

TEST(ExperimentRows, MissingFilesBecomeErrorRows) {
  ExperimentConfig cfg = parse_experiment_config(
      "sut=crash:crash.dot\nsut=gone:missing.dot\n"
      "spec=crash:p:missing_spec.dot\nspec=gone:q:no_crash.dot\nmodes=bbc\n",
      kData);
  auto rows = run_experiment(cfg, 1);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.resolved, "error");
    EXPECT_NE(r.error.find("missing"), std::string::npos);
  }
}

TEST(ExperimentRows, RejectsMalformedCsv) {
  std::istringstream empty("");
  EXPECT_THROW(read_rows_csv(empty), ConfigError);
  std::istringstream bad_header("a,b\n");
  EXPECT_THROW(read_rows_csv(bad_header), ConfigError);
}
