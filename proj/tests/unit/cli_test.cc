#include "cli/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "sensfeat/csv.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kData = SENSFEAT_DATA_DIR;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sensfeat_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "sensfeat");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return sensfeat::cli::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  std::vector<std::string> toy() const {
    return {"--data", (kData / "toy.csv").string(), "--schema",
            (kData / "schemas" / "toy.json").string()};
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(Cli, EncodeToy) {
  auto args = std::vector<std::string>{"encode"};
  for (auto& a : toy()) args.push_back(a);
  args.insert(args.end(), {"--out", dir_.string()});
  ASSERT_EQ(run(args), sensfeat::cli::kExitOk) << err_.str();
  const auto t = sensfeat::parse_csv(slurp(dir_ / "encoded.csv"));
  EXPECT_EQ(t.header, (std::vector<std::string>{"gender_male", "gender_female", "ncrimes",
                                                "age_<30", "age_30-60", "age_>60", "y"}));
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.rows[0], (std::vector<std::string>{"1", "0", "2", "0", "1", "0", "1"}));
  EXPECT_EQ(t.rows[1], (std::vector<std::string>{"0", "1", "0", "1", "0", "0", "-1"}));
  EXPECT_EQ(t.rows[2], (std::vector<std::string>{"0", "1", "1", "0", "0", "1", "1"}));
  EXPECT_TRUE(fs::exists(dir_ / "run_config.json"));
}

TEST_F(Cli, AuditWritesReportAndConfig) {
  auto args = std::vector<std::string>{"audit"};
  for (auto& a : toy()) args.push_back(a);
  args.insert(args.end(), {"--out", dir_.string(), "--threshold", "0.5", "--threads", "1"});
  ASSERT_EQ(run(args), sensfeat::cli::kExitOk) << err_.str();
  const json report = json::parse(slurp(dir_ / "report.json"));
  EXPECT_EQ(report["threshold"], 0.5);
  EXPECT_EQ(report["config"]["threshold"], 0.5);
  const json rc = json::parse(slurp(dir_ / "run_config.json"));
  EXPECT_EQ(rc["command"], "audit");
  EXPECT_EQ(rc["seed"], 42);
  EXPECT_EQ(rc["detector"]["kernel"], "rbf");
  EXPECT_NE(out_.str().find("threshold t"), std::string::npos);
}

TEST_F(Cli, MissingSchemaLeavesNoOutput) {
  const int code = run({"audit", "--data", (kData / "toy.csv").string(), "--schema",
                        (dir_ / "absent.json").string(), "--out", dir_.string()});
  EXPECT_NE(code, sensfeat::cli::kExitOk);
  EXPECT_EQ(code, sensfeat::cli::kExitConfig);
  EXPECT_FALSE(fs::exists(dir_));
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(Cli, BadOptionValues) {
  auto args = std::vector<std::string>{"audit"};
  for (auto& a : toy()) args.push_back(a);
  args.insert(args.end(), {"--out", dir_.string(), "--kernel", "poly"});
  EXPECT_EQ(run(args), sensfeat::cli::kExitConfig);
  args.back() = "rbf";
  args.insert(args.end(), {"--threshold", "lots"});
  EXPECT_EQ(run(args), sensfeat::cli::kExitConfig);
  EXPECT_EQ(run({"frobnicate"}), sensfeat::cli::kExitConfig);
  EXPECT_FALSE(fs::exists(dir_));
}

TEST_F(Cli, TooManyFoldsForToyData) {
  auto args = std::vector<std::string>{"validate"};
  for (auto& a : toy()) args.push_back(a);
  args.insert(args.end(), {"--out", dir_.string(), "--folds", "2", "--trees", "5"});
  EXPECT_EQ(run(args), sensfeat::cli::kExitData);
  EXPECT_NE(err_.str().find("at most 1 fold"), std::string::npos) << err_.str();
  EXPECT_FALSE(fs::exists(dir_));
}

TEST_F(Cli, SynthValidateCompare) {
  const fs::path data = dir_ / "synth";
  ASSERT_EQ(run({"synth", "--n", "300", "--noise", "2", "--planted", "0,0.2,0.5", "--seed", "5",
                 "--out", data.string()}),
            sensfeat::cli::kExitOk)
      << err_.str();
  const json truth = json::parse(slurp(data / "truth.json"));
  EXPECT_EQ(truth["planted"].size(), 3u);

  const std::vector<std::string> in = {"--data", (data / "data.csv").string(), "--schema",
                                       (data / "schema.json").string(), "--threads", "1"};
  auto rbf = std::vector<std::string>{"validate"};
  rbf.insert(rbf.end(), in.begin(), in.end());
  rbf.insert(rbf.end(), {"--out", (dir_ / "rbf").string(), "--folds", "3", "--trees", "10"});
  ASSERT_EQ(run(rbf), sensfeat::cli::kExitOk) << err_.str();
  const auto scatter = sensfeat::parse_csv(slurp(dir_ / "rbf" / "scatter.csv"));
  EXPECT_EQ(scatter.header.front(), "subfeature");
  EXPECT_EQ(scatter.rows.size(), 3u);  // one indicator per binary planted column
  const json v = json::parse(slurp(dir_ / "rbf" / "validation.json"));
  EXPECT_EQ(v["fold_accuracy"].size(), 3u);
  EXPECT_EQ(v["config"]["forest"]["trees"], 10);

  auto lin = std::vector<std::string>{"audit"};
  lin.insert(lin.end(), in.begin(), in.end());
  lin.insert(lin.end(), {"--out", (dir_ / "lin").string(), "--kernel", "linear"});
  ASSERT_EQ(run(lin), sensfeat::cli::kExitOk) << err_.str();

  ASSERT_EQ(run({"compare", (dir_ / "rbf" / "report.json").string(),
                 (dir_ / "lin" / "report.json").string(), "--out", (dir_ / "cmp").string()}),
            sensfeat::cli::kExitOk)
      << err_.str();
  const json c = json::parse(slurp(dir_ / "cmp" / "comparison.json"));
  EXPECT_TRUE(c.contains("spearman"));
  EXPECT_TRUE(c.contains("consistent"));
}

TEST_F(Cli, UnreachableGroupFraction) {
  EXPECT_EQ(run({"synth", "--n", "100", "--planted", "0.1", "--group-fraction", "0.95",
                 "--out", dir_.string()}),
            sensfeat::cli::kExitConfig);
  EXPECT_FALSE(fs::exists(dir_));
}

}  // namespace
