#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "test_support.hpp"
#include "tweetpol/cli.hpp"
#include "tweetpol/synthetic.hpp"

namespace tweetpol {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tweetpol");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

class EnvGuard {
 public:
  explicit EnvGuard(const char* value) { ::setenv(cli::kOutputDirEnv, value, 1); }
  EnvGuard() { ::unsetenv(cli::kOutputDirEnv); }
  ~EnvGuard() { ::unsetenv(cli::kOutputDirEnv); }
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    SyntheticCorpusSpec spec;
    spec.per_class = 15;
    std::ostringstream corpus;
    write_corpus(corpus, synthetic_corpus(spec), false);
    testing::write_text(dir.path() / "corpus.tsv", corpus.str());
  }

  fs::path write_config(const std::string& experiments, const std::string& extra = "") {
    const fs::path path = dir.path() / "run.json";
    testing::write_text(path, "{\"corpus_path\": \"corpus.tsv\", \"lexicon_path\": \"" +
                                  testing::source_path("tests/fixtures/mini_lexicon.tsv").string() +
                                  "\", \"seed\": 5, \"parallelism\": 1" + extra +
                                  ", \"experiments\": [" + experiments + "]}");
    return path;
  }

  testing::TempDir dir;
  EnvGuard env;
};

constexpr const char* kNb = R"({"representation": "ngram", "n": 3, "classifier": "naive_bayes", "folds": 3})";
constexpr const char* kBad = R"({"representation": "ngram", "n": 7, "classifier": "naive_bayes", "folds": 3})";
constexpr const char* kBow = R"({"representation": "bow", "classifier": {"kind": "c45", "min_leaf": 3}, "folds": 3})";

TEST_F(CliTest, NormalizeThreeLines) {
  testing::write_text(dir.path() / "in.tsv",
                      "1\tpositive\tHello @bob #GREAT http://x.co\n"
                      "2\tneutral\tjust *a* day\n"
                      "3\tnegative\tUgh\n");
  const auto r = cli({"normalize", (dir.path() / "in.tsv").string(), (dir.path() / "out.tsv").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(testing::read_text(dir.path() / "out.tsv"),
            "1\tpositive\thello REF great URL\n2\tneutral\tjust a day\n3\tnegative\tugh\n");
}

TEST_F(CliTest, NormalizeUnknownLabel) {
  testing::write_text(dir.path() / "in.tsv", "1\tpositive\tfine\n2\tangry\tno\n");
  const auto r = cli({"normalize", (dir.path() / "in.tsv").string(), (dir.path() / "out.tsv").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir.path() / "out.tsv"));
}

TEST_F(CliTest, NormalizeEmptyFile) {
  testing::write_text(dir.path() / "in.tsv", "");
  const auto r = cli({"normalize", (dir.path() / "in.tsv").string(), (dir.path() / "out.tsv").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(testing::read_text(dir.path() / "out.tsv"), "");
}

TEST_F(CliTest, NormalizeCustomStripSet) {
  testing::write_text(dir.path() / "in.tsv", "1\tpositive\ta-b #c\n");
  const auto r = cli({"normalize", "--strip-set", "-", (dir.path() / "in.tsv").string(),
                      (dir.path() / "out.tsv").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(testing::read_text(dir.path() / "out.tsv"), "1\tpositive\tab #c\n");
}

TEST_F(CliTest, RunSingleExperiment) {
  const auto config = write_config(kNb);
  const auto out = dir.path() / "out";
  const auto r = cli({"run", config.string(), "--output-dir", out.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(testing::read_text(out / "results.json"));
  ASSERT_EQ(doc["results"].size(), 1u);
  EXPECT_EQ(doc["results"][0]["status"], "ok");
  EXPECT_EQ(doc["results"][0]["config"]["seed"], 5);
  EXPECT_TRUE(fs::exists(out / "results.csv"));
  EXPECT_NE(r.err.find("[1/1]"), std::string::npos);
}

TEST_F(CliTest, RunPartialFailure) {
  const auto config = write_config(std::string(kNb) + "," + kBad);
  const auto out = dir.path() / "out";
  const auto r = cli({"run", "-q", config.string(), "--output-dir", out.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.err.empty()) << r.err;
  const auto doc = nlohmann::json::parse(testing::read_text(out / "results.json"));
  ASSERT_EQ(doc["results"].size(), 2u);
  EXPECT_EQ(doc["results"][0]["status"], "ok");
  EXPECT_EQ(doc["results"][1]["status"], "error");
}

TEST_F(CliTest, RunMalformedJsonWritesNothing) {
  testing::write_text(dir.path() / "run.json", "{\"corpus_path\": ");
  const auto out = dir.path() / "out";
  const auto r = cli({"run", (dir.path() / "run.json").string(), "--output-dir", out.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliTest, RunSchemaViolations) {
  const auto out = dir.path() / "out";
  for (const std::string& exp :
       {std::string(R"({"representation": "tfidf", "classifier": "svm"})"),
        std::string(R"({"representation": "ngram", "n": "four", "classifier": "svm"})"),
        std::string(R"({"representation": "ngram", "classifier": "svm", "ensemble": "majority_vote"})"),
        std::string(R"({"representation": "ngram", "classifier": "svm", "colour": 1})"),
        std::string(R"({"representation": "graph", "ensemble": "centroid", "metric": "hamming"})"),
        std::string(R"({"representation": "ngram", "classifier": {"kind": "svm", "epochs": -1}})")}) {
    const auto r = cli({"run", write_config(exp).string(), "--output-dir", out.string()});
    EXPECT_EQ(r.code, 2) << exp;
    EXPECT_NE(r.err.find("schema"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(out));
  }
  const auto r = cli({"run", write_config(kNb, ", \"bogus\": true").string(), "--output-dir", out.string()});
  EXPECT_EQ(r.code, 2);
  testing::write_text(dir.path() / "empty.json", R"({"corpus_path": "corpus.tsv", "experiments": []})");
  EXPECT_EQ(cli({"run", (dir.path() / "empty.json").string()}).code, 2);
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliTest, RunMissingCorpus) {
  testing::write_text(dir.path() / "run.json",
                      std::string(R"({"corpus_path": "nope.tsv", "experiments": [)") + kNb + "]}");
  const auto out = dir.path() / "out";
  EXPECT_EQ(cli({"run", (dir.path() / "run.json").string(), "--output-dir", out.string()}).code, 2);
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliTest, OutputDirPrecedence) {
  const auto from_config = dir.path() / "from-config";
  const auto from_env = dir.path() / "from-env";
  const auto config = write_config(kNb, ", \"output_dir\": \"from-config\"");
  {
    EnvGuard guard(from_env.c_str());
    EXPECT_EQ(cli({"run", "-q", config.string()}).code, 0);
  }
  EXPECT_TRUE(fs::exists(from_env / "results.json"));
  EXPECT_FALSE(fs::exists(from_config));
  EXPECT_EQ(cli({"run", "-q", config.string()}).code, 0);
  EXPECT_TRUE(fs::exists(from_config / "results.json"));
}

TEST_F(CliTest, RunIsByteDeterministic) {
  const auto config = write_config(std::string(kNb) + "," + kBow);
  const auto a = dir.path() / "a";
  const auto b = dir.path() / "b";
  ASSERT_EQ(cli({"run", "-q", config.string(), "--output-dir", a.string()}).code, 0);
  ASSERT_EQ(cli({"run", "-q", config.string(), "--output-dir", b.string()}).code, 0);
  EXPECT_EQ(testing::read_text(a / "results.json"), testing::read_text(b / "results.json"));
}

TEST_F(CliTest, ReportCsvAndChart) {
  const auto config = write_config(std::string(kNb) + "," + kBow + "," +
                                   R"({"representation": "ngram", "n": 4, "ensemble": "average_opinion", "folds": 3})");
  const auto out = dir.path() / "out";
  ASSERT_EQ(cli({"run", "-q", config.string(), "--output-dir", out.string()}).code, 0);
  const auto r = cli({"report", (out / "results.json").string(), "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(r.out), 4u);
  EXPECT_EQ(r.out.rfind("representation,", 0), 0u);

  const auto chart = cli({"report", (out / "results.json").string(), "--chart", "-o",
                          (dir.path() / "table.md").string()});
  EXPECT_EQ(chart.code, 0) << chart.err;
  EXPECT_NE(testing::read_text(out / "chart.svg").find("<svg"), std::string::npos);
  EXPECT_EQ(line_count(testing::read_text(dir.path() / "table.md")), 5u);
}

TEST_F(CliTest, ReportErrors) {
  EXPECT_EQ(cli({"report", (dir.path() / "missing.json").string()}).code, 2);
  testing::write_text(dir.path() / "bad.json", "[1, 2");
  EXPECT_EQ(cli({"report", (dir.path() / "bad.json").string()}).code, 2);
  testing::write_text(dir.path() / "other.json", R"({"schema": "nope"})");
  EXPECT_EQ(cli({"report", (dir.path() / "other.json").string()}).code, 2);
  const auto config = write_config(kNb);
  ASSERT_EQ(cli({"run", "-q", config.string(), "--output-dir", dir.path().string()}).code, 0);
  EXPECT_EQ(cli({"report", (dir.path() / "results.json").string(), "--format", "html"}).code, 2);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"run"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(CliTest, SynthWritesCorpus) {
  const auto path = dir.path() / "syn.tsv";
  EXPECT_EQ(cli({"synth", path.string(), "--per-class", "4", "--seed", "3"}).code, 0);
  EXPECT_EQ(load_corpus(path).size(), 12u);
}

}  // namespace
}  // namespace tweetpol
