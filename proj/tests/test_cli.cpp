// Copyright 2026 The meritscan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "meritscan/classify.hpp"
#include "meritscan/cli.hpp"
#include "meritscan/ingest.hpp"

using namespace meritscan;
namespace fs = std::filesystem;

namespace {

const fs::path kData = fs::path(MERITSCAN_DATA_DIR);

struct CliOutcome {
  int code = 0;
  std::string out;
  std::string err;
};

// Runs the CLI in-process with both streams captured, so test output stays
// readable and error text can be asserted on.
CliOutcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "meritscan");
  std::ostringstream out, err;
  auto* old_out = std::cout.rdbuf(out.rdbuf());
  auto* old_err = std::cerr.rdbuf(err.rdbuf());
  CliOutcome result;
  try {
    result.code = cli::run(args);
  } catch (...) {
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    throw;
  }
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

fs::path fresh_workspace(const std::string& name) {
  const auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// The pipeline up to a given stage, shared by several cases.
void run_ingest(const fs::path& dir) {
  const auto r = run_cli({"ingest", "--input", (kData / "complaints_mini.csv").string(),
                          "--cpi", (kData / "cpi_annual.csv").string(), "--out", dir.string()});
  REQUIRE(r.code == 0);
}

void run_clean(const fs::path& dir) {
  const auto r = run_cli({"clean", "--stopwords", (kData / "stopwords.txt").string(),
                          "--frequent", (kData / "frequent_words.txt").string(), "--out",
                          dir.string()});
  REQUIRE(r.code == 0);
}

void run_featurize(const fs::path& dir) {
  const auto r = run_cli({"featurize", "--lexicon", (kData / "vader_lexicon.txt").string(),
                          "--featurization", "both", "--out", dir.string()});
  REQUIRE(r.code == 0);
}

void run_train(const fs::path& dir, const std::string& repeats = "3") {
  const auto r = run_cli({"train", "--lexicon", (kData / "vader_lexicon.txt").string(),
                          "--featurization", "tfidf", "--model", "lr", "--repeats", repeats,
                          "--seed", "7", "--out", dir.string()});
  REQUIRE(r.code == 0);
}

void run_indices(const fs::path& dir) {
  const auto r = run_cli({"indices", "--out", dir.string()});
  REQUIRE(r.code == 0);
}

}  // namespace

TEST_CASE("stages refuse to run before their inputs exist") {
  const auto dir = fresh_workspace("meritscan_cli_order");

  const auto clean = run_cli({"clean", "--stopwords", (kData / "stopwords.txt").string(),
                              "--out", dir.string()});
  CHECK(clean.code == 1);
  CHECK(clean.err.find("missing artifact records.csv") != std::string::npos);
  CHECK(clean.err.find("run 'meritscan ingest' first") != std::string::npos);

  const auto report = run_cli({"report", "--out", dir.string()});
  CHECK(report.code == 1);
  CHECK(report.err.find("missing artifact metrics.csv") != std::string::npos);
  CHECK(report.err.find("run 'meritscan train' first") != std::string::npos);
}

TEST_CASE("the pipeline runs stage by stage on the bundled corpus") {
  const auto dir = fresh_workspace("meritscan_cli_pipeline");

  run_ingest(dir);
  REQUIRE(fs::exists(dir / "records.csv"));
  const auto records = ingest::read_records_csv(dir / "records.csv");
  CHECK(records.size() == 50);

  run_clean(dir);
  REQUIRE(fs::exists(dir / "cleaned.tsv"));

  run_featurize(dir);
  for (const char* name : {"matrix_tfidf.csv", "vocab_tfidf.txt", "matrix_tfidf-vader.csv",
                           "vocab_tfidf-vader.txt", "quantities.csv"}) {
    CHECK(fs::exists(dir / name));
  }

  run_train(dir);
  REQUIRE(fs::exists(dir / "metrics.csv"));
  REQUIRE(fs::exists(dir / "predicted_merit.csv"));
  const auto metrics = classify::read_metrics_csv(dir / "metrics.csv");
  REQUIRE(metrics.size() == 3);
  for (const auto& row : metrics) {
    CHECK(row.model == "lr");
    CHECK(row.featurization == "tfidf");
    CHECK(row.n_test == 20);  // round(0.4 * 50)
  }

  run_indices(dir);
  REQUIRE(fs::exists(dir / "indices.csv"));
  REQUIRE(fs::exists(dir / "growth.csv"));

  const auto report = run_cli({"report", "--out", dir.string()});
  REQUIRE(report.code == 0);
  for (const char* name :
       {"table2.csv", "reference_baselines.csv", "cobb_fit.csv", "cobb_tfidf.svg",
        "diagnostics_tfidf.svg", "i_index_lr_tfidf.svg", "s_n_lr_tfidf.svg",
        "b_index_lr_tfidf.svg"}) {
    CHECK(fs::exists(dir / name));
  }

  // Plain reports carry no reference columns; --real-data adds them.
  CHECK(slurp(dir / "table2.csv").find("accuracy reference") == std::string::npos);
  const auto real = run_cli({"report", "--real-data", "--out", dir.string()});
  REQUIRE(real.code == 0);
  const auto table = slurp(dir / "table2.csv");
  CHECK(table.find("accuracy reference") != std::string::npos);
  CHECK(table.find("lr,tfidf,") != std::string::npos);
}

TEST_CASE("training twice with one seed produces identical artifacts") {
  const auto a = fresh_workspace("meritscan_cli_det_a");
  const auto b = fresh_workspace("meritscan_cli_det_b");
  for (const auto& dir : {a, b}) {
    run_ingest(dir);
    run_clean(dir);
    run_featurize(dir);
    run_train(dir, "2");
  }
  CHECK(slurp(a / "metrics.csv") == slurp(b / "metrics.csv"));
  CHECK(slurp(a / "predicted_merit.csv") == slurp(b / "predicted_merit.csv"));
  CHECK(slurp(a / "quantities.csv") == slurp(b / "quantities.csv"));
}

TEST_CASE("config files fill in flags and the command line wins") {
  const auto dir = fresh_workspace("meritscan_cli_config");
  run_ingest(dir);
  run_clean(dir);
  run_featurize(dir);

  const auto config_path = dir / "train.cfg";
  std::ofstream(config_path) << "# training settings\n"
                             << "lexicon = " << (kData / "vader_lexicon.txt").string() << "\n"
                             << "featurization = tfidf\n"
                             << "model = lr\n"
                             << "repeats = 2\n"
                             << "seed = 7\n";

  const auto from_config =
      run_cli({"train", "--config", config_path.string(), "--out", dir.string()});
  REQUIRE(from_config.code == 0);
  CHECK(classify::read_metrics_csv(dir / "metrics.csv").size() == 2);

  // An explicit flag overrides the same key from the file.
  const auto overridden = run_cli({"train", "--config", config_path.string(), "--repeats", "1",
                                   "--out", dir.string()});
  REQUIRE(overridden.code == 0);
  CHECK(classify::read_metrics_csv(dir / "metrics.csv").size() == 1);

  const auto missing = run_cli({"train", "--config", (dir / "absent.cfg").string(), "--out",
                                dir.string()});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("cannot open config file") != std::string::npos);
}

TEST_CASE("parameter validation happens before any work") {
  const auto dir = fresh_workspace("meritscan_cli_validation");

  const auto bad_frac = run_cli({"train", "--lexicon", (kData / "vader_lexicon.txt").string(),
                                 "--test-frac", "1.5", "--out", dir.string()});
  CHECK(bad_frac.code == 1);
  CHECK(bad_frac.err.find("--test-frac must be in (0,1)") != std::string::npos);

  const auto bad_repeats = run_cli({"train", "--lexicon", (kData / "vader_lexicon.txt").string(),
                                    "--repeats", "0", "--out", dir.string()});
  CHECK(bad_repeats.code == 1);
  CHECK(bad_repeats.err.find("--repeats must be at least 1") != std::string::npos);

  const auto bad_feat = run_cli({"featurize", "--lexicon",
                                 (kData / "vader_lexicon.txt").string(), "--featurization",
                                 "bogus", "--out", dir.string()});
  CHECK(bad_feat.code == 1);

  const auto bad_model = run_cli({"train", "--lexicon", (kData / "vader_lexicon.txt").string(),
                                  "--model", "nope", "--out", dir.string()});
  CHECK(bad_model.code == 1);

  // Unknown flags are a usage error, reported by the parser itself.
  const auto unknown = run_cli({"report", "--out", dir.string(), "--no-such-flag"});
  CHECK(unknown.code != 0);
}

TEST_CASE("ingest reports its selection accounting") {
  const auto dir = fresh_workspace("meritscan_cli_ingest_stats");
  const auto r = run_cli({"ingest", "--input", (kData / "complaints_mini.csv").string(),
                          "--cpi", (kData / "cpi_annual.csv").string(), "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("selected 50") != std::string::npos);

  // A company filter that matches nothing still succeeds, with zero kept.
  const auto none = run_cli({"ingest", "--input", (kData / "complaints_mini.csv").string(),
                             "--cpi", (kData / "cpi_annual.csv").string(), "--company",
                             "Nonexistent Bank", "--out", dir.string()});
  REQUIRE(none.code == 0);
  CHECK(none.out.find("selected 0") != std::string::npos);
}
