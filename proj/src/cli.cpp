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

#include "meritscan/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "meritscan/baselines.hpp"
#include "meritscan/classify.hpp"
#include "meritscan/config.hpp"
#include "meritscan/corpus.hpp"
#include "meritscan/csv.hpp"
#include "meritscan/featurize.hpp"
#include "meritscan/indices.hpp"
#include "meritscan/ingest.hpp"
#include "meritscan/lexicon.hpp"
#include "meritscan/quantify.hpp"
#include "meritscan/stats.hpp"
#include "meritscan/svg.hpp"
#include "meritscan/text.hpp"

namespace fs = std::filesystem;

namespace meritscan::cli {

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fixed artifact names inside the --out workspace.
constexpr const char* kRecords = "records.csv";
constexpr const char* kCleaned = "cleaned.tsv";
constexpr const char* kQuantities = "quantities.csv";
constexpr const char* kMetrics = "metrics.csv";
constexpr const char* kPredicted = "predicted_merit.csv";
constexpr const char* kIndices = "indices.csv";
constexpr const char* kGrowth = "growth.csv";

fs::path require_artifact(const fs::path& out_dir, const char* name, const char* producer) {
  const fs::path path = out_dir / name;
  if (!fs::exists(path)) {
    throw CliError("missing artifact " + std::string(name) + " in " + out_dir.string() +
                   " (run 'meritscan " + producer + "' first)");
  }
  return path;
}

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = comma == std::string::npos ? text.substr(start)
                                                  : text.substr(start, comma - start);
    if (!trim(piece).empty()) {
      const auto v = parse_double(piece);
      if (!v) throw CliError(std::string(flag) + ": not a number: '" + piece + "'");
      out.push_back(*v);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw CliError(std::string(flag) + ": empty list");
  return out;
}

std::vector<std::string> parse_string_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = comma == std::string::npos ? text.substr(start)
                                                  : text.substr(start, comma - start);
    const auto t = trim(piece);
    if (!t.empty()) out.emplace_back(t);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<featurize::Tag> parse_featurizations(const std::string& value) {
  if (value == "tfidf") return {featurize::Tag::TermImportance};
  if (value == "tfidf-vader") return {featurize::Tag::TermImportanceValence};
  if (value == "both")
    return {featurize::Tag::TermImportance, featurize::Tag::TermImportanceValence};
  throw CliError("--featurization must be tfidf, tfidf-vader or both, got '" + value + "'");
}

std::vector<classify::ModelKind> parse_models(const std::string& value) {
  using classify::ModelKind;
  static const std::map<std::string, ModelKind> kinds = {
      {"lr", ModelKind::LogisticRegression},
      {"svm", ModelKind::SupportVector},
      {"gb", ModelKind::GradientBoosting},
      {"mlp", ModelKind::MultilayerPerceptron},
      {"rf", ModelKind::RandomForest},
  };
  if (value == "all") {
    return {ModelKind::LogisticRegression, ModelKind::SupportVector,
            ModelKind::GradientBoosting, ModelKind::MultilayerPerceptron,
            ModelKind::RandomForest};
  }
  std::vector<classify::ModelKind> out;
  for (const auto& name : parse_string_list(value)) {
    const auto it = kinds.find(name);
    if (it == kinds.end()) {
      throw CliError("--model must be lr, svm, gb, mlp, rf or all, got '" + name + "'");
    }
    out.push_back(it->second);
  }
  if (out.empty()) throw CliError("--model: empty list");
  return out;
}

featurize::Tag tag_from_name(const std::string& name) {
  if (name == "tfidf") return featurize::Tag::TermImportance;
  if (name == "tfidf-vader") return featurize::Tag::TermImportanceValence;
  throw CliError("unknown featurization '" + name + "'");
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
  return buf;
}

std::string fixed2(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

// ---- shared option bundles -------------------------------------------------

struct LexiconOptions {
  std::string lexicon_path;
  double exclaim_intensity = 0.0;
  double question_intensity = 0.0;
  bool has_exclaim = false;
  bool has_question = false;

  lexicon::SentimentLexicon load() const {
    auto lex = lexicon::load_lexicon(lexicon_path);
    if (has_exclaim) lex.set_intensity("!", exclaim_intensity);
    if (has_question) lex.set_intensity("?", question_intensity);
    return lex;
  }
};

void add_lexicon_options(CLI::App* cmd, LexiconOptions& opts) {
  cmd->add_option("--lexicon", opts.lexicon_path, "sentiment lexicon (TSV: word, intensity)")
      ->required();
  cmd->add_option("--exclaim-intensity", opts.exclaim_intensity,
                  "override the lexicon intensity of '!'");
  cmd->add_option("--question-intensity", opts.question_intensity,
                  "override the lexicon intensity of '?'");
}

void finish_lexicon_options(CLI::App* cmd, LexiconOptions& opts) {
  opts.has_exclaim = cmd->count("--exclaim-intensity") > 0;
  opts.has_question = cmd->count("--question-intensity") > 0;
}

struct TrainOptions {
  classify::TrainConfig config;
  bool rf_bootstrap = true;
};

void add_train_options(CLI::App* cmd, TrainOptions& opts) {
  auto& c = opts.config;
  cmd->add_option("--lr-lambda", c.lr.lambda, "LR L2 strength");
  cmd->add_option("--lr-epochs", c.lr.epochs, "LR epochs");
  cmd->add_option("--lr-rate", c.lr.learning_rate, "LR base learning rate");
  cmd->add_option("--lr-decay", c.lr.decay, "LR per-epoch rate decay");
  cmd->add_option("--svm-lambda", c.svm.lambda, "SVM L2 strength");
  cmd->add_option("--svm-epochs", c.svm.epochs, "SVM epochs");
  cmd->add_option("--svm-rate", c.svm.learning_rate, "SVM base learning rate");
  cmd->add_option("--svm-decay", c.svm.decay, "SVM per-epoch rate decay");
  cmd->add_option("--rf-trees", c.rf.n_trees, "forest size");
  cmd->add_option("--rf-depth", c.rf.max_depth, "forest tree depth limit");
  cmd->add_option("--rf-bootstrap", opts.rf_bootstrap, "bootstrap forest samples (true/false)");
  cmd->add_option("--gb-trees", c.gb.n_trees, "boosting stages");
  cmd->add_option("--gb-depth", c.gb.max_depth, "boosting tree depth");
  cmd->add_option("--gb-shrinkage", c.gb.shrinkage, "boosting shrinkage");
  cmd->add_option("--mlp-hidden", c.mlp.hidden_units, "hidden layer width");
  cmd->add_option("--mlp-epochs", c.mlp.epochs, "MLP epochs");
  cmd->add_option("--mlp-rate", c.mlp.learning_rate, "MLP base learning rate");
  cmd->add_option("--mlp-decay", c.mlp.decay, "MLP per-epoch rate decay");
}

// ---- subcommand implementations ---------------------------------------------

struct IngestArgs {
  std::string input, cpi, out;
  int base_year = 2015;
  std::string products = "credit card,prepaid card";
  std::string company;
  std::string from = "2011-12-01";
  std::string to = "2023-06-29";
  double max_amount = 10000.0;
};

int cmd_ingest(const IngestArgs& a) {
  fs::create_directories(a.out);
  std::ifstream in(a.input);
  if (!in) throw CliError("cannot open input: " + a.input);

  const auto parsed = ingest::parse_complaints(in);
  const auto cpi = ingest::load_cpi(
      a.cpi, Date{std::chrono::year(a.base_year), std::chrono::month(1), std::chrono::day(1)});

  ingest::SelectionFilters filters;
  filters.product_substrings = parse_string_list(a.products);
  filters.company_substring = a.company;
  filters.from = parse_date(a.from);
  filters.to = parse_date(a.to);
  filters.max_amount = a.max_amount;

  const auto outcome = ingest::select_records(parsed.complaints, cpi, filters);
  ingest::write_records_csv(fs::path(a.out) / kRecords, outcome.records);

  const auto& st = outcome.stats;
  std::cout << "parsed " << parsed.complaints.size() << " complaints ("
            << parsed.skipped_empty_narratives << " empty narratives skipped)\n"
            << "selected " << st.selected << " of " << st.total << " (product " << st.wrong_product
            << ", company " << st.wrong_company << ", window " << st.outside_window
            << ", no amount " << st.no_amount << ", multiple amounts " << st.multiple_amounts
            << ", over limit " << st.amount_too_large << " excluded)\n"
            << "wrote " << (fs::path(a.out) / kRecords).string() << '\n';
  return 0;
}

struct CleanArgs {
  std::string out, stopwords, frequent;
};

int cmd_clean(const CleanArgs& a) {
  const auto records_path = require_artifact(a.out, kRecords, "ingest");
  const auto records = ingest::read_records_csv(records_path);
  const auto stop_words = corpus::StopWordList::load(a.stopwords);
  corpus::WordSet frequent;
  if (!a.frequent.empty()) frequent = corpus::load_word_list(a.frequent);

  std::vector<corpus::CleanedNarrative> docs;
  docs.reserve(records.size());
  std::size_t tokens = 0;
  for (const auto& rec : records) {
    docs.push_back(corpus::clean(rec.narrative, stop_words, frequent, rec.id));
    tokens += docs.back().tokens.size();
  }
  corpus::write_cleaned_tsv(fs::path(a.out) / kCleaned, docs);
  std::cout << "cleaned " << docs.size() << " narratives, " << tokens << " tokens\n"
            << "wrote " << (fs::path(a.out) / kCleaned).string() << '\n';
  return 0;
}

struct FeaturizeArgs {
  std::string out;
  LexiconOptions lex;
  std::string featurization = "both";
  bool count_marks = false;
};

int cmd_featurize(const FeaturizeArgs& a) {
  const auto records_path = require_artifact(a.out, kRecords, "ingest");
  const auto cleaned_path = require_artifact(a.out, kCleaned, "clean");
  const auto records = ingest::read_records_csv(records_path);
  const auto docs = corpus::read_cleaned_tsv(cleaned_path);
  const auto lex = a.lex.load();
  const auto negative = lexicon::negative_subset(lex);

  std::map<std::string, double> amount_by_id;
  for (const auto& rec : records) amount_by_id[rec.id] = rec.adjusted_amount;

  for (const auto tag : parse_featurizations(a.featurization)) {
    const auto matrix = featurize::build_matrix(docs, lex, tag);
    const std::string name = featurize::tag_name(tag);
    featurize::write_matrix_csv(fs::path(a.out) / ("matrix_" + name + ".csv"), matrix);
    featurize::write_vocabulary(fs::path(a.out) / ("vocab_" + name + ".txt"), matrix.vocab);
    std::cout << name << ": " << matrix.n_rows << " rows, " << matrix.vocab.size()
              << " columns, " << matrix.entries.size() << " stored entries\n";
  }

  quantify::QuantifyOptions qopts;
  qopts.count_marks_as_words = a.count_marks;
  std::vector<quantify::NarrativeQuantities> quantities;
  quantities.reserve(docs.size());
  for (const auto& doc : docs) {
    const auto it = amount_by_id.find(doc.id);
    if (it == amount_by_id.end()) {
      throw CliError("cleaned narrative '" + doc.id + "' has no record row");
    }
    quantities.push_back(quantify::compute_quantities(doc, lex, negative, it->second, qopts));
  }
  quantify::write_quantities_csv(fs::path(a.out) / kQuantities, quantities);
  std::cout << "wrote " << (fs::path(a.out) / kQuantities).string() << '\n';
  return 0;
}

struct TrainArgs {
  std::string out;
  LexiconOptions lex;
  std::string featurization = "both";
  std::string models = "all";
  double test_frac = 0.4;
  int repeats = 500;
  std::uint64_t seed = 0;
  TrainOptions train;
};

int cmd_train(const TrainArgs& a) {
  if (a.test_frac <= 0.0 || a.test_frac >= 1.0) {
    throw CliError("--test-frac must be in (0,1)");
  }
  if (a.repeats < 1) throw CliError("--repeats must be at least 1");

  const auto records_path = require_artifact(a.out, kRecords, "ingest");
  const auto cleaned_path = require_artifact(a.out, kCleaned, "clean");
  const auto records = ingest::read_records_csv(records_path);
  const auto docs = corpus::read_cleaned_tsv(cleaned_path);
  const auto lex = a.lex.load();

  std::map<std::string, bool> merit_by_id;
  for (const auto& rec : records) merit_by_id[rec.id] = rec.merit;

  classify::Dataset data;
  for (const auto& doc : docs) {
    const auto it = merit_by_id.find(doc.id);
    if (it == merit_by_id.end()) {
      throw CliError("cleaned narrative '" + doc.id + "' has no record row");
    }
    data.ids.push_back(doc.id);
    data.docs.push_back(doc);
    data.labels.push_back(it->second ? 1 : 0);
  }

  classify::SplitSpec spec;
  spec.test_fraction = a.test_frac;
  spec.repetitions = a.repeats;
  spec.master_seed = a.seed;

  classify::TrainConfig config = a.train.config;
  config.rf.bootstrap = a.train.rf_bootstrap;

  std::vector<classify::MetricsRow> metric_rows;
  std::ofstream dm(fs::path(a.out) / kPredicted);
  if (!dm) throw CliError("cannot write predicted-merit artifact");
  dm << "run,model,featurization,id\n";

  for (const auto kind : parse_models(a.models)) {
    for (const auto tag : parse_featurizations(a.featurization)) {
      const auto results = classify::run_repeated(kind, tag, data, lex, spec, config);
      double mean_acc = 0.0;
      for (const auto& r : results) {
        metric_rows.push_back({r.run, classify::kind_name(kind), featurize::tag_name(tag),
                               r.metrics, r.n_test, r.predicted_merit_rows.size()});
        for (const std::size_t row : r.predicted_merit_rows) {
          dm << r.run << ',' << classify::kind_name(kind) << ',' << featurize::tag_name(tag)
             << ',' << csv_field(data.ids[row]) << '\n';
        }
        mean_acc += r.metrics.accuracy;
      }
      mean_acc /= static_cast<double>(results.size());
      std::cout << classify::kind_name(kind) << '/' << featurize::tag_name(tag) << ": mean accuracy "
                << percent(mean_acc) << "% over " << results.size() << " runs\n";
    }
  }
  classify::write_metrics_csv(fs::path(a.out) / kMetrics, metric_rows);
  std::cout << "wrote " << (fs::path(a.out) / kMetrics).string() << " and "
            << (fs::path(a.out) / kPredicted).string() << '\n';
  return 0;
}

struct IndicesArgs {
  std::string out;
  std::string p_list = "1.667,1.429,1.25,1.111";
  double growth_tau = 0.05;
  bool tie_jitter = false;
  std::uint64_t jitter_seed = 0;
};

int cmd_indices(const IndicesArgs& a) {
  const auto metrics_path = require_artifact(a.out, kMetrics, "train");
  const auto predicted_path = require_artifact(a.out, kPredicted, "train");
  const auto quantities_path = require_artifact(a.out, kQuantities, "featurize");

  const auto metrics = classify::read_metrics_csv(metrics_path);
  const auto quantities = quantify::read_quantities_csv(quantities_path);

  const auto p_values = parse_double_list(a.p_list, "--p");
  for (const double p : p_values) {
    if (!(p > 0.0)) throw CliError("--p values must be positive");
  }

  std::map<std::string, std::size_t> row_by_id;
  for (std::size_t i = 0; i < quantities.size(); ++i) row_by_id[quantities[i].id] = i;

  // Predicted-meritorious ids per (model, featurization, run).
  std::map<std::pair<std::string, std::string>, std::map<int, std::vector<std::size_t>>> dm;
  {
    std::ifstream in(predicted_path);
    CsvReader reader(in);
    const auto header = reader.next_row();
    if (!header || header->size() != 4) {
      throw CliError("not a predicted-merit artifact: " + predicted_path.string());
    }
    while (auto row = reader.next_row()) {
      if (row->size() != 4) throw CsvError("predicted row needs 4 fields", reader.row_number());
      const auto run = parse_long((*row)[0]);
      if (!run) throw CsvError("bad run index", reader.row_number());
      const auto it = row_by_id.find((*row)[3]);
      if (it == row_by_id.end()) {
        throw CliError("predicted id '" + (*row)[3] + "' missing from quantities");
      }
      dm[{(*row)[1], (*row)[2]}][static_cast<int>(*run)].push_back(it->second);
    }
  }

  indices::IndexSelection selection;
  selection.p_values = p_values;
  indices::ConcomitantOptions copt;
  copt.jitter = a.tie_jitter;
  copt.jitter_seed = a.jitter_seed;

  // Combos in metrics order, deduplicated.
  std::vector<std::pair<std::string, std::string>> combos;
  for (const auto& m : metrics) {
    const auto combo = std::make_pair(m.model, m.featurization);
    if (std::find(combos.begin(), combos.end(), combo) == combos.end()) combos.push_back(combo);
  }

  std::vector<indices::IndexRow> index_rows;
  std::vector<indices::GrowthRow> growth_rows;
  for (const auto& combo : combos) {
    std::vector<classify::RunResult> runs;
    for (const auto& m : metrics) {
      if (m.model != combo.first || m.featurization != combo.second) continue;
      classify::RunResult r;
      r.run = m.run;
      r.n_test = m.n_test;
      const auto dit = dm.find(combo);
      if (dit != dm.end()) {
        const auto rit = dit->second.find(m.run);
        if (rit != dit->second.end()) r.predicted_merit_rows = rit->second;
      }
      runs.push_back(std::move(r));
    }

    const auto result = indices::indices_from_runs(runs, quantities, tag_from_name(combo.second),
                                                   selection, copt);
    for (const auto& point : result.points) {
      index_rows.push_back({combo.first, combo.second, point});
    }

    std::vector<indices::IndexPoint> s_points;
    for (const auto& point : result.points) {
      if (point.kind == indices::IndexKind::S) s_points.push_back(point);
    }
    std::set<std::size_t> distinct;
    for (const auto& point : s_points) distinct.insert(point.n);
    if (distinct.size() >= 10) {
      indices::GrowthRow row;
      row.model = combo.first;
      row.featurization = combo.second;
      row.estimate = indices::estimate_growth(s_points);
      row.verdicts = indices::format_verdicts(row.estimate, p_values, a.growth_tau);
      growth_rows.push_back(std::move(row));
    } else {
      std::cout << combo.first << '/' << combo.second << ": " << distinct.size()
                << " distinct set sizes, growth fit needs 10; skipping growth row\n";
    }
    std::cout << combo.first << '/' << combo.second << ": " << result.points.size()
              << " index points (" << result.skipped_runs << " runs skipped)\n";
  }

  indices::write_indices_csv(fs::path(a.out) / kIndices, index_rows);
  indices::write_growth_csv(fs::path(a.out) / kGrowth, growth_rows);
  std::cout << "wrote " << (fs::path(a.out) / kIndices).string() << " and "
            << (fs::path(a.out) / kGrowth).string() << '\n';
  return 0;
}

struct ReportArgs {
  std::string out;
  bool real_data = false;
};

svg::Plot scatter_plot(std::string title, std::string x_label, std::string y_label) {
  svg::Plot plot;
  plot.title = std::move(title);
  plot.x_label = std::move(x_label);
  plot.y_label = std::move(y_label);
  plot.series.emplace_back();
  return plot;
}

void report_cobb(const fs::path& out_dir, const std::string& feat_name,
                 const quantify::CobbDouglasFit& fit) {
  // Scatter of the log-log data with the fitted line.
  auto plot = scatter_plot("sentiment vs word-count intensity (" + feat_name + ")",
                           "ln(s/l)", "ln(m/l)");
  for (std::size_t i = 0; i < fit.log_x.size(); ++i) {
    plot.series[0].points.emplace_back(fit.log_x[i], fit.log_y[i]);
  }
  const auto [min_it, max_it] = std::minmax_element(fit.log_x.begin(), fit.log_x.end());
  svg::Line line;
  line.points = {{*min_it, fit.intercept + fit.alpha_hat * *min_it},
                 {*max_it, fit.intercept + fit.alpha_hat * *max_it}};
  plot.lines.push_back(std::move(line));
  svg::write_svg(out_dir / ("cobb_" + feat_name + ".svg"), svg::render(plot));

  // Standard four-panel regression diagnostics.
  std::vector<svg::Plot> panels;
  auto& rvf = panels.emplace_back(scatter_plot("Residuals vs Fitted", "fitted", "residual"));
  for (std::size_t i = 0; i < fit.fitted.size(); ++i) {
    rvf.series[0].points.emplace_back(fit.fitted[i], fit.residuals[i]);
  }
  svg::Line zero;
  zero.points = {{*std::min_element(fit.fitted.begin(), fit.fitted.end()), 0.0},
                 {*std::max_element(fit.fitted.begin(), fit.fitted.end()), 0.0}};
  zero.color = "#888888";
  rvf.lines.push_back(zero);

  auto& qq = panels.emplace_back(
      scatter_plot("Normal Q-Q", "theoretical quantile", "standardized residual"));
  std::vector<double> sorted_std = fit.standardized_residuals;
  std::sort(sorted_std.begin(), sorted_std.end());
  const auto positions = stats::qq_positions(sorted_std.size());
  std::vector<double> theo(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) theo[i] = stats::normal_quantile(positions[i]);
  for (std::size_t i = 0; i < sorted_std.size(); ++i) {
    qq.series[0].points.emplace_back(theo[i], sorted_std[i]);
  }
  svg::Line identity;
  identity.points = {{theo.front(), theo.front()}, {theo.back(), theo.back()}};
  identity.color = "#888888";
  qq.lines.push_back(identity);

  auto& sl = panels.emplace_back(
      scatter_plot("Scale-Location", "fitted", "sqrt |standardized residual|"));
  for (std::size_t i = 0; i < fit.fitted.size(); ++i) {
    sl.series[0].points.emplace_back(fit.fitted[i],
                                     std::sqrt(std::abs(fit.standardized_residuals[i])));
  }

  auto& rvl = panels.emplace_back(
      scatter_plot("Residuals vs Leverage", "leverage", "standardized residual"));
  for (std::size_t i = 0; i < fit.leverage.size(); ++i) {
    rvl.series[0].points.emplace_back(fit.leverage[i], fit.standardized_residuals[i]);
  }
  svg::write_svg(out_dir / ("diagnostics_" + feat_name + ".svg"), svg::render_panels(panels, 2));

  // Diagnostics table mirroring the panels.
  std::ofstream diag(out_dir / ("diagnostics_" + feat_name + ".csv"));
  diag << "i,fitted,residual,leverage,standardized,sqrt_abs_standardized,"
          "qq_theoretical,qq_ordered_standardized\n";
  for (std::size_t i = 0; i < fit.fitted.size(); ++i) {
    diag << i << ',' << format_double(fit.fitted[i]) << ',' << format_double(fit.residuals[i])
         << ',' << format_double(fit.leverage[i]) << ','
         << format_double(fit.standardized_residuals[i]) << ','
         << format_double(std::sqrt(std::abs(fit.standardized_residuals[i]))) << ','
         << format_double(theo[i]) << ',' << format_double(sorted_std[i]) << '\n';
  }
}

int cmd_report(const ReportArgs& a) {
  const auto metrics_path = require_artifact(a.out, kMetrics, "train");
  const auto indices_path = require_artifact(a.out, kIndices, "indices");
  const auto quantities_path = require_artifact(a.out, kQuantities, "featurize");
  const fs::path out_dir(a.out);

  const auto metrics = classify::read_metrics_csv(metrics_path);
  if (metrics.empty()) throw CliError("metrics artifact is empty: " + metrics_path.string());
  const auto index_rows = indices::read_indices_csv(indices_path);
  if (index_rows.empty()) {
    throw CliError("index artifact is empty: " + indices_path.string());
  }
  const auto quantities = quantify::read_quantities_csv(quantities_path);

  // Averaged metrics table, with reference results beside fresh numbers
  // in real-data mode.
  struct Agg {
    double acc = 0, pmr = 0, recall = 0, f1p = 0, f1n = 0;
    std::size_t n = 0;
  };
  std::vector<std::pair<std::string, std::string>> combos;
  std::map<std::pair<std::string, std::string>, Agg> agg;
  for (const auto& m : metrics) {
    const auto combo = std::make_pair(m.model, m.featurization);
    if (std::find(combos.begin(), combos.end(), combo) == combos.end()) combos.push_back(combo);
    auto& entry = agg[combo];
    entry.acc += m.metrics.accuracy;
    entry.pmr += m.metrics.predicted_merit_rate;
    entry.recall += m.metrics.merit_recall;
    entry.f1p += m.metrics.f1_positive;
    entry.f1n += m.metrics.f1_negative;
    ++entry.n;
  }
  {
    std::ofstream out(out_dir / "table2.csv");
    out << "model,featurization,accuracy,merit (predicted rate),merit recall,f1 positive,"
           "f1 negative";
    if (a.real_data) out << ",accuracy reference,merit reference,f1 reference";
    out << '\n';
    for (const auto& combo : combos) {
      const auto& e = agg[combo];
      const double n = static_cast<double>(e.n);
      out << combo.first << ',' << combo.second << ',' << percent(e.acc / n) << ','
          << percent(e.pmr / n) << ',' << percent(e.recall / n) << ',' << percent(e.f1p / n)
          << ',' << percent(e.f1n / n);
      if (a.real_data) {
        bool found = false;
        for (const auto& ref : baselines::kReferenceMetrics) {
          if (combo.first == ref.model && combo.second == ref.featurization) {
            out << ',' << fixed2(ref.accuracy_pct) << ',' << fixed2(ref.merit_pct) << ','
                << fixed2(ref.f1_pct);
            found = true;
            break;
          }
        }
        if (!found) out << ",,,";
      }
      out << '\n';
    }
  }
  {
    std::ofstream out(out_dir / "reference_baselines.csv");
    out << "model,featurization,accuracy,merit,f1\n";
    for (const auto& ref : baselines::kReferenceMetrics) {
      out << ref.model << ',' << ref.featurization << ',' << fixed2(ref.accuracy_pct) << ','
          << fixed2(ref.merit_pct) << ',' << fixed2(ref.f1_pct) << '\n';
    }
  }

  // Cobb-Douglas fits for both variants.
  {
    std::ofstream out(out_dir / "cobb_fit.csv");
    out << "featurization,alpha,alpha_lo,alpha_hi,beta,intercept,n_used,n_excluded,"
           "alpha_above_one";
    if (a.real_data) out << ",alpha reference,alpha_lo reference,alpha_hi reference";
    out << '\n';
    for (const auto tag :
         {featurize::Tag::TermImportance, featurize::Tag::TermImportanceValence}) {
      const auto fit = quantify::fit_cobb_douglas(quantities, tag);
      const std::string name = featurize::tag_name(tag);
      out << name << ',' << format_double(fit.alpha_hat) << ','
          << format_double(fit.alpha_ci95.first) << ',' << format_double(fit.alpha_ci95.second)
          << ',' << format_double(fit.beta_hat) << ',' << format_double(fit.intercept) << ','
          << fit.n_used << ',' << fit.n_excluded << ',' << (fit.alpha_above_one ? 1 : 0);
      if (a.real_data) {
        for (const auto& ref : baselines::kReferenceElasticities) {
          if (name == ref.featurization) {
            out << ',' << format_double(ref.alpha) << ',' << format_double(ref.ci_lo) << ','
                << format_double(ref.ci_hi);
          }
        }
      }
      out << '\n';
      report_cobb(out_dir, name, fit);
    }
  }

  // Index scatters per model/featurization combo.
  std::vector<std::pair<std::string, std::string>> index_combos;
  for (const auto& row : index_rows) {
    const auto combo = std::make_pair(row.model, row.featurization);
    if (std::find(index_combos.begin(), index_combos.end(), combo) == index_combos.end()) {
      index_combos.push_back(combo);
    }
  }
  for (const auto& combo : index_combos) {
    const std::string stem = combo.first + "_" + combo.second;

    auto iplot = scatter_plot("upward share of total variation (" + stem + ")",
                              "predicted-meritorious set size n", "I");
    iplot.y_range = {{0.0, 1.0}};
    auto splot = scatter_plot("total variation (" + stem + ")",
                              "predicted-meritorious set size n", "S");
    splot.y_range = {{0.0, 200.0}};
    std::map<double, svg::Plot> bplots;

    for (const auto& row : index_rows) {
      if (row.model != combo.first || row.featurization != combo.second) continue;
      const auto n = static_cast<double>(row.point.n);
      switch (row.point.kind) {
        case indices::IndexKind::I:
          iplot.series[0].points.emplace_back(n, row.point.value);
          break;
        case indices::IndexKind::S:
          splot.series[0].points.emplace_back(n, row.point.value);
          break;
        case indices::IndexKind::B: {
          auto it = bplots.find(row.point.p);
          if (it == bplots.end()) {
            auto plot = scatter_plot("B at 1/p = " + format_double(1.0 / row.point.p),
                                     "predicted-meritorious set size n", "B");
            plot.y_range = {{0.0, 5.0}};
            it = bplots.emplace(row.point.p, std::move(plot)).first;
          }
          it->second.series[0].points.emplace_back(n, row.point.value);
          break;
        }
      }
    }

    if (!iplot.series[0].points.empty()) {
      svg::write_svg(out_dir / ("i_index_" + stem + ".svg"), svg::render(iplot));
    }
    if (!splot.series[0].points.empty()) {
      svg::write_svg(out_dir / ("s_n_" + stem + ".svg"), svg::render(splot));
    }
    if (!bplots.empty()) {
      std::vector<svg::Plot> panels;
      for (auto& [p, plot] : bplots) panels.push_back(std::move(plot));
      svg::write_svg(out_dir / ("b_index_" + stem + ".svg"), svg::render_panels(panels, 2));
    }
  }

  std::cout << "report written to " << out_dir.string() << '\n';
  return 0;
}

// Expands `--config FILE` into `--key=value` arguments placed before the
// user's own flags, so the command line keeps precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.size() < 2 || args[1].empty() || args[1][0] == '-') return args;

  std::string config_path;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::vector<std::string> expanded{args[0], args[1]};
  for (const auto& [key, value] : load_config_file(config_path)) {
    expanded.push_back("--" + key + "=" + value);
  }
  expanded.insert(expanded.end(), args.begin() + 2, args.end());
  return expanded;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"consumer-complaint merit classification and anomaly indices"};
  app.require_subcommand(1);

  IngestArgs ingest_args;
  CleanArgs clean_args;
  FeaturizeArgs feat_args;
  TrainArgs train_args;
  IndicesArgs indices_args;
  ReportArgs report_args;
  std::string config_dummy;

  const auto add_common = [&](CLI::App* cmd, std::string& out) {
    cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--out", out, "workspace directory for artifacts")->required();
    cmd->add_option("--config", config_dummy, "flat key=value config file");
  };

  auto* ingest_cmd = app.add_subcommand("ingest", "parse, filter and discount complaints");
  add_common(ingest_cmd, ingest_args.out);
  ingest_cmd->add_option("--input", ingest_args.input, "complaint CSV export")->required();
  ingest_cmd->add_option("--cpi", ingest_args.cpi, "annual CPI CSV (year,cpi)")->required();
  ingest_cmd->add_option("--base-year", ingest_args.base_year, "CPI discounting base year");
  ingest_cmd->add_option("--product", ingest_args.products, "product substrings (comma list)");
  ingest_cmd->add_option("--company", ingest_args.company, "company substring filter");
  ingest_cmd->add_option("--from", ingest_args.from, "earliest date received (YYYY-MM-DD)");
  ingest_cmd->add_option("--to", ingest_args.to, "latest date received (YYYY-MM-DD)");
  ingest_cmd->add_option("--max-amount", ingest_args.max_amount, "largest admissible amount");

  auto* clean_cmd = app.add_subcommand("clean", "clean and tokenize narratives");
  add_common(clean_cmd, clean_args.out);
  clean_cmd->add_option("--stopwords", clean_args.stopwords, "stop word list")->required();
  clean_cmd->add_option("--frequent", clean_args.frequent, "frequent word list");

  auto* feat_cmd = app.add_subcommand("featurize", "build feature matrices and quantities");
  add_common(feat_cmd, feat_args.out);
  add_lexicon_options(feat_cmd, feat_args.lex);
  feat_cmd->add_option("--featurization", feat_args.featurization,
                       "tfidf, tfidf-vader or both");
  feat_cmd->add_flag("--count-marks-as-words", feat_args.count_marks,
                     "count '!'/'?' tokens as words");

  auto* train_cmd = app.add_subcommand("train", "repeated split/train/evaluate");
  add_common(train_cmd, train_args.out);
  add_lexicon_options(train_cmd, train_args.lex);
  train_cmd->add_option("--featurization", train_args.featurization,
                        "tfidf, tfidf-vader or both");
  train_cmd->add_option("--model", train_args.models, "lr, svm, gb, mlp, rf, a comma list, or all");
  train_cmd->add_option("--test-frac", train_args.test_frac, "test fraction r");
  train_cmd->add_option("--repeats", train_args.repeats, "number of random splits k");
  train_cmd->add_option("--seed", train_args.seed, "master seed");
  add_train_options(train_cmd, train_args.train);

  auto* indices_cmd = app.add_subcommand("indices", "anomaly indices over the runs");
  add_common(indices_cmd, indices_args.out);
  indices_cmd->add_option("--p", indices_args.p_list, "B-index p values (comma list)");
  indices_cmd->add_option("--growth-tau", indices_args.growth_tau,
                          "half-width of the slope decision band");
  indices_cmd->add_flag("--tie-jitter", indices_args.tie_jitter,
                        "jitter tied inputs before ordering");
  indices_cmd->add_option("--jitter-seed", indices_args.jitter_seed, "seed for --tie-jitter");

  auto* report_cmd = app.add_subcommand("report", "tables and plots from the artifacts");
  add_common(report_cmd, report_args.out);
  report_cmd->add_flag("--real-data", report_args.real_data,
                       "show reference results from the original extract side-by-side");

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::vector<const char*> argv;
  argv.reserve(expanded.size());
  for (const auto& s : expanded) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (ingest_cmd->parsed()) return cmd_ingest(ingest_args);
    if (clean_cmd->parsed()) return cmd_clean(clean_args);
    if (feat_cmd->parsed()) {
      finish_lexicon_options(feat_cmd, feat_args.lex);
      return cmd_featurize(feat_args);
    }
    if (train_cmd->parsed()) {
      finish_lexicon_options(train_cmd, train_args.lex);
      return cmd_train(train_args);
    }
    if (indices_cmd->parsed()) return cmd_indices(indices_args);
    if (report_cmd->parsed()) return cmd_report(report_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run(int argc, const char* const* argv) {
  return run(std::vector<std::string>(argv, argv + argc));
}

}  // namespace meritscan::cli
