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

#include "meritscan/featurize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "meritscan/csv.hpp"
#include "meritscan/text.hpp"

namespace meritscan::featurize {

Vocabulary Vocabulary::from_sorted(std::vector<std::string> sorted_words) {
  Vocabulary v;
  v.words = std::move(sorted_words);
  v.index.reserve(v.words.size());
  for (std::size_t i = 0; i < v.words.size(); ++i) {
    v.index.emplace(v.words[i], static_cast<std::uint32_t>(i));
  }
  return v;
}

std::size_t term_frequency(const corpus::CleanedNarrative& doc, const std::string& w) {
  std::size_t n = 0;
  for (const auto& t : doc.tokens) {
    if (!corpus::is_semantic_mark(t) && t == w) ++n;
  }
  return n;
}

double inverse_document_frequency(std::span<const corpus::CleanedNarrative> docs,
                                  const std::string& w) {
  std::size_t n_j = 0;
  for (const auto& doc : docs) {
    if (term_frequency(doc, w) > 0) ++n_j;
  }
  if (n_j == 0) throw FeaturizeError("word appears in no document: '" + w + "'");
  return std::log(static_cast<double>(docs.size()) / static_cast<double>(n_j));
}

Featurizer Featurizer::build(std::span<const corpus::CleanedNarrative> docs,
                             const lexicon::SentimentLexicon& lex, Tag tag) {
  if (docs.empty()) throw FeaturizeError("cannot featurize an empty corpus");

  // Document frequencies in one pass over the corpus.
  std::map<std::string, std::size_t> doc_freq;
  std::set<std::string> seen;
  for (const auto& doc : docs) {
    seen.clear();
    for (const auto& t : doc.tokens) {
      if (corpus::is_semantic_mark(t)) continue;
      if (seen.insert(t).second) ++doc_freq[t];
    }
  }

  Featurizer f;
  f.tag_ = tag;
  f.n_docs_ = docs.size();
  std::vector<std::string> words;
  words.reserve(doc_freq.size());
  for (const auto& [word, freq] : doc_freq) {
    (void)freq;
    if (tag == Tag::TermImportanceValence && lex.intensity(word) >= 0.0) continue;
    words.push_back(word);
  }
  f.vocab_ = Vocabulary::from_sorted(std::move(words));

  f.weights_.resize(f.vocab_.size());
  const double n = static_cast<double>(docs.size());
  for (std::size_t col = 0; col < f.vocab_.size(); ++col) {
    const auto& word = f.vocab_.words[col];
    const double idf = std::log(n / static_cast<double>(doc_freq.at(word)));
    f.weights_[col] =
        tag == Tag::TermImportanceValence ? idf * std::abs(lex.intensity(word)) : idf;
  }
  return f;
}

SparseVec Featurizer::vectorize(const corpus::CleanedNarrative& doc) const {
  std::map<std::uint32_t, std::size_t> counts;
  for (const auto& t : doc.tokens) {
    if (corpus::is_semantic_mark(t)) continue;
    const auto it = vocab_.index.find(t);
    if (it != vocab_.index.end()) ++counts[it->second];
  }
  SparseVec vec;
  vec.reserve(counts.size());
  for (const auto& [col, tf] : counts) {
    const double value = static_cast<double>(tf) * weights_[col];
    if (value > 0.0) vec.emplace_back(col, value);
  }
  return vec;
}

FeatureMatrix build_matrix(std::span<const corpus::CleanedNarrative> docs,
                           const lexicon::SentimentLexicon& lex, Tag tag) {
  const Featurizer f = Featurizer::build(docs, lex, tag);
  FeatureMatrix m;
  m.n_rows = docs.size();
  m.vocab = f.vocab();
  m.tag = tag;
  for (std::size_t row = 0; row < docs.size(); ++row) {
    for (const auto& [col, value] : f.vectorize(docs[row])) {
      m.entries.push_back({static_cast<std::uint32_t>(row), col, value});
    }
  }
  return m;
}

void write_matrix_csv(const std::filesystem::path& file, const FeatureMatrix& matrix) {
  std::ofstream out(file);
  if (!out) throw FeaturizeError("cannot write: " + file.string());
  out << "row,col,value\n";
  for (const auto& e : matrix.entries) {
    out << e.row << ',' << e.col << ',' << format_double(e.value) << '\n';
  }
}

void write_vocabulary(const std::filesystem::path& file, const Vocabulary& vocab) {
  std::ofstream out(file);
  if (!out) throw FeaturizeError("cannot write: " + file.string());
  for (const auto& w : vocab.words) out << w << '\n';
}

FeatureMatrix read_matrix_csv(const std::filesystem::path& matrix_file,
                              const std::filesystem::path& vocab_file, Tag tag) {
  std::ifstream vin(vocab_file);
  if (!vin) throw FeaturizeError("cannot open vocabulary: " + vocab_file.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(vin, line)) {
    if (!line.empty()) words.push_back(line);
  }

  std::ifstream min(matrix_file);
  if (!min) throw FeaturizeError("cannot open matrix: " + matrix_file.string());
  CsvReader reader(min);
  const auto header = reader.next_row();
  if (!header || header->size() != 3) {
    throw FeaturizeError("not a matrix file: " + matrix_file.string());
  }

  FeatureMatrix m;
  m.vocab = Vocabulary::from_sorted(std::move(words));
  m.tag = tag;
  while (auto row = reader.next_row()) {
    if (row->size() != 3) throw CsvError("matrix row needs 3 fields", reader.row_number());
    const auto r = parse_long((*row)[0]);
    const auto c = parse_long((*row)[1]);
    const auto v = parse_double((*row)[2]);
    if (!r || !c || !v) throw CsvError("bad matrix entry", reader.row_number());
    m.entries.push_back({static_cast<std::uint32_t>(*r), static_cast<std::uint32_t>(*c), *v});
    m.n_rows = std::max(m.n_rows, static_cast<std::size_t>(*r) + 1);
  }
  return m;
}

}  // namespace meritscan::featurize
