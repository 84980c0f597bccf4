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

#ifndef MERITSCAN_FEATURIZE_HPP
#define MERITSCAN_FEATURIZE_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "meritscan/corpus.hpp"
#include "meritscan/lexicon.hpp"

namespace meritscan::featurize {

struct FeaturizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Featurization variant: plain TF-IDF over the full vocabulary, or
// sentiment-weighted TF-IDF over the negative-word vocabulary only.
enum class Tag { TermImportance, TermImportanceValence };

inline const char* tag_name(Tag tag) {
  return tag == Tag::TermImportance ? "tfidf" : "tfidf-vader";
}

// Distinct words with dense column indices 0..size()-1, in lexicographic
// order so the mapping is reproducible.
struct Vocabulary {
  std::vector<std::string> words;
  std::unordered_map<std::string, std::uint32_t> index;

  static Vocabulary from_sorted(std::vector<std::string> sorted_words);
  std::size_t size() const { return words.size(); }
  bool contains(const std::string& w) const { return index.count(w) != 0; }
};

// Sparse feature vector: (column, value) pairs sorted by column, values > 0.
using SparseVec = std::vector<std::pair<std::uint32_t, double>>;

struct MatrixEntry {
  std::uint32_t row;
  std::uint32_t col;
  double value;
};

struct FeatureMatrix {
  std::size_t n_rows = 0;
  Vocabulary vocab;
  std::vector<MatrixEntry> entries;
  Tag tag = Tag::TermImportance;
};

// Occurrences of w among the document's word tokens.
std::size_t term_frequency(const corpus::CleanedNarrative& doc, const std::string& w);

// ln(n / n_j) with n_j the number of documents containing w. A word found
// in no document has no defined value and raises FeaturizeError.
double inverse_document_frequency(std::span<const corpus::CleanedNarrative> docs,
                                  const std::string& w);

// Vectorizer fit on one corpus (in practice: the training split). The
// vocabulary and document frequencies are frozen at construction; words a
// later document introduces are ignored by vectorize.
class Featurizer {
 public:
  static Featurizer build(std::span<const corpus::CleanedNarrative> docs,
                          const lexicon::SentimentLexicon& lex, Tag tag);

  SparseVec vectorize(const corpus::CleanedNarrative& doc) const;

  const Vocabulary& vocab() const { return vocab_; }
  Tag tag() const { return tag_; }
  std::size_t n_docs() const { return n_docs_; }

  // Per-column weight: IDF for the plain variant, IDF * |valence| for the
  // sentiment-weighted one.
  double column_weight(std::uint32_t col) const { return weights_[col]; }

 private:
  Vocabulary vocab_;
  std::vector<double> weights_;
  std::size_t n_docs_ = 0;
  Tag tag_ = Tag::TermImportance;
};

// Fits a featurizer on the whole corpus and materializes every row.
FeatureMatrix build_matrix(std::span<const corpus::CleanedNarrative> docs,
                           const lexicon::SentimentLexicon& lex, Tag tag);

// Sparse triplet artifact (`row,col,value`) and its vocabulary sidecar
// (one word per line, line order = column order).
void write_matrix_csv(const std::filesystem::path& file, const FeatureMatrix& matrix);
void write_vocabulary(const std::filesystem::path& file, const Vocabulary& vocab);
FeatureMatrix read_matrix_csv(const std::filesystem::path& matrix_file,
                              const std::filesystem::path& vocab_file, Tag tag);

}  // namespace meritscan::featurize

#endif  // MERITSCAN_FEATURIZE_HPP
