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

#ifndef MERITSCAN_LEXICON_HPP
#define MERITSCAN_LEXICON_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace meritscan::lexicon {

struct LexiconError : std::runtime_error {
  LexiconError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line(line) {}
  std::size_t line;
};

// Word -> valence intensity map. Intensities live on [-4, 4]; negative
// means negative sentiment. Unknown words read as 0 so callers can apply
// the lexicon to arbitrary text without membership checks.
class SentimentLexicon {
 public:
  static constexpr double kMaxAbsIntensity = 4.0;

  double intensity(const std::string& word) const {
    const auto it = entries_.find(word);
    return it == entries_.end() ? 0.0 : it->second;
  }

  bool contains(const std::string& word) const { return entries_.count(word) != 0; }

  // Inserts or replaces one entry. Out of range intensities are rejected.
  void set_intensity(const std::string& word, double value);

  std::size_t size() const { return entries_.size(); }

  const std::unordered_map<std::string, double>& entries() const { return entries_; }

 private:
  std::unordered_map<std::string, double> entries_;
};

// Reads a tab separated file: token, intensity, then optional columns that
// are ignored. Later duplicates replace earlier ones. A missing or
// unparseable intensity, a non-finite value, or a value outside [-4, 4]
// raises LexiconError with the 1-based line number.
SentimentLexicon load_lexicon(const std::filesystem::path& file);

using WordSet = std::unordered_set<std::string>;

// Words with strictly negative intensity.
WordSet negative_subset(const SentimentLexicon& lex);

}  // namespace meritscan::lexicon

#endif  // MERITSCAN_LEXICON_HPP
