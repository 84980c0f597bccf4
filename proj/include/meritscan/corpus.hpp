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

#ifndef MERITSCAN_CORPUS_HPP
#define MERITSCAN_CORPUS_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace meritscan::corpus {

// A narrative after cleaning: an ordered token stream. Tokens are either
// words (lowercase alphanumeric runs) or the semantic punctuation marks
// "!" and "?", which are kept because they carry sentiment.
struct CleanedNarrative {
  std::string id;
  std::vector<std::string> tokens;
};

inline bool is_semantic_mark(std::string_view token) {
  return token == "!" || token == "?";
}

// Number of word tokens; marks are excluded unless requested.
std::size_t word_count(const CleanedNarrative& doc, bool include_marks = false);

// Word count as used by the word-count model input: marks excluded.
inline std::size_t word_count_ti(const CleanedNarrative& doc) { return word_count(doc, false); }

// Redaction mask: a run of two or more 'x' characters and nothing else.
bool is_mask_token(std::string_view token);

// Stop word list. Negation words are load-bearing for sentiment scoring,
// so the list refuses to hold them: no, not, never, nor, cannot are
// silently dropped on construction regardless of the source of the list.
class StopWordList {
 public:
  StopWordList() = default;
  static StopWordList from_words(const std::vector<std::string>& words);
  static StopWordList load(const std::filesystem::path& file);

  bool contains(const std::string& word) const { return words_.count(word) != 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

using WordSet = std::unordered_set<std::string>;

// One lowercase word per line; blank lines and '#' comments are skipped.
WordSet load_word_list(const std::filesystem::path& file);

// Splits text into sentences on runs of '.', '!' and '?'. The terminator
// run stays attached to its sentence. A period with a digit on both sides
// is part of a number ("$230.00"), not a boundary. Trailing text without
// a terminator forms the last sentence.
std::vector<std::string> split_sentences(std::string_view text);

// Full cleaning pipeline:
//   1. drop sentences whose first word is "thank" or "thanks" (any case)
//   2. lowercase
//   3. remove dollar amounts, with or without the {$...} redaction braces
//   4. tokenize: alphanumeric runs are words, other punctuation is deleted
//      in place (so "macy's" becomes "macys"), and each '!' or '?' becomes
//      its own token
//   5. remove stop words, listed frequent words, and redaction masks
CleanedNarrative clean(std::string_view raw, const StopWordList& stop_words,
                       const WordSet& frequent_words, std::string id = "");

// Tab separated artifact: id, then the tokens joined by single spaces.
void write_cleaned_tsv(const std::filesystem::path& file,
                       const std::vector<CleanedNarrative>& docs);
std::vector<CleanedNarrative> read_cleaned_tsv(const std::filesystem::path& file);

}  // namespace meritscan::corpus

#endif  // MERITSCAN_CORPUS_HPP
