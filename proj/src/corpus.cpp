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

#include "meritscan/corpus.hpp"

#include <cctype>
#include <fstream>
#include <regex>
#include <stdexcept>

#include "meritscan/text.hpp"

namespace meritscan::corpus {

namespace {

const std::unordered_set<std::string> kProtectedNegations = {
    "no", "not", "never", "nor", "cannot"};

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// First alphabetic run of the sentence, lowercased.
std::string first_word(std::string_view sentence) {
  std::size_t i = 0;
  while (i < sentence.size() && std::isalpha(static_cast<unsigned char>(sentence[i])) == 0) ++i;
  std::size_t start = i;
  while (i < sentence.size() && std::isalpha(static_cast<unsigned char>(sentence[i])) != 0) ++i;
  return to_lower(sentence.substr(start, i - start));
}

bool is_gratitude_opener(std::string_view sentence) {
  const std::string w = first_word(sentence);
  return w == "thank" || w == "thanks";
}

// Dollar amounts as they appear in complaint narratives, either bare or
// inside the {$...} redaction braces: {$1,000.00}, $230.00, $80.
const std::regex& dollar_pattern() {
  static const std::regex re(R"(\{?\$[0-9][0-9,]*(\.[0-9]+)?\}?)");
  return re;
}

}  // namespace

std::size_t word_count(const CleanedNarrative& doc, bool include_marks) {
  std::size_t n = 0;
  for (const auto& t : doc.tokens) {
    if (include_marks || !is_semantic_mark(t)) ++n;
  }
  return n;
}

bool is_mask_token(std::string_view token) {
  if (token.size() < 2) return false;
  for (char c : token) {
    if (c != 'x') return false;
  }
  return true;
}

StopWordList StopWordList::from_words(const std::vector<std::string>& words) {
  StopWordList list;
  for (const auto& w : words) {
    const std::string lw = to_lower(trim(w));
    if (lw.empty() || kProtectedNegations.count(lw)) continue;
    list.words_.insert(lw);
  }
  return list;
}

StopWordList StopWordList::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open stop word file: " + file.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    words.emplace_back(t);
  }
  return from_words(words);
}

WordSet load_word_list(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open word list: " + file.string());
  WordSet out;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.insert(to_lower(t));
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_terminator(text[i])) {
      // Decimal point guard: 230.00 is one number, not two sentences.
      const bool decimal = text[i] == '.' && i > 0 && i + 1 < text.size() &&
                           std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
                           std::isdigit(static_cast<unsigned char>(text[i + 1]));
      if (!decimal) {
        while (i + 1 < text.size() && is_terminator(text[i + 1])) ++i;
        sentences.emplace_back(text.substr(start, i - start + 1));
        start = i + 1;
      }
    }
    ++i;
  }
  if (start < text.size()) {
    const auto tail = trim(text.substr(start));
    if (!tail.empty()) sentences.emplace_back(tail);
  }
  return sentences;
}

CleanedNarrative clean(std::string_view raw, const StopWordList& stop_words,
                       const WordSet& frequent_words, std::string id) {
  std::string kept;
  for (const auto& sentence : split_sentences(raw)) {
    if (is_gratitude_opener(sentence)) continue;
    if (!kept.empty()) kept.push_back(' ');
    kept += sentence;
  }
  const std::string lowered = to_lower(kept);

  CleanedNarrative doc;
  doc.id = std::move(id);
  for (const auto chunk_view : split_ws(lowered)) {
    // Amounts must go before punctuation handling, otherwise "$230.00"
    // would already have collapsed to the plain word "23000".
    const std::string chunk =
        std::regex_replace(std::string(chunk_view), dollar_pattern(), "");

    std::string word;
    auto flush = [&] {
      if (word.empty()) return;
      if (!stop_words.contains(word) && !frequent_words.count(word) && !is_mask_token(word)) {
        doc.tokens.push_back(word);
      }
      word.clear();
    };
    for (char c : chunk) {
      if (is_word_char(c)) {
        word.push_back(c);
      } else if (c == '!' || c == '?') {
        flush();
        doc.tokens.emplace_back(1, c);
      }
      // Any other punctuation is deleted without breaking the word.
    }
    flush();
  }
  return doc;
}

void write_cleaned_tsv(const std::filesystem::path& file,
                       const std::vector<CleanedNarrative>& docs) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write: " + file.string());
  for (const auto& doc : docs) {
    out << doc.id << '\t';
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      if (i) out << ' ';
      out << doc.tokens[i];
    }
    out << '\n';
  }
}

std::vector<CleanedNarrative> read_cleaned_tsv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open: " + file.string());
  std::vector<CleanedNarrative> docs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw std::runtime_error("malformed cleaned row: " + line);
    CleanedNarrative doc;
    doc.id = line.substr(0, tab);
    for (const auto tok : split_ws(std::string_view(line).substr(tab + 1))) {
      doc.tokens.emplace_back(tok);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace meritscan::corpus
