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

#include "meritscan/lexicon.hpp"

#include <cmath>
#include <fstream>

#include "meritscan/text.hpp"

namespace meritscan::lexicon {

void SentimentLexicon::set_intensity(const std::string& word, double value) {
  if (!std::isfinite(value) || std::abs(value) > kMaxAbsIntensity) {
    throw std::invalid_argument("intensity out of range for '" + word + "'");
  }
  entries_[word] = value;
}

SentimentLexicon load_lexicon(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open lexicon file: " + file.string());

  SentimentLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;

    const std::size_t tab1 = line.find('\t');
    if (tab1 == std::string::npos) throw LexiconError("missing intensity column", lineno);
    const std::string token = line.substr(0, tab1);
    const std::size_t tab2 = line.find('\t', tab1 + 1);
    const std::string raw = tab2 == std::string::npos
                                ? line.substr(tab1 + 1)
                                : line.substr(tab1 + 1, tab2 - tab1 - 1);

    const auto value = parse_double(raw);
    if (!value || !std::isfinite(*value)) {
      throw LexiconError("intensity is not a finite number: '" + raw + "'", lineno);
    }
    if (std::abs(*value) > SentimentLexicon::kMaxAbsIntensity) {
      throw LexiconError("intensity outside [-4, 4]: '" + raw + "'", lineno);
    }
    lex.set_intensity(token, *value);
  }
  return lex;
}

WordSet negative_subset(const SentimentLexicon& lex) {
  WordSet out;
  for (const auto& [word, value] : lex.entries()) {
    if (value < 0.0) out.insert(word);
  }
  return out;
}

}  // namespace meritscan::lexicon
