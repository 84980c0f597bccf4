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

#include "meritscan/lexicon.hpp"

using namespace meritscan;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("lexicon loads tokens with intensities, extra columns ignored") {
  const auto path = write_temp("lex_basic.tsv",
                               "bad\t-2.5\nangry\t-2.0\t0.6\t[-2, -3, -1]\ngood\t2.0\n");
  const auto lex = lexicon::load_lexicon(path);
  CHECK(lex.size() == 3);
  CHECK(lex.intensity("bad") == -2.5);
  CHECK(lex.intensity("angry") == -2.0);
  CHECK(lex.intensity("good") == 2.0);
  CHECK(lex.intensity("unknown") == 0.0);
  CHECK(lex.contains("bad"));
  CHECK_FALSE(lex.contains("unknown"));
}

TEST_CASE("duplicate tokens keep the last value") {
  const auto path = write_temp("lex_dup.tsv", "word\t-1.0\nword\t-3.0\n");
  const auto lex = lexicon::load_lexicon(path);
  CHECK(lex.size() == 1);
  CHECK(lex.intensity("word") == -3.0);
}

TEST_CASE("blank lines are skipped") {
  const auto path = write_temp("lex_blank.tsv", "\na\t1.0\n\n\nb\t-1.0\n");
  CHECK(lexicon::load_lexicon(path).size() == 2);
}

TEST_CASE("malformed rows report the 1-based line number") {
  const auto path = write_temp("lex_bad.tsv", "fine\t1.0\nbroken\tnot_a_number\n");
  try {
    lexicon::load_lexicon(path);
    FAIL("expected LexiconError");
  } catch (const lexicon::LexiconError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("intensities outside [-4,4] or non-finite are rejected") {
  CHECK_THROWS_AS(lexicon::load_lexicon(write_temp("lex_range.tsv", "w\t4.5\n")),
                  lexicon::LexiconError);
  CHECK_THROWS_AS(lexicon::load_lexicon(write_temp("lex_range2.tsv", "w\t-4.0001\n")),
                  lexicon::LexiconError);
  CHECK_THROWS_AS(lexicon::load_lexicon(write_temp("lex_inf.tsv", "w\tinf\n")),
                  lexicon::LexiconError);
  // The boundary itself is legal.
  CHECK(lexicon::load_lexicon(write_temp("lex_edge.tsv", "w\t-4.0\nv\t4.0\n")).size() == 2);
}

TEST_CASE("missing intensity column is an error") {
  CHECK_THROWS_AS(lexicon::load_lexicon(write_temp("lex_onecol.tsv", "lonely\n")),
                  lexicon::LexiconError);
}

TEST_CASE("set_intensity validates its range") {
  lexicon::SentimentLexicon lex;
  lex.set_intensity("!", 1.5);
  CHECK(lex.intensity("!") == 1.5);
  lex.set_intensity("!", -0.5);
  CHECK(lex.intensity("!") == -0.5);
  CHECK_THROWS(lex.set_intensity("!", 9.0));
}

TEST_CASE("negative_subset holds exactly the strictly negative words") {
  lexicon::SentimentLexicon lex;
  lex.set_intensity("bad", -2.5);
  lex.set_intensity("good", 2.0);
  lex.set_intensity("meh", 0.0);
  const auto negatives = lexicon::negative_subset(lex);
  CHECK(negatives.size() == 1);
  CHECK(negatives.count("bad") == 1);
}

TEST_CASE("the bundled lexicon loads and is sane") {
  const auto lex = lexicon::load_lexicon(fs::path(MERITSCAN_DATA_DIR) / "vader_lexicon.txt");
  CHECK(lex.size() > 150);
  const auto negatives = lexicon::negative_subset(lex);
  CHECK(negatives.size() > 80);
  CHECK(lex.intensity("fraud") < 0.0);
  CHECK(lex.intensity("thanks") > 0.0);
}

TEST_CASE("the test lexicon has twelve entries, seven negative") {
  const auto lex = lexicon::load_lexicon(fs::path(MERITSCAN_FIXTURES_DIR) / "mini_lexicon.tsv");
  CHECK(lex.size() == 12);
  CHECK(lexicon::negative_subset(lex).size() == 7);
}
