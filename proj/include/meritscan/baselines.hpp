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

#ifndef MERITSCAN_BASELINES_HPP
#define MERITSCAN_BASELINES_HPP

#include <cstddef>

namespace meritscan::baselines {

// Reference results from the original study extract of the public
// complaint database (credit/prepaid card products, 2011-12-01 through
// 2023-06-29, 2,849 records, 500 random 60/40 splits). They depend on
// that exact extract and CPI vintage, so they are not test oracles; the
// report prints them beside fresh results for comparison.

struct ReferenceMetrics {
  const char* model;
  const char* featurization;
  double accuracy_pct;
  double merit_pct;  // share of test complaints classified meritorious
  double f1_pct;
};

inline constexpr ReferenceMetrics kReferenceMetrics[] = {
    {"lr", "tfidf", 67.37, 15.41, 78.00},
    {"svm", "tfidf", 67.30, 13.24, 78.24},
    {"gb", "tfidf", 64.61, 16.43, 76.03},
    {"mlp", "tfidf", 58.08, 36.04, 71.22},
    {"rf", "tfidf", 65.56, 9.80, 77.64},
    {"lr", "tfidf-vader", 63.96, 8.52, 76.80},
    {"svm", "tfidf-vader", 63.72, 7.29, 76.65},
    {"gb", "tfidf-vader", 62.75, 11.31, 75.44},
    {"mlp", "tfidf-vader", 56.50, 34.96, 66.38},
    {"rf", "tfidf-vader", 60.67, 18.71, 73.28},
};

inline constexpr std::size_t kReferenceMetricsCount =
    sizeof(kReferenceMetrics) / sizeof(kReferenceMetrics[0]);

struct ReferenceElasticity {
  const char* featurization;
  double alpha;
  double ci_lo;
  double ci_hi;
};

inline constexpr ReferenceElasticity kReferenceElasticities[] = {
    {"tfidf", 0.990, 0.983, 0.997},
    {"tfidf-vader", 1.004, 1.001, 1.007},
};

// Growth-exponent reciprocal p* localized between tested p values on the
// same extract: word-count variant between 1/0.8 and 1/0.7, the
// sentiment-weighted variant between 1/0.7 and 1/0.6.
struct ReferencePstarInterval {
  const char* featurization;
  double lo;
  double hi;
};

inline constexpr ReferencePstarInterval kReferencePstar[] = {
    {"tfidf", 1.0 / 0.8, 1.0 / 0.7},
    {"tfidf-vader", 1.0 / 0.7, 1.0 / 0.6},
};

}  // namespace meritscan::baselines

#endif  // MERITSCAN_BASELINES_HPP
