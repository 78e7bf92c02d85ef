// Copyright 2026 The Hanabi Eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Regressions of subjective teamwork ratings on objective agent metrics.

#ifndef HANABI_EVAL_STATS_H_
#define HANABI_EVAL_STATS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hanabi_eval/metrics.h"
#include "json.hpp"

namespace hanabi_eval {

struct RegressionResult {
  std::string metric;
  std::string cohort;
  bool applicable = false;
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;
  double p_value = 1.0;
  double slope_stderr = 0.0;
  int n = 0;
};

// Ordinary least squares of y on x. p is the two-sided t-test of the slope
// with n - 2 degrees of freedom. Not applicable when n < 3 or x is constant.
RegressionResult LinearRegression(std::span<const double> x, std::span<const double> y);

double BonferroniThreshold(double alpha, int k);

// y = a (x + b)^2 + c. The fit is the unconstrained least-squares quadratic;
// when it is not concave (a >= 0) it is reported as is with
// constraint_violated set.
struct ParabolicFit {
  std::string metric;
  std::string cohort;
  bool applicable = false;
  bool constraint_violated = false;
  double a = 0.0, b = 0.0, c = 0.0;
  // Polynomial form y = q2 x^2 + q1 x + q0, always finite.
  double q2 = 0.0, q1 = 0.0, q0 = 0.0;
  double r = 0.0;  // correlation of fitted and observed y
  double rss = 0.0;
  int n = 0;
};

// Needs n >= 4 and at least three distinct x values.
ParabolicFit FitParabola(std::span<const double> x, std::span<const double> y);

// Likert responses are stored as 1..7. The coding decides the value each
// point contributes to a rating.
struct ItemCoding {
  int offset = -1;  // added to the 1..7 response; -1 gives 0..6, 0 gives 1..7

  int Min() const { return 1 + offset; }
  int Max() const { return 7 + offset; }
  std::string Name() const;
};

// Sum of B3..B8. `items` holds B1..B8 as 1..7 responses.
int TeamworkRating(std::span<const int> items, const ItemCoding& coding = {});
// Lowest and highest attainable teamwork rating under `coding`.
std::pair<int, int> TeamworkRatingRange(const ItemCoding& coding);

// Sum of P1..P7 coded -3 (definitely the first bot) .. +3 (definitely the
// second bot). `items` holds 1..7 responses.
int ComparisonRating(std::span<const int> items);

// One participant-block observation.
struct RatingRecord {
  std::string participant;
  std::string bot;  // agent name, as in the metrics report
  int block = 0;
  double rating = 0.0;
  std::optional<double> human_ai_score;  // mean over analysis-eligible games
};

std::vector<RatingRecord> ReadRatingsCsv(const std::string& csv);
std::string WriteRatingsCsv(const std::vector<RatingRecord>& ratings);

enum class Cohort { kAll, kNoRandom };
std::string CohortName(Cohort cohort);
std::optional<Cohort> CohortFromName(const std::string& name);

// The nine AI-only metrics regressed linearly, in output order.
const std::vector<std::string>& LinearMetricNames();

struct RegressionTable {
  std::vector<RegressionResult> linear;
  std::vector<ParabolicFit> parabolic;  // IC
  int comparisons = 0;  // AI-only linear fits entering the correction
  double alpha = 0.05;
  double threshold = 0.0;

  // metric, cohort, kind, n, r, m, p, m_stderr, significant, a, b, c,
  // constraint_violated.
  std::string ToCsv() const;
};

// Pairs every rating with its bot's mean metric and fits each metric for each
// cohort. Intra-XP additionally drops rule-based bots. The human-AI game
// score row is added when the ratings carry scores; it is not counted in the
// Bonferroni correction.
RegressionTable CohortRegressions(const MetricReport& report,
                                  const std::vector<RatingRecord>& ratings,
                                  const std::vector<Cohort>& cohorts,
                                  double alpha = 0.05);

// Ratings drawn as intercept + slope * metric(bot) + N(0, noise_sd), for
// `per_bot` participants per agent in the report. Used to validate the
// regression pipeline.
struct SyntheticRatingsConfig {
  std::string metric = "self_play";
  double slope = 1.0;
  double intercept = 10.0;
  double noise_sd = 2.0;
  int per_bot = 30;
  uint64_t seed = 1;
};
std::vector<RatingRecord> SynthesizeRatings(const MetricReport& report,
                                            const SyntheticRatingsConfig& config);

// Letter values (median, fourths, eighths, ...) down to the extremes.
struct LetterValue {
  std::string letter;
  double depth = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};
std::vector<LetterValue> LetterValues(std::vector<double> values);

// bot, n, letter, depth, lower, upper for every bot in `ratings`.
std::string LetterValuesCsv(const std::vector<RatingRecord>& ratings);

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_STATS_H_
