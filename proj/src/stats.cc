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


#include "hanabi_eval/stats.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

#include "hanabi_eval/agents.h"
#include "hanabi_eval/rng.h"

namespace hanabi_eval {

namespace {

double Mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

double Correlation(std::span<const double> x, std::span<const double> y) {
  const double mx = Mean(x), my = Mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string Num(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

bool InCohort(const MetricRow& row, Cohort cohort) {
  return cohort == Cohort::kAll || row.algorithm != kRandomBot;
}

}  // namespace

RegressionResult LinearRegression(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
  RegressionResult result;
  result.n = static_cast<int>(x.size());
  if (result.n < 3) return result;
  const double mx = Mean(x), my = Mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return result;
  result.applicable = true;
  result.slope = sxy / sxx;
  result.intercept = my - result.slope * mx;
  result.r = Correlation(x, y);
  double sse = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (result.intercept + result.slope * x[i]);
    sse += e * e;
  }
  const int dof = result.n - 2;
  result.slope_stderr = std::sqrt(sse / dof / sxx);
  const double one_minus_r2 = 1.0 - result.r * result.r;
  if (one_minus_r2 <= 0.0) {
    result.p_value = 0.0;
  } else {
    const double t = result.r * std::sqrt(dof / one_minus_r2);
    const boost::math::students_t dist(dof);
    result.p_value =
        std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))),
                   0.0, 1.0);
  }
  return result;
}

double BonferroniThreshold(double alpha, int k) {
  if (k < 1) throw std::invalid_argument("Bonferroni needs k >= 1");
  return alpha / k;
}

ParabolicFit FitParabola(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
  ParabolicFit fit;
  fit.n = static_cast<int>(x.size());
  std::vector<double> distinct(x.begin(), x.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (fit.n < 4 || distinct.size() < 3) return fit;

  // Centre and scale x so the design matrix stays well conditioned.
  const double mx = Mean(x);
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::fabs(v - mx));
  Eigen::MatrixXd design(fit.n, 3);
  Eigen::VectorXd target(fit.n);
  for (int i = 0; i < fit.n; ++i) {
    const double u = (x[i] - mx) / scale;
    design(i, 0) = 1.0;
    design(i, 1) = u;
    design(i, 2) = u * u;
    target(i) = y[i];
  }
  const Eigen::Vector3d p = design.colPivHouseholderQr().solve(target);
  // Back to x: y = p0 + p1 (x - mx)/s + p2 (x - mx)^2/s^2.
  fit.q2 = p(2) / (scale * scale);
  fit.q1 = p(1) / scale - 2.0 * p(2) * mx / (scale * scale);
  fit.q0 = p(0) - p(1) * mx / scale + p(2) * mx * mx / (scale * scale);
  fit.applicable = true;

  std::vector<double> fitted(fit.n);
  for (int i = 0; i < fit.n; ++i) {
    const double u = (x[i] - mx) / scale;
    fitted[i] = p(0) + p(1) * u + p(2) * u * u;
    fit.rss += (y[i] - fitted[i]) * (y[i] - fitted[i]);
  }
  fit.r = Correlation(fitted, y);
  fit.constraint_violated = !(fit.q2 < 0.0);
  if (fit.q2 != 0.0) {
    fit.a = fit.q2;
    fit.b = fit.q1 / (2.0 * fit.q2);
    fit.c = fit.q0 - fit.q1 * fit.q1 / (4.0 * fit.q2);
  } else {
    fit.a = 0.0;
    fit.b = std::nan("");
    fit.c = std::nan("");
  }
  return fit;
}

std::string ItemCoding::Name() const {
  return std::to_string(Min()) + "-" + std::to_string(Max());
}

int TeamworkRating(std::span<const int> items, const ItemCoding& coding) {
  if (items.size() != 8) throw std::invalid_argument("expected items B1..B8");
  int sum = 0;
  for (size_t i = 0; i < items.size(); ++i) {
    if (items[i] < 1 || items[i] > 7) {
      throw std::invalid_argument("item B" + std::to_string(i + 1) + " outside 1..7");
    }
    if (i >= 2) sum += items[i] + coding.offset;
  }
  return sum;
}

std::pair<int, int> TeamworkRatingRange(const ItemCoding& coding) {
  return {6 * coding.Min(), 6 * coding.Max()};
}

int ComparisonRating(std::span<const int> items) {
  if (items.size() != 7) throw std::invalid_argument("expected items P1..P7");
  int sum = 0;
  for (size_t i = 0; i < items.size(); ++i) {
    if (items[i] < 1 || items[i] > 7) {
      throw std::invalid_argument("item P" + std::to_string(i + 1) + " outside 1..7");
    }
    sum += items[i] - 4;
  }
  return sum;
}

std::vector<RatingRecord> ReadRatingsCsv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty ratings CSV");
  const std::vector<std::string> header = SplitCsvLine(line);
  auto column = [&](const std::string& name) -> std::optional<size_t> {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<size_t>(it - header.begin());
  };
  const auto participant = column("session_id");
  const auto bot = column("bot");
  const auto block = column("block");
  const auto rating = column("teamwork_rating");
  const auto score = column("human_ai_score_mean");
  if (!participant || !bot || !rating) {
    throw std::invalid_argument(
        "ratings CSV needs session_id, bot and teamwork_rating columns");
  }
  std::vector<RatingRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw std::invalid_argument("ragged ratings CSV row: " + line);
    }
    RatingRecord r;
    r.participant = cells[*participant];
    r.bot = cells[*bot];
    if (block) r.block = std::stoi(cells[*block]);
    r.rating = std::stod(cells[*rating]);
    if (score && cells[*score] != "NA" && !cells[*score].empty()) {
      r.human_ai_score = std::stod(cells[*score]);
    }
    records.push_back(r);
  }
  return records;
}

std::string WriteRatingsCsv(const std::vector<RatingRecord>& ratings) {
  std::ostringstream out;
  out << "session_id,block,bot,teamwork_rating,human_ai_score_mean\n";
  for (const RatingRecord& r : ratings) {
    out << r.participant << ',' << r.block << ',' << r.bot << ',' << Num(r.rating) << ','
        << (r.human_ai_score ? Num(*r.human_ai_score) : "NA") << '\n';
  }
  return out.str();
}

std::string CohortName(Cohort cohort) {
  return cohort == Cohort::kAll ? "all" : "no-random";
}

std::optional<Cohort> CohortFromName(const std::string& name) {
  if (name == "all") return Cohort::kAll;
  if (name == "no-random") return Cohort::kNoRandom;
  return std::nullopt;
}

const std::vector<std::string>& LinearMetricNames() {
  static const std::vector<std::string> names = {
      "self_play", "intra_xp", "inter_xp", "ad_entropy", "ard_entropy",
      "ci",        "g1",       "g2",       "g3"};
  return names;
}

std::string RegressionTable::ToCsv() const {
  std::ostringstream out;
  out << "metric,cohort,kind,n,r,m,p,m_stderr,significant,a,b,c,constraint_violated\n";
  for (const RegressionResult& r : linear) {
    out << r.metric << ',' << r.cohort << ",linear," << r.n << ',';
    if (r.applicable) {
      out << Num(r.r) << ',' << Num(r.slope) << ',' << Num(r.p_value) << ','
          << Num(r.slope_stderr) << ',' << (r.p_value < threshold ? "true" : "false");
    } else {
      out << "NA,NA,NA,NA,NA";
    }
    out << ",NA,NA,NA,NA\n";
  }
  for (const ParabolicFit& f : parabolic) {
    out << f.metric << ',' << f.cohort << ",parabolic," << f.n << ',';
    if (f.applicable) {
      out << Num(f.r) << ",NA,NA,NA,NA," << Num(f.a) << ',' << Num(f.b) << ','
          << Num(f.c) << ',' << (f.constraint_violated ? "true" : "false") << '\n';
    } else {
      out << "NA,NA,NA,NA,NA,NA,NA,NA,NA\n";
    }
  }
  return out.str();
}

RegressionTable CohortRegressions(const MetricReport& report,
                                  const std::vector<RatingRecord>& ratings,
                                  const std::vector<Cohort>& cohorts, double alpha) {
  std::map<std::string, const MetricRow*> rows;
  for (const MetricRow& row : report.rows) rows[row.agent] = &row;
  for (const RatingRecord& r : ratings) {
    if (!rows.count(r.bot)) {
      throw std::invalid_argument("rating for bot missing from metrics: " + r.bot);
    }
  }

  RegressionTable table;
  table.alpha = alpha;
  auto collect = [&](const std::string& metric, Cohort cohort, std::vector<double>& x,
                     std::vector<double>& y) {
    for (const RatingRecord& r : ratings) {
      const MetricRow& row = *rows.at(r.bot);
      if (!InCohort(row, cohort)) continue;
      if (metric == "intra_xp" && IsRuleBased(row.algorithm)) continue;
      std::optional<double> value;
      if (metric == "human_ai_score") {
        value = r.human_ai_score;
      } else if (auto s = MetricValue(row, metric)) {
        value = s->mean;
      }
      if (!value) continue;
      x.push_back(*value);
      y.push_back(r.rating);
    }
  };

  const bool have_scores = std::any_of(ratings.begin(), ratings.end(),
                                       [](const RatingRecord& r) {
                                         return r.human_ai_score.has_value();
                                       });
  std::vector<std::string> metrics;
  if (have_scores) metrics.push_back("human_ai_score");
  for (const std::string& m : LinearMetricNames()) metrics.push_back(m);

  for (const std::string& metric : metrics) {
    for (Cohort cohort : cohorts) {
      std::vector<double> x, y;
      collect(metric, cohort, x, y);
      RegressionResult r = LinearRegression(x, y);
      r.metric = metric;
      r.cohort = CohortName(cohort);
      if (metric != "human_ai_score") ++table.comparisons;
      table.linear.push_back(r);
    }
  }
  for (Cohort cohort : cohorts) {
    std::vector<double> x, y;
    collect("ic", cohort, x, y);
    ParabolicFit f = FitParabola(x, y);
    f.metric = "ic";
    f.cohort = CohortName(cohort);
    table.parabolic.push_back(f);
  }
  table.threshold = BonferroniThreshold(alpha, std::max(1, table.comparisons));
  return table;
}

std::vector<RatingRecord> SynthesizeRatings(const MetricReport& report,
                                            const SyntheticRatingsConfig& config) {
  Rng rng(config.seed);
  std::vector<RatingRecord> ratings;
  int participant = 0;
  for (const MetricRow& row : report.rows) {
    const std::optional<Summary> value = MetricValue(row, config.metric);
    if (!value) continue;
    for (int k = 0; k < config.per_bot; ++k) {
      RatingRecord r;
      r.participant = "synthetic-" + std::to_string(participant++);
      r.bot = row.agent;
      r.block = k % 2 + 1;
      r.rating = config.intercept + config.slope * value->mean + config.noise_sd * rng.Normal();
      ratings.push_back(r);
    }
  }
  return ratings;
}

std::vector<LetterValue> LetterValues(std::vector<double> values) {
  static const char* const kLetters[] = {"M", "F", "E", "D", "C", "B", "A",
                                         "Z", "Y", "X", "W", "V", "U", "T"};
  std::vector<LetterValue> result;
  if (values.empty()) return result;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  auto at_depth = [&](double depth, bool from_top) {
    // Depth is 1-based and may end in .5, meaning the mean of two neighbours.
    const size_t lo = static_cast<size_t>(std::floor(depth)) - 1;
    const size_t hi = static_cast<size_t>(std::ceil(depth)) - 1;
    auto pick = [&](size_t i) { return from_top ? values[values.size() - 1 - i] : values[i]; };
    return 0.5 * (pick(lo) + pick(hi));
  };
  double depth = (1.0 + n) / 2.0;
  for (size_t level = 0; level < std::size(kLetters); ++level) {
    result.push_back({kLetters[level], depth, at_depth(depth, false), at_depth(depth, true)});
    if (depth <= 1.0) break;
    depth = (1.0 + std::floor(depth)) / 2.0;
  }
  return result;
}

std::string LetterValuesCsv(const std::vector<RatingRecord>& ratings) {
  std::map<std::string, std::vector<double>> by_bot;
  for (const RatingRecord& r : ratings) by_bot[r.bot].push_back(r.rating);
  std::ostringstream out;
  out << "bot,n,letter,depth,lower,upper\n";
  for (const auto& [bot, values] : by_bot) {
    for (const LetterValue& lv : LetterValues(values)) {
      out << bot << ',' << values.size() << ',' << lv.letter << ',' << Num(lv.depth) << ','
          << Num(lv.lower) << ',' << Num(lv.upper) << '\n';
    }
  }
  return out.str();
}

}  // namespace hanabi_eval
