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

#ifndef HANABI_EVAL_SUMMARY_H_
#define HANABI_EVAL_SUMMARY_H_

#include <cmath>
#include <optional>
#include <span>

namespace hanabi_eval {

// Mean and sample standard deviation (n - 1 denominator; 0 when n == 1).
struct Summary {
  double mean = 0.0;
  double std = 0.0;
  int n = 0;
};

inline std::optional<Summary> Summarize(std::span<const double> values) {
  if (values.empty()) return std::nullopt;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / values.size();
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double std =
      values.size() > 1 ? std::sqrt(ss / (values.size() - 1)) : 0.0;
  return Summary{mean, std, static_cast<int>(values.size())};
}

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_SUMMARY_H_
