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

#ifndef HANABI_EVAL_RNG_H_
#define HANABI_EVAL_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hanabi_eval {

// Identifies the generator and the derivation scheme below. Bump whenever
// either changes, since recorded traces depend on both.
inline constexpr std::string_view kRngName = "mt19937_64+splitmix64/v1";

// SplitMix64 finalizer; used to derive independent stream seeds.
uint64_t Mix64(uint64_t x);

// Stable combination of two seeds into a new stream seed.
uint64_t DeriveSeed(uint64_t a, uint64_t b);

// Seeded generator with platform-independent sampling. std::mt19937_64 output
// is fixed by the standard; the distributions in <random> are not, so the
// bounded draws are done here by rejection.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(Mix64(seed)) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, n). Requires n > 0.
  int UniformInt(int n);

  // Uniform double in [0, 1) with 53 random bits.
  double UniformDouble();

  // Standard normal draw (Box-Muller, one value per call).
  double Normal();

  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (int i = static_cast<int>(values.size()) - 1; i > 0; --i) {
      int j = UniformInt(i + 1);
      std::swap(values[i], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_RNG_H_
