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


#ifndef HANABI_EVAL_HASH_H_
#define HANABI_EVAL_HASH_H_

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "json.hpp"

namespace hanabi_eval {

// 64-bit FNV-1a.
inline uint64_t Fnv1a64(std::string_view bytes,
                        uint64_t hash = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline std::string HashHex(uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

// Hash of the compact dump of `j`. nlohmann::json keeps object keys sorted,
// so equal documents always hash equally.
inline std::string ConfigHash(const nlohmann::json& j) {
  return HashHex(Fnv1a64(j.dump()));
}

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_HASH_H_
