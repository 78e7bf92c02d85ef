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


// Minimal external policy: answers every observation with its first legal
// action id. Used to exercise the subprocess wire protocol.

#include <iostream>

#include "hanabi_eval/external_policy.h"

int main() {
  return hanabi_eval::ServeExternalPolicy(
      std::cin, std::cout, [](const nlohmann::json& obs) {
        return obs.at("legal_action_ids").at(0).get<int>();
      });
}
