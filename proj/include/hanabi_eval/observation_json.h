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

// JSON views of engine values, shared by the external-policy wire protocol
// and the experiment service. The own hand is only ever described through
// its hint knowledge.

#ifndef HANABI_EVAL_OBSERVATION_JSON_H_
#define HANABI_EVAL_OBSERVATION_JSON_H_

#include <string>

#include "hanabi_eval/card.h"
#include "hanabi_eval/engine.h"
#include "hanabi_eval/knowledge.h"
#include "json.hpp"

namespace hanabi_eval {

inline constexpr int kObservationSchemaVersion = 1;

nlohmann::json CardToJson(Card card);
Card CardFromJson(const nlohmann::json& j);

nlohmann::json MoveToJson(Move move);

nlohmann::json EventToJson(const EventRecord& event);

// Hint badges for one slot; `with_candidates` adds the candidate identity set.
nlohmann::json KnowledgeToJson(const CardKnowledge& card, bool with_candidates);

// Full viewer-side observation, including legal action ids. The own hand
// carries hint badges, plus hint-derived candidate sets when
// `own_candidates` is set.
nlohmann::json ObservationToJson(const Observation& obs, bool own_candidates = true);

}  // namespace hanabi_eval

#endif  // HANABI_EVAL_OBSERVATION_JSON_H_
