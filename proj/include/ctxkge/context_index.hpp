/*
 * Copyright 2026 The ctxkge Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ctxkge/dataset.hpp"

namespace ctxkge {

// Star-graph contexts materialized from augmented training triples.
// entity_context[h] holds the (relation, tail) pairs of triples headed by h;
// relation_context[r] holds the (head, tail) endpoint pairs of relation r.
// Multiset semantics: repeated triples yield repeated pairs. Order is first
// occurrence in train_augmented, which fixes every downstream reduction order.
struct ContextIndex {
  std::vector<std::vector<std::pair<RelationId, EntityId>>> entity_context;
  std::vector<std::vector<std::pair<EntityId, EntityId>>> relation_context;
  std::optional<int> cap;
  std::uint64_t cap_seed = 0;
};

// Builds contexts from dataset.train_augmented only (valid/test never leak
// in). If cap is set, longer contexts are down-sampled without replacement,
// deterministically from cap_seed, preserving relative order. cap == 0 is
// rejected with std::invalid_argument.
ContextIndex build_context_index(const Dataset& dataset,
                                 std::optional<int> cap = std::nullopt,
                                 std::uint64_t cap_seed = 0);

// Stored context of one entity; empty for isolated entities.
// Throws std::out_of_range for an out-of-range id.
std::span<const std::pair<RelationId, EntityId>> context_of_entity(const ContextIndex& index,
                                                                   EntityId h);
std::span<const std::pair<EntityId, EntityId>> context_of_relation(const ContextIndex& index,
                                                                   RelationId r);

}  // namespace ctxkge
