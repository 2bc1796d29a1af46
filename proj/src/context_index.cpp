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
#include "ctxkge/context_index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ctxkge/rng.hpp"

namespace ctxkge {
namespace {

// Down-sample to cap entries without replacement, keeping relative order.
template <typename Pair>
void downsample(std::vector<Pair>& row, int cap, std::uint64_t cap_seed,
                std::string_view stream, std::uint64_t row_id) {
  if (static_cast<int>(row.size()) <= cap) return;
  auto rng = substream(cap_seed, stream, row_id);
  std::vector<std::size_t> idx(row.size());
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates selects cap indices.
  for (int i = 0; i < cap; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  std::vector<Pair> kept;
  kept.reserve(cap);
  for (std::size_t i : idx) kept.push_back(row[i]);
  row = std::move(kept);
}

}  // namespace

ContextIndex build_context_index(const Dataset& dataset, std::optional<int> cap,
                                 std::uint64_t cap_seed) {
  if (cap && *cap <= 0) throw std::invalid_argument("context cap must be positive");
  ContextIndex index;
  index.cap = cap;
  index.cap_seed = cap_seed;
  index.entity_context.resize(dataset.num_entities());
  index.relation_context.resize(dataset.num_relations_augmented());
  for (const Triple& t : dataset.train_augmented) {
    index.entity_context[t.head].emplace_back(t.relation, t.tail);
    index.relation_context[t.relation].emplace_back(t.head, t.tail);
  }
  if (cap) {
    for (std::size_t h = 0; h < index.entity_context.size(); ++h) {
      downsample(index.entity_context[h], *cap, cap_seed, "cap/entity", h);
    }
    for (std::size_t r = 0; r < index.relation_context.size(); ++r) {
      downsample(index.relation_context[r], *cap, cap_seed, "cap/relation", r);
    }
  }
  return index;
}

std::span<const std::pair<RelationId, EntityId>> context_of_entity(const ContextIndex& index,
                                                                   EntityId h) {
  if (h < 0 || static_cast<std::size_t>(h) >= index.entity_context.size()) {
    throw std::out_of_range("entity id out of range");
  }
  return index.entity_context[h];
}

std::span<const std::pair<EntityId, EntityId>> context_of_relation(const ContextIndex& index,
                                                                   RelationId r) {
  if (r < 0 || static_cast<std::size_t>(r) >= index.relation_context.size()) {
    throw std::out_of_range("relation id out of range");
  }
  return index.relation_context[r];
}

}  // namespace ctxkge
