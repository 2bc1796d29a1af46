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
#include <string>
#include <unordered_map>
#include <vector>

namespace ctxkge {

using EntityId = std::int32_t;
using RelationId = std::int32_t;

struct RawTriple {
  std::string head;
  std::string relation;
  std::string tail;
};

// Integer-encoded (head, relation, tail) fact.
struct Triple {
  EntityId head;
  RelationId relation;
  EntityId tail;
  friend bool operator==(const Triple&, const Triple&) = default;
};

// Vocabularies plus the three encoded splits. Relation ids [0, R) are the
// original relations; [R, 2R) are their inverses. train_augmented is train
// followed by one inverse triple (t, r+R, h) per training triple.
struct Dataset {
  std::vector<std::string> entity_names;    // id -> surface string
  std::vector<std::string> relation_names;  // original relations only
  std::unordered_map<std::string, EntityId> entity_ids;
  std::unordered_map<std::string, RelationId> relation_ids;
  std::vector<Triple> train;
  std::vector<Triple> valid;
  std::vector<Triple> test;
  std::vector<Triple> train_augmented;

  int num_entities() const { return static_cast<int>(entity_names.size()); }
  int num_relations() const { return static_cast<int>(relation_names.size()); }
  int num_relations_augmented() const { return 2 * num_relations(); }

  // Involution: inverse_of(inverse_of(r)) == r.
  RelationId inverse_of(RelationId r) const {
    const RelationId nr = num_relations();
    return r < nr ? r + nr : r - nr;
  }
  // Surface string for any relation id, inverses included.
  std::string relation_display_name(RelationId r) const {
    const RelationId nr = num_relations();
    return r < nr ? relation_names[r] : relation_names[r - nr] + "^-1";
  }
};

struct DatasetStats {
  int num_entities = 0;
  int num_relations = 0;  // original
  std::int64_t num_train = 0;
  std::int64_t num_valid = 0;
  std::int64_t num_test = 0;
  double avg_entity_context = 0.0;
  double avg_relation_context = 0.0;
};

// Reads one triple per line, fields separated by exactly one TAB; surrounding
// whitespace of each field is trimmed, empty lines are skipped. Throws
// std::runtime_error naming the file (and line, for malformed lines).
std::vector<RawTriple> load_split(const std::string& path);

Dataset build_dataset(const std::vector<RawTriple>& train,
                      const std::vector<RawTriple>& valid,
                      const std::vector<RawTriple>& test);

DatasetStats compute_stats(const Dataset& dataset);

}  // namespace ctxkge
