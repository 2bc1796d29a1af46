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

#include <span>
#include <vector>

#include "ctxkge/dataset.hpp"
#include "ctxkge/model.hpp"

namespace ctxkge {

struct MetricsReport {
  double mrr = 0.0;
  double mr = 0.0;
  double hit3 = 0.0;
  std::size_t num_queries = 0;
};

// Mid-rank of entry r_true in a score vector (higher score = better):
// 1 + #{strictly greater} + #{equal, other}/2. Candidates are all entries.
double rank_from_scores(std::span<const double> scores, RelationId r_true);

// Ranks r_true among the original relations [0, num_relations) by
// psi(e_h, e_r', e_t) over the given (final) tables.
double rank_relation(EntityId h, EntityId t, RelationId r_true, const EmbeddingTables& tables,
                     ModelKind kind, int num_relations);

// MRR / MR / Hit@k aggregation over every query of a split. Throws on an
// empty split. hit_k defaults to the reported Hit@3.
MetricsReport evaluate(std::span<const Triple> split, const EmbeddingTables& tables,
                       ModelKind kind, int num_relations, int threads = 1, int hit_k = 3);

// Per-query ranks in split order (for rank dumps).
std::vector<double> rank_all(std::span<const Triple> split, const EmbeddingTables& tables,
                             ModelKind kind, int num_relations, int threads = 1);

}  // namespace ctxkge
