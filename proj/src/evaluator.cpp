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
#include "ctxkge/evaluator.hpp"

#include <stdexcept>

#include "ctxkge/parallel.hpp"

namespace ctxkge {

double rank_from_scores(std::span<const double> scores, RelationId r_true) {
  if (r_true < 0 || static_cast<std::size_t>(r_true) >= scores.size()) {
    throw std::out_of_range("true relation outside candidate range");
  }
  const double s = scores[r_true];
  std::size_t greater = 0, equal = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (static_cast<RelationId>(i) == r_true) continue;
    if (scores[i] > s) ++greater;
    else if (scores[i] == s) ++equal;
  }
  return 1.0 + greater + equal / 2.0;
}

double rank_relation(EntityId h, EntityId t, RelationId r_true, const EmbeddingTables& tables,
                     ModelKind kind, int num_relations) {
  std::vector<double> scores(num_relations);
  const auto e_h = tables.entity_row(h);
  const auto e_t = tables.entity_row(t);
  for (int r = 0; r < num_relations; ++r) {
    scores[r] = psi(kind, e_h, tables.relation_row(r), e_t);
  }
  return rank_from_scores(scores, r_true);
}

std::vector<double> rank_all(std::span<const Triple> split, const EmbeddingTables& tables,
                             ModelKind kind, int num_relations, int threads) {
  std::vector<double> ranks(split.size());
  parallel_for(split.size(), threads, [&](std::size_t i) {
    ranks[i] = rank_relation(split[i].head, split[i].tail, split[i].relation, tables, kind,
                             num_relations);
  });
  return ranks;
}

MetricsReport evaluate(std::span<const Triple> split, const EmbeddingTables& tables,
                       ModelKind kind, int num_relations, int threads, int hit_k) {
  if (split.empty()) throw std::invalid_argument("cannot evaluate an empty split");
  const auto ranks = rank_all(split, tables, kind, num_relations, threads);
  MetricsReport rep;
  rep.num_queries = ranks.size();
  std::size_t hits = 0;
  for (double r : ranks) {
    rep.mrr += 1.0 / r;
    rep.mr += r;
    if (r <= hit_k) ++hits;
  }
  rep.mrr /= ranks.size();
  rep.mr /= ranks.size();
  rep.hit3 = static_cast<double>(hits) / ranks.size();
  return rep;
}

}  // namespace ctxkge
