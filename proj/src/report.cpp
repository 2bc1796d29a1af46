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
#include "ctxkge/report.hpp"

namespace ctxkge {

EfficiencyReport make_report(const Dataset& dataset, const ContextIndex& index, ModelKind kind,
                             int dim, int num_iterations) {
  EfficiencyReport rep;
  rep.kind = kind;
  rep.dim = dim;
  rep.num_iterations = num_iterations;
  rep.trainable_parameters =
      static_cast<std::uint64_t>(dataset.num_entities() + dataset.num_relations_augmented()) * dim;
  std::uint64_t entries = 0;
  for (const auto& c : index.entity_context) entries += c.size();
  for (const auto& c : index.relation_context) entries += c.size();
  rep.aggregation_work = entries * static_cast<std::uint64_t>(num_iterations);
  return rep;
}

}  // namespace ctxkge
