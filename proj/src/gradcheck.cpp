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
#include "ctxkge/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "ctxkge/context_index.hpp"
#include "ctxkge/rng.hpp"
#include "ctxkge/trainer.hpp"

namespace ctxkge {

Dataset make_tiny_kg(std::uint64_t seed, int num_entities, int num_relations, int num_triples) {
  auto rng = substream(seed, "gradcheck/kg");
  std::uniform_int_distribution<int> pick_e(0, num_entities - 1);
  std::vector<RawTriple> train;
  train.reserve(num_triples);
  for (int i = 0; i < num_triples; ++i) {
    // Cycle relations so every relation row is reachable.
    train.push_back({"e" + std::to_string(pick_e(rng)), "r" + std::to_string(i % num_relations),
                     "e" + std::to_string(pick_e(rng))});
  }
  // Mention every entity once so vocabulary size is deterministic.
  for (int e = 0; e < num_entities; ++e) {
    train.push_back({"e" + std::to_string(e), "r0", "e" + std::to_string((e + 1) % num_entities)});
  }
  return build_dataset(train, {train.front()}, {train.back()});
}

double gradcheck(const GradCheckOptions& options) {
  const Dataset ds = make_tiny_kg(options.seed);
  const ContextIndex index = build_context_index(ds);
  const int d = 5;

  TrainConfig cfg;
  cfg.kind = options.kind;
  cfg.num_iterations = options.num_iterations;
  cfg.l2_coeff = 1e-4;
  cfg.mask_target_edge = options.mask_target_edge;
  cfg.dim = d;

  EmbeddingTables tables =
      init_embeddings(ds.num_entities(), ds.num_relations_augmented(), d, mix64(options.seed));
  // Keep the iterated products well-conditioned so central differences stay
  // inside truncation-error budget at step 1e-5.
  for (double& v : tables.entity) v *= 0.3;
  for (double& v : tables.relation) v *= 0.3;
  const AggregationConfig agg{cfg.num_iterations, cfg.variant};

  const auto loss_at = [&](const EmbeddingTables& t) {
    const AggregationState st = aggregate(t, index, cfg.kind, agg);
    return batch_loss(ds.train, st, index, cfg, ds.num_relations()).loss;
  };

  const AggregationState state = aggregate(tables, index, cfg.kind, agg);
  const BatchRecord rec = batch_loss(ds.train, state, index, cfg, ds.num_relations());
  Grads grads = backward(rec, state, index, cfg, ds.num_relations());
  if (options.corrupt_gradient) grads.entity[0] += 0.5;

  const double h = options.fd_step;
  double max_err = 0.0;
  const auto check = [&](std::vector<double>& params, const std::vector<double>& analytic) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double orig = params[i];
      params[i] = orig + h;
      const double fp = loss_at(tables);
      params[i] = orig - h;
      const double fm = loss_at(tables);
      params[i] = orig;
      const double fd = (fp - fm) / (2.0 * h);
      const double a = analytic[i];
      const double err = std::abs(a - fd) / std::max({1.0, std::abs(a), std::abs(fd)});
      max_err = std::max(max_err, err);
    }
  };
  check(tables.entity, grads.entity);
  check(tables.relation, grads.relation);
  return max_err;
}

}  // namespace ctxkge
