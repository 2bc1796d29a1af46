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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ctxkge/aggregator.hpp"
#include "ctxkge/context_index.hpp"
#include "ctxkge/dataset.hpp"
#include "ctxkge/evaluator.hpp"
#include "ctxkge/model.hpp"

namespace ctxkge {

struct TrainConfig {
  ModelKind kind = ModelKind::DistMult;
  double learning_rate = 5e-3;
  double l2_coeff = 1e-7;
  int batch_size = 512;
  int dim = 256;
  int num_iterations = 4;  // L
  int max_epochs = 20;
  int patience = 3;
  std::uint64_t seed = 0;
  ContextVariant variant = ContextVariant::Both;
  bool mask_target_edge = false;
  std::optional<int> context_cap;
  std::uint64_t cap_seed = 0;
  int threads = 1;
};

// Adam moment accumulators mirroring the embedding tables.
struct AdamState {
  std::vector<double> m_entity, v_entity, m_relation, v_relation;
  long step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// log p(r | h, t) over the original relation candidates, computed with
// max-subtracted logsumexp from the final (layer-L) tables.
std::vector<double> relation_logprobs(EntityId h, EntityId t, const EmbeddingTables& final_tables,
                                      ModelKind kind, int num_relations);

// Per-target re-aggregation chain used when the scored triple is masked out
// of its own head/relation contexts. The chain row is recomputed per layer
// with the masked entry dropped; all other rows come from the global layer
// snapshots.
struct MaskedChain {
  bool active = false;
  std::ptrdiff_t skip = -1;                 // index dropped from the context row
  std::vector<std::vector<double>> layers;  // num_steps()+1 rows of dim
  std::vector<std::vector<double>> attn;    // per step; empty if nothing left
};

// Everything the backward pass needs about one forward evaluation.
struct BatchRecord {
  std::vector<Triple> triples;
  std::vector<std::vector<double>> probs;  // per triple, over candidates
  std::vector<MaskedChain> head_chains;    // per triple; unused when mask off
  std::vector<MaskedChain> rel_chains;
  double data_loss = 0.0;  // mean NLL
  double l2_loss = 0.0;    // l2_coeff * sum of squared base parameters
  double loss = 0.0;
};

// NLL of the batch (Eq.-style mean over triples) plus the L2 penalty on the
// base tables. Throws on an empty batch.
BatchRecord batch_loss(std::span<const Triple> batch, const AggregationState& state,
                       const ContextIndex& index, const TrainConfig& config, int num_relations);

// Exact gradients of BatchRecord's loss with respect to the base tables,
// propagated through every aggregation step, both attention softmaxes, the
// context encoders, the relation softmax and the L2 term.
Grads backward(const BatchRecord& record, const AggregationState& state,
               const ContextIndex& index, const TrainConfig& config, int num_relations);

// Bias-corrected Adam step.
void adam_update(EmbeddingTables& tables, const Grads& grads, AdamState& opt, double lr);

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  MetricsReport valid;
  double wall_time_s = 0.0;
};

struct FitResult {
  EmbeddingTables tables;  // best-valid-MRR snapshot
  std::vector<EpochRecord> log;
  int best_epoch = 0;  // 0 = initialization
  double best_valid_mrr = 0.0;
};

// Invoked after each epoch; `improved` marks a new best-valid-MRR epoch.
using EpochCallback =
    std::function<void(const EpochRecord&, const EmbeddingTables& tables, bool improved)>;

// Full training loop: seeded shuffling, per-batch re-aggregation from the
// current base tables, Adam updates, early stopping on valid MRR.
FitResult fit(const Dataset& dataset, const TrainConfig& config,
              const EpochCallback& callback = nullptr);

}  // namespace ctxkge
