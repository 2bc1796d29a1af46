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

#include <vector>

#include "ctxkge/context_index.hpp"
#include "ctxkge/model.hpp"

namespace ctxkge {

// Ablation switch: which side of the star graphs gets aggregated.
enum class ContextVariant { Both, EntityOnly, RelationOnly, None };

std::string to_string(ContextVariant v);
ContextVariant variant_from_string(const std::string& name);  // both|ent|rel|none

struct AggregationConfig {
  int num_iterations = 4;  // L
  ContextVariant variant = ContextVariant::Both;
};

// All layer snapshots e^(0)..e^(L) plus the attention weights computed at
// each iteration. Every attention vector is a probability distribution over
// the row's context (empty for empty contexts / non-aggregated sides).
// variant == None behaves exactly like L == 0: a single layer, no attention.
struct AggregationState {
  std::vector<EmbeddingTables> layers;
  // [l][row][k]; entity_attention[l] computed from layers[l].
  std::vector<std::vector<std::vector<double>>> entity_attention;
  std::vector<std::vector<std::vector<double>>> relation_attention;

  const EmbeddingTables& base() const { return layers.front(); }
  const EmbeddingTables& final_tables() const { return layers.back(); }
  int num_steps() const { return static_cast<int>(layers.size()) - 1; }
};

// Softmax (max-subtracted) over psi(e_h, e_r', e_t') for the entries of one
// entity context. The context must be non-empty.
std::vector<double> attention_entity(EntityId h, const EmbeddingTables& tables,
                                     std::span<const std::pair<RelationId, EntityId>> context,
                                     ModelKind kind);
// Same construction over psi(e_h', e_r, e_t') for one relation context.
std::vector<double> attention_relation(RelationId r, const EmbeddingTables& tables,
                                       std::span<const std::pair<EntityId, EntityId>> context,
                                       ModelKind kind);

// One synchronous update: every output row is computed from the layer-l
// snapshot only; empty-context rows copy through. Attention vectors are
// recorded into *ent_attn / *rel_attn when non-null.
EmbeddingTables aggregate_step(const EmbeddingTables& tables, const ContextIndex& index,
                               ModelKind kind, ContextVariant variant,
                               std::vector<std::vector<double>>* ent_attn = nullptr,
                               std::vector<std::vector<double>>* rel_attn = nullptr,
                               int threads = 1);

AggregationState aggregate(const EmbeddingTables& base, const ContextIndex& index, ModelKind kind,
                           const AggregationConfig& config, int threads = 1);

// Dense gradients matching the embedding tables.
struct Grads {
  std::vector<double> entity;
  std::vector<double> relation;

  static Grads zeros_like(const EmbeddingTables& t) {
    Grads g;
    g.entity.assign(t.entity.size(), 0.0);
    g.relation.assign(t.relation.size(), 0.0);
    return g;
  }
  void add(const Grads& other);
};

// Adjoint of one aggregate_step: accumulates d loss / d layer-l tables into
// g_in given d loss / d layer-(l+1) tables in g_out. attn vectors must be the
// ones recorded during the matching forward step. Serial by construction
// (scattered row writes), which also fixes the reduction order.
void aggregate_step_backward(const EmbeddingTables& layer, const ContextIndex& index,
                             ModelKind kind, ContextVariant variant,
                             const std::vector<std::vector<double>>& ent_attn,
                             const std::vector<std::vector<double>>& rel_attn, const Grads& g_out,
                             Grads& g_in);

// Propagates per-layer injected gradients down to the base tables.
// inject[l] holds contributions that enter at layer l (inject.size() must be
// num_steps()+1); returns d loss / d layer-0 tables.
Grads aggregate_backward(const AggregationState& state, const ContextIndex& index, ModelKind kind,
                         ContextVariant variant, std::vector<Grads>& inject);

}  // namespace ctxkge
