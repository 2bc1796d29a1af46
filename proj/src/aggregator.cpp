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
#include "ctxkge/aggregator.hpp"

#include <cmath>
#include <stdexcept>

#include "ctxkge/parallel.hpp"

namespace ctxkge {
namespace {

void softmax_inplace(std::vector<double>& scores) {
  double mx = scores[0];
  for (double s : scores) mx = std::max(mx, s);
  double sum = 0.0;
  for (double& s : scores) {
    s = std::exp(s - mx);
    sum += s;
  }
  for (double& s : scores) s /= sum;
}

bool aggregates_entities(ContextVariant v) {
  return v == ContextVariant::Both || v == ContextVariant::EntityOnly;
}
bool aggregates_relations(ContextVariant v) {
  return v == ContextVariant::Both || v == ContextVariant::RelationOnly;
}

}  // namespace

std::string to_string(ContextVariant v) {
  switch (v) {
    case ContextVariant::Both: return "both";
    case ContextVariant::EntityOnly: return "ent";
    case ContextVariant::RelationOnly: return "rel";
    case ContextVariant::None: return "none";
  }
  return "both";
}

ContextVariant variant_from_string(const std::string& name) {
  if (name == "both") return ContextVariant::Both;
  if (name == "ent") return ContextVariant::EntityOnly;
  if (name == "rel") return ContextVariant::RelationOnly;
  if (name == "none") return ContextVariant::None;
  throw std::invalid_argument("unknown context variant: " + name);
}

void Grads::add(const Grads& other) {
  for (std::size_t i = 0; i < entity.size(); ++i) entity[i] += other.entity[i];
  for (std::size_t i = 0; i < relation.size(); ++i) relation[i] += other.relation[i];
}

std::vector<double> attention_entity(EntityId h, const EmbeddingTables& tables,
                                     std::span<const std::pair<RelationId, EntityId>> context,
                                     ModelKind kind) {
  if (context.empty()) throw std::invalid_argument("attention over empty entity context");
  const auto e_h = tables.entity_row(h);
  std::vector<double> w(context.size());
  for (std::size_t k = 0; k < context.size(); ++k) {
    w[k] = psi(kind, e_h, tables.relation_row(context[k].first),
               tables.entity_row(context[k].second));
  }
  softmax_inplace(w);
  return w;
}

std::vector<double> attention_relation(RelationId r, const EmbeddingTables& tables,
                                       std::span<const std::pair<EntityId, EntityId>> context,
                                       ModelKind kind) {
  if (context.empty()) throw std::invalid_argument("attention over empty relation context");
  const auto e_r = tables.relation_row(r);
  std::vector<double> w(context.size());
  for (std::size_t k = 0; k < context.size(); ++k) {
    w[k] = psi(kind, tables.entity_row(context[k].first), e_r,
               tables.entity_row(context[k].second));
  }
  softmax_inplace(w);
  return w;
}

EmbeddingTables aggregate_step(const EmbeddingTables& tables, const ContextIndex& index,
                               ModelKind kind, ContextVariant variant,
                               std::vector<std::vector<double>>* ent_attn,
                               std::vector<std::vector<double>>* rel_attn, int threads) {
  EmbeddingTables out = tables;  // copy-through default
  const int d = tables.dim;
  if (ent_attn) ent_attn->assign(tables.num_entities, {});
  if (rel_attn) rel_attn->assign(tables.num_relations, {});

  if (aggregates_entities(variant)) {
    parallel_for(static_cast<std::size_t>(tables.num_entities), threads, [&](std::size_t h) {
      const auto& ctx = index.entity_context[h];
      if (ctx.empty()) return;
      auto alpha = attention_entity(static_cast<EntityId>(h), tables, ctx, kind);
      auto row = out.entity_row(static_cast<int>(h));
      std::vector<double> msg(d);
      for (std::size_t k = 0; k < ctx.size(); ++k) {
        phi_ent(kind, tables.relation_row(ctx[k].first), tables.entity_row(ctx[k].second), msg);
        for (int i = 0; i < d; ++i) row[i] += alpha[k] * msg[i];
      }
      if (ent_attn) (*ent_attn)[h] = std::move(alpha);
    });
  }
  if (aggregates_relations(variant)) {
    parallel_for(static_cast<std::size_t>(tables.num_relations), threads, [&](std::size_t r) {
      const auto& ctx = index.relation_context[r];
      if (ctx.empty()) return;
      auto beta = attention_relation(static_cast<RelationId>(r), tables, ctx, kind);
      auto row = out.relation_row(static_cast<int>(r));
      std::vector<double> msg(d);
      for (std::size_t k = 0; k < ctx.size(); ++k) {
        phi_rel(kind, tables.entity_row(ctx[k].first), tables.entity_row(ctx[k].second), msg);
        for (int i = 0; i < d; ++i) row[i] += beta[k] * msg[i];
      }
      if (rel_attn) (*rel_attn)[r] = std::move(beta);
    });
  }
  return out;
}

AggregationState aggregate(const EmbeddingTables& base, const ContextIndex& index, ModelKind kind,
                           const AggregationConfig& config, int threads) {
  if (config.num_iterations < 0) throw std::invalid_argument("num_iterations must be >= 0");
  AggregationState state;
  state.layers.push_back(base);
  const int steps = config.variant == ContextVariant::None ? 0 : config.num_iterations;
  for (int l = 0; l < steps; ++l) {
    std::vector<std::vector<double>> ea, ra;
    state.layers.push_back(
        aggregate_step(state.layers.back(), index, kind, config.variant, &ea, &ra, threads));
    state.entity_attention.push_back(std::move(ea));
    state.relation_attention.push_back(std::move(ra));
  }
  return state;
}

void aggregate_step_backward(const EmbeddingTables& layer, const ContextIndex& index,
                             ModelKind kind, ContextVariant variant,
                             const std::vector<std::vector<double>>& ent_attn,
                             const std::vector<std::vector<double>>& rel_attn, const Grads& g_out,
                             Grads& g_in) {
  const int d = layer.dim;
  const auto ent_grad_out = [&](int h) {
    return std::span<const double>(g_out.entity.data() + static_cast<std::size_t>(h) * d,
                                   static_cast<std::size_t>(d));
  };
  const auto ent_grad_in = [&](int h) {
    return std::span<double>(g_in.entity.data() + static_cast<std::size_t>(h) * d,
                             static_cast<std::size_t>(d));
  };
  const auto rel_grad_out = [&](int r) {
    return std::span<const double>(g_out.relation.data() + static_cast<std::size_t>(r) * d,
                                   static_cast<std::size_t>(d));
  };
  const auto rel_grad_in = [&](int r) {
    return std::span<double>(g_in.relation.data() + static_cast<std::size_t>(r) * d,
                             static_cast<std::size_t>(d));
  };

  for (int h = 0; h < layer.num_entities; ++h) {
    const auto g = ent_grad_out(h);
    const auto& ctx = index.entity_context[h];
    // Identity part of e^(l+1) = e^(l) + sum(...).
    auto gh = ent_grad_in(h);
    for (int i = 0; i < d; ++i) gh[i] += g[i];
    if (!aggregates_entities(variant) || ctx.empty()) continue;

    const auto& alpha = ent_attn[h];
    const auto e_h = layer.entity_row(h);
    std::vector<double> msg(d), dalpha(ctx.size());
    double dot_alpha = 0.0;
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      const auto e_r = layer.relation_row(ctx[k].first);
      const auto e_t = layer.entity_row(ctx[k].second);
      phi_ent(kind, e_r, e_t, msg);
      double dk = 0.0;
      for (int i = 0; i < d; ++i) dk += g[i] * msg[i];
      dalpha[k] = dk;
      dot_alpha += alpha[k] * dk;
      // Weighted message adjoint.
      std::vector<double> gm(d);
      for (int i = 0; i < d; ++i) gm[i] = alpha[k] * g[i];
      phi_ent_backward(kind, e_r, e_t, gm, rel_grad_in(ctx[k].first),
                       ent_grad_in(ctx[k].second));
    }
    // Softmax adjoint: ds_k = alpha_k * (dalpha_k - sum_j alpha_j dalpha_j).
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      const double ds = alpha[k] * (dalpha[k] - dot_alpha);
      if (ds == 0.0) continue;
      psi_backward(kind, e_h, layer.relation_row(ctx[k].first), layer.entity_row(ctx[k].second),
                   ds, ent_grad_in(h), rel_grad_in(ctx[k].first), ent_grad_in(ctx[k].second));
    }
  }

  for (int r = 0; r < layer.num_relations; ++r) {
    const auto g = rel_grad_out(r);
    const auto& ctx = index.relation_context[r];
    auto gr = rel_grad_in(r);
    for (int i = 0; i < d; ++i) gr[i] += g[i];
    if (!aggregates_relations(variant) || ctx.empty()) continue;

    const auto& beta = rel_attn[r];
    const auto e_r = layer.relation_row(r);
    std::vector<double> msg(d), dbeta(ctx.size());
    double dot_beta = 0.0;
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      const auto e_h = layer.entity_row(ctx[k].first);
      const auto e_t = layer.entity_row(ctx[k].second);
      phi_rel(kind, e_h, e_t, msg);
      double dk = 0.0;
      for (int i = 0; i < d; ++i) dk += g[i] * msg[i];
      dbeta[k] = dk;
      dot_beta += beta[k] * dk;
      std::vector<double> gm(d);
      for (int i = 0; i < d; ++i) gm[i] = beta[k] * g[i];
      phi_rel_backward(kind, e_h, e_t, gm, ent_grad_in(ctx[k].first),
                       ent_grad_in(ctx[k].second));
    }
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      const double ds = beta[k] * (dbeta[k] - dot_beta);
      if (ds == 0.0) continue;
      psi_backward(kind, layer.entity_row(ctx[k].first), e_r, layer.entity_row(ctx[k].second),
                   ds, ent_grad_in(ctx[k].first), rel_grad_in(r), ent_grad_in(ctx[k].second));
    }
  }
}

Grads aggregate_backward(const AggregationState& state, const ContextIndex& index, ModelKind kind,
                         ContextVariant variant, std::vector<Grads>& inject) {
  const int steps = state.num_steps();
  if (static_cast<int>(inject.size()) != steps + 1) {
    throw std::invalid_argument("inject must have one entry per layer");
  }
  Grads cur = std::move(inject[steps]);
  for (int l = steps - 1; l >= 0; --l) {
    Grads g_in = Grads::zeros_like(state.layers[l]);
    aggregate_step_backward(state.layers[l], index, kind, variant, state.entity_attention[l],
                            state.relation_attention[l], cur, g_in);
    g_in.add(inject[l]);
    cur = std::move(g_in);
  }
  return cur;
}

}  // namespace ctxkge
