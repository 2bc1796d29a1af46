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
#include "ctxkge/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ctxkge/rng.hpp"

namespace ctxkge {
namespace {

bool aggregates_entities(ContextVariant v) {
  return v == ContextVariant::Both || v == ContextVariant::EntityOnly;
}
bool aggregates_relations(ContextVariant v) {
  return v == ContextVariant::Both || v == ContextVariant::RelationOnly;
}

double logsumexp(std::span<const double> xs) {
  double mx = xs[0];
  for (double x : xs) mx = std::max(mx, x);
  double s = 0.0;
  for (double x : xs) s += std::exp(x - mx);
  return mx + std::log(s);
}

std::span<double> grad_entity_row(Grads& g, int dim, int i) {
  return {g.entity.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
}
std::span<double> grad_relation_row(Grads& g, int dim, int i) {
  return {g.relation.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
}

// --- masked-target chains ------------------------------------------------
//
// tilde^(l+1) = tilde^(l) + sum_{k != skip} attn_k * phi(context_k at layer l)
// with attention recomputed from tilde^(l) against the global layer-l rows.

MaskedChain build_head_chain(const Triple& target, const AggregationState& state,
                             const ContextIndex& index, ModelKind kind, ContextVariant variant) {
  MaskedChain chain;
  if (!aggregates_entities(variant) || state.num_steps() == 0) return chain;
  const auto& ctx = index.entity_context[target.head];
  const auto it = std::find(ctx.begin(), ctx.end(), std::pair{target.relation, target.tail});
  if (it == ctx.end()) return chain;  // e.g. dropped by a context cap
  chain.active = true;
  chain.skip = it - ctx.begin();

  const int d = state.base().dim;
  const int steps = state.num_steps();
  chain.layers.reserve(steps + 1);
  const auto base_row = state.base().entity_row(target.head);
  chain.layers.emplace_back(base_row.begin(), base_row.end());
  for (int l = 0; l < steps; ++l) {
    const EmbeddingTables& layer = state.layers[l];
    const auto& cur = chain.layers.back();
    std::vector<double> scores;
    scores.reserve(ctx.size());
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      if (static_cast<std::ptrdiff_t>(k) == chain.skip) continue;
      scores.push_back(
          psi(kind, cur, layer.relation_row(ctx[k].first), layer.entity_row(ctx[k].second)));
    }
    std::vector<double> next = cur;
    std::vector<double> attn;
    if (!scores.empty()) {
      const double lse = logsumexp(scores);
      attn.resize(scores.size());
      for (std::size_t j = 0; j < scores.size(); ++j) attn[j] = std::exp(scores[j] - lse);
      std::vector<double> msg(d);
      std::size_t j = 0;
      for (std::size_t k = 0; k < ctx.size(); ++k) {
        if (static_cast<std::ptrdiff_t>(k) == chain.skip) continue;
        phi_ent(kind, layer.relation_row(ctx[k].first), layer.entity_row(ctx[k].second), msg);
        for (int i = 0; i < d; ++i) next[i] += attn[j] * msg[i];
        ++j;
      }
    }
    chain.attn.push_back(std::move(attn));
    chain.layers.push_back(std::move(next));
  }
  return chain;
}

MaskedChain build_rel_chain(const Triple& target, const AggregationState& state,
                            const ContextIndex& index, ModelKind kind, ContextVariant variant) {
  MaskedChain chain;
  if (!aggregates_relations(variant) || state.num_steps() == 0) return chain;
  const auto& ctx = index.relation_context[target.relation];
  const auto it = std::find(ctx.begin(), ctx.end(), std::pair{target.head, target.tail});
  if (it == ctx.end()) return chain;
  chain.active = true;
  chain.skip = it - ctx.begin();

  const int d = state.base().dim;
  const int steps = state.num_steps();
  const auto base_row = state.base().relation_row(target.relation);
  chain.layers.emplace_back(base_row.begin(), base_row.end());
  for (int l = 0; l < steps; ++l) {
    const EmbeddingTables& layer = state.layers[l];
    const auto& cur = chain.layers.back();
    std::vector<double> scores;
    scores.reserve(ctx.size());
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      if (static_cast<std::ptrdiff_t>(k) == chain.skip) continue;
      scores.push_back(
          psi(kind, layer.entity_row(ctx[k].first), cur, layer.entity_row(ctx[k].second)));
    }
    std::vector<double> next = cur;
    std::vector<double> attn;
    if (!scores.empty()) {
      const double lse = logsumexp(scores);
      attn.resize(scores.size());
      for (std::size_t j = 0; j < scores.size(); ++j) attn[j] = std::exp(scores[j] - lse);
      std::vector<double> msg(d);
      std::size_t j = 0;
      for (std::size_t k = 0; k < ctx.size(); ++k) {
        if (static_cast<std::ptrdiff_t>(k) == chain.skip) continue;
        phi_rel(kind, layer.entity_row(ctx[k].first), layer.entity_row(ctx[k].second), msg);
        for (int i = 0; i < d; ++i) next[i] += attn[j] * msg[i];
        ++j;
      }
    }
    chain.attn.push_back(std::move(attn));
    chain.layers.push_back(std::move(next));
  }
  return chain;
}

// Walks a head chain's gradient from the top layer down to the base row,
// scattering side contributions into the per-layer inject accumulators.
void head_chain_backward(const Triple& target, const MaskedChain& chain,
                         const AggregationState& state, const ContextIndex& index, ModelKind kind,
                         std::vector<double> g, std::vector<Grads>& inject) {
  const auto& ctx = index.entity_context[target.head];
  const int d = state.base().dim;
  for (int l = state.num_steps() - 1; l >= 0; --l) {
    const EmbeddingTables& layer = state.layers[l];
    const auto& attn = chain.attn[l];
    if (attn.empty()) continue;  // copy-through layer
    const auto& cur = chain.layers[l];
    std::vector<double> g_cur = g;  // identity path
    std::vector<double> msg(d), dattn(attn.size());
    double dot = 0.0;
    std::size_t j = 0;
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      if (static_cast<std::ptrdiff_t>(k) == chain.skip) continue;
      const auto e_r = layer.relation_row(ctx[k].first);
      const auto e_t = layer.entity_row(ctx[k].second);
      phi_ent(kind, e_r, e_t, msg);
      double dk = 0.0;
      for (int i = 0; i < d; ++i) dk += g[i] * msg[i];
      dattn[j] = dk;
      dot += attn[j] * dk;
      std::vector<double> gm(d);
      for (int i = 0; i < d; ++i) gm[i] = attn[j] * g[i];
      phi_ent_backward(kind, e_r, e_t, gm, grad_relation_row(inject[l], d, ctx[k].first),
                       grad_entity_row(inject[l], d, ctx[k].second));
      ++j;
    }
    j = 0;
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      if (static_cast<std::ptrdiff_t>(k) == chain.skip) continue;
      const double ds = attn[j] * (dattn[j] - dot);
      if (ds != 0.0) {
        psi_backward(kind, cur, layer.relation_row(ctx[k].first),
                     layer.entity_row(ctx[k].second), ds, g_cur,
                     grad_relation_row(inject[l], d, ctx[k].first),
                     grad_entity_row(inject[l], d, ctx[k].second));
      }
      ++j;
    }
    g = std::move(g_cur);
  }
  auto base_g = grad_entity_row(inject[0], d, target.head);
  for (int i = 0; i < d; ++i) base_g[i] += g[i];
}

void rel_chain_backward(const Triple& target, const MaskedChain& chain,
                        const AggregationState& state, const ContextIndex& index, ModelKind kind,
                        std::vector<double> g, std::vector<Grads>& inject) {
  const auto& ctx = index.relation_context[target.relation];
  const int d = state.base().dim;
  for (int l = state.num_steps() - 1; l >= 0; --l) {
    const EmbeddingTables& layer = state.layers[l];
    const auto& attn = chain.attn[l];
    if (attn.empty()) continue;
    const auto& cur = chain.layers[l];
    std::vector<double> g_cur = g;
    std::vector<double> msg(d), dattn(attn.size());
    double dot = 0.0;
    std::size_t j = 0;
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      if (static_cast<std::ptrdiff_t>(k) == chain.skip) continue;
      const auto e_h = layer.entity_row(ctx[k].first);
      const auto e_t = layer.entity_row(ctx[k].second);
      phi_rel(kind, e_h, e_t, msg);
      double dk = 0.0;
      for (int i = 0; i < d; ++i) dk += g[i] * msg[i];
      dattn[j] = dk;
      dot += attn[j] * dk;
      std::vector<double> gm(d);
      for (int i = 0; i < d; ++i) gm[i] = attn[j] * g[i];
      phi_rel_backward(kind, e_h, e_t, gm, grad_entity_row(inject[l], d, ctx[k].first),
                       grad_entity_row(inject[l], d, ctx[k].second));
      ++j;
    }
    j = 0;
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      if (static_cast<std::ptrdiff_t>(k) == chain.skip) continue;
      const double ds = attn[j] * (dattn[j] - dot);
      if (ds != 0.0) {
        psi_backward(kind, layer.entity_row(ctx[k].first), cur, layer.entity_row(ctx[k].second),
                     ds, grad_entity_row(inject[l], d, ctx[k].first), g_cur,
                     grad_entity_row(inject[l], d, ctx[k].second));
      }
      ++j;
    }
    g = std::move(g_cur);
  }
  auto base_g = grad_relation_row(inject[0], d, target.relation);
  for (int i = 0; i < d; ++i) base_g[i] += g[i];
}

}  // namespace

std::vector<double> relation_logprobs(EntityId h, EntityId t, const EmbeddingTables& final_tables,
                                      ModelKind kind, int num_relations) {
  std::vector<double> scores(num_relations);
  const auto e_h = final_tables.entity_row(h);
  const auto e_t = final_tables.entity_row(t);
  for (int r = 0; r < num_relations; ++r) {
    scores[r] = psi(kind, e_h, final_tables.relation_row(r), e_t);
  }
  const double lse = logsumexp(scores);
  for (double& s : scores) s -= lse;
  return scores;
}

BatchRecord batch_loss(std::span<const Triple> batch, const AggregationState& state,
                       const ContextIndex& index, const TrainConfig& config, int num_relations) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  const EmbeddingTables& final_tables = state.final_tables();
  BatchRecord rec;
  rec.triples.assign(batch.begin(), batch.end());
  rec.probs.resize(batch.size());
  if (config.mask_target_edge) {
    rec.head_chains.resize(batch.size());
    rec.rel_chains.resize(batch.size());
  }

  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Triple& t = batch[i];
    std::vector<double> scores(num_relations);
    if (!config.mask_target_edge) {
      const auto e_h = final_tables.entity_row(t.head);
      const auto e_t = final_tables.entity_row(t.tail);
      for (int r = 0; r < num_relations; ++r) {
        scores[r] = psi(config.kind, e_h, final_tables.relation_row(r), e_t);
      }
    } else {
      rec.head_chains[i] = build_head_chain(t, state, index, config.kind, config.variant);
      rec.rel_chains[i] = build_rel_chain(t, state, index, config.kind, config.variant);
      const auto head_row = rec.head_chains[i].active
                                ? Vec(rec.head_chains[i].layers.back())
                                : Vec(final_tables.entity_row(t.head));
      const auto e_t = final_tables.entity_row(t.tail);
      for (int r = 0; r < num_relations; ++r) {
        const auto rel_row = (r == t.relation && rec.rel_chains[i].active)
                                 ? Vec(rec.rel_chains[i].layers.back())
                                 : Vec(final_tables.relation_row(r));
        scores[r] = psi(config.kind, head_row, rel_row, e_t);
      }
    }
    const double lse = logsumexp(scores);
    rec.data_loss -= scores[t.relation] - lse;
    auto& p = rec.probs[i];
    p.resize(num_relations);
    for (int r = 0; r < num_relations; ++r) p[r] = std::exp(scores[r] - lse);
  }
  rec.data_loss /= static_cast<double>(batch.size());

  if (config.l2_coeff != 0.0) {
    const EmbeddingTables& base = state.base();
    double sq = 0.0;
    for (double v : base.entity) sq += v * v;
    for (double v : base.relation) sq += v * v;
    rec.l2_loss = config.l2_coeff * sq;
  }
  rec.loss = rec.data_loss + rec.l2_loss;
  return rec;
}

Grads backward(const BatchRecord& record, const AggregationState& state,
               const ContextIndex& index, const TrainConfig& config, int num_relations) {
  const EmbeddingTables& final_tables = state.final_tables();
  const int d = final_tables.dim;
  const int steps = state.num_steps();
  std::vector<Grads> inject(steps + 1);
  for (int l = 0; l <= steps; ++l) inject[l] = Grads::zeros_like(state.layers[l]);

  const double inv_b = 1.0 / static_cast<double>(record.triples.size());
  for (std::size_t i = 0; i < record.triples.size(); ++i) {
    const Triple& t = record.triples[i];
    const auto& p = record.probs[i];
    const bool masked_head = config.mask_target_edge && record.head_chains[i].active;
    const bool masked_rel = config.mask_target_edge && record.rel_chains[i].active;
    const auto head_row =
        masked_head ? Vec(record.head_chains[i].layers.back()) : Vec(final_tables.entity_row(t.head));
    const auto e_t = final_tables.entity_row(t.tail);
    std::vector<double> g_head(d, 0.0), g_rel(d, 0.0);
    auto g_head_global = grad_entity_row(inject[steps], d, t.head);
    auto g_tail_global = grad_entity_row(inject[steps], d, t.tail);

    for (int r = 0; r < num_relations; ++r) {
      // d(-log p)/d score_r = p_r - 1[r == r_true], averaged over the batch.
      const double c = (p[r] - (r == t.relation ? 1.0 : 0.0)) * inv_b;
      if (c == 0.0) continue;
      const bool use_rel_chain = masked_rel && r == t.relation;
      const auto rel_row =
          use_rel_chain ? Vec(record.rel_chains[i].layers.back()) : Vec(final_tables.relation_row(r));
      psi_backward(config.kind, head_row, rel_row, e_t, c,
                   masked_head ? std::span<double>(g_head) : g_head_global,
                   use_rel_chain ? std::span<double>(g_rel)
                                 : grad_relation_row(inject[steps], d, r),
                   g_tail_global);
    }
    if (masked_head) {
      head_chain_backward(t, record.head_chains[i], state, index, config.kind, std::move(g_head),
                          inject);
    }
    if (masked_rel) {
      rel_chain_backward(t, record.rel_chains[i], state, index, config.kind, std::move(g_rel),
                         inject);
    }
  }

  Grads g = aggregate_backward(state, index, config.kind, config.variant, inject);
  if (config.l2_coeff != 0.0) {
    const EmbeddingTables& base = state.base();
    const double c = 2.0 * config.l2_coeff;
    for (std::size_t i = 0; i < g.entity.size(); ++i) g.entity[i] += c * base.entity[i];
    for (std::size_t i = 0; i < g.relation.size(); ++i) g.relation[i] += c * base.relation[i];
  }
  return g;
}

void adam_update(EmbeddingTables& tables, const Grads& grads, AdamState& opt, double lr) {
  if (grads.entity.size() != tables.entity.size() ||
      grads.relation.size() != tables.relation.size()) {
    throw std::invalid_argument("gradient / parameter shape mismatch");
  }
  if (opt.m_entity.empty()) {
    opt.m_entity.assign(tables.entity.size(), 0.0);
    opt.v_entity.assign(tables.entity.size(), 0.0);
    opt.m_relation.assign(tables.relation.size(), 0.0);
    opt.v_relation.assign(tables.relation.size(), 0.0);
  }
  ++opt.step;
  const double bc1 = 1.0 - std::pow(opt.beta1, opt.step);
  const double bc2 = 1.0 - std::pow(opt.beta2, opt.step);
  auto update = [&](std::vector<double>& param, const std::vector<double>& g,
                    std::vector<double>& m, std::vector<double>& v) {
    for (std::size_t i = 0; i < param.size(); ++i) {
      m[i] = opt.beta1 * m[i] + (1.0 - opt.beta1) * g[i];
      v[i] = opt.beta2 * v[i] + (1.0 - opt.beta2) * g[i] * g[i];
      param[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + opt.eps);
    }
  };
  update(tables.entity, grads.entity, opt.m_entity, opt.v_entity);
  update(tables.relation, grads.relation, opt.m_relation, opt.v_relation);
}

FitResult fit(const Dataset& dataset, const TrainConfig& config, const EpochCallback& callback) {
  if (dataset.valid.empty()) throw std::invalid_argument("fit requires a non-empty valid split");
  const ContextIndex index =
      build_context_index(dataset, config.context_cap, config.cap_seed);
  const AggregationConfig agg{config.num_iterations, config.variant};
  const int num_relations = dataset.num_relations();

  FitResult result;
  result.tables = init_embeddings(dataset.num_entities(), dataset.num_relations_augmented(),
                                  config.dim, config.seed);
  EmbeddingTables tables = result.tables;
  AdamState opt;
  result.best_valid_mrr = -1.0;
  int since_improved = 0;

  std::vector<std::size_t> order(dataset.train.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    auto rng = substream(config.seed, "shuffle", static_cast<std::uint64_t>(epoch));
    std::shuffle(order.begin(), order.end(), rng);

    double loss_sum = 0.0;
    std::size_t num_batches = 0;
    std::vector<Triple> batch;
    for (std::size_t off = 0; off < order.size(); off += config.batch_size) {
      batch.clear();
      const std::size_t end = std::min(order.size(), off + config.batch_size);
      for (std::size_t i = off; i < end; ++i) batch.push_back(dataset.train[order[i]]);
      // Aggregation is rebuilt from the current parameters every step so the
      // gradients see the live computation graph.
      const AggregationState state = aggregate(tables, index, config.kind, agg, config.threads);
      const BatchRecord rec = batch_loss(batch, state, index, config, num_relations);
      const Grads grads = backward(rec, state, index, config, num_relations);
      adam_update(tables, grads, opt, config.learning_rate);
      loss_sum += rec.loss;
      ++num_batches;
    }

    const AggregationState state = aggregate(tables, index, config.kind, agg, config.threads);
    EpochRecord er;
    er.epoch = epoch;
    er.train_loss = num_batches ? loss_sum / num_batches : 0.0;
    er.valid = evaluate(dataset.valid, state.final_tables(), config.kind, num_relations,
                        config.threads);
    er.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const bool improved = er.valid.mrr > result.best_valid_mrr;
    if (improved) {
      result.best_valid_mrr = er.valid.mrr;
      result.best_epoch = epoch;
      result.tables = tables;
      since_improved = 0;
    } else {
      ++since_improved;
    }
    result.log.push_back(er);
    if (callback) callback(er, result.tables, improved);
    if (since_improved >= config.patience) break;
  }
  if (result.best_valid_mrr < 0.0) result.best_valid_mrr = 0.0;
  return result;
}

}  // namespace ctxkge
