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
#include "ctxkge/model.hpp"

#include <cmath>
#include <stdexcept>

#include "ctxkge/rng.hpp"

namespace ctxkge {
namespace {

void check_dims(Vec a, Vec b) {
  if (a.size() != b.size()) throw std::invalid_argument("embedding dimension mismatch");
}

void check_dims(Vec a, Vec b, Vec c) {
  check_dims(a, b);
  check_dims(a, c);
}

}  // namespace

std::string to_string(ModelKind kind) {
  return kind == ModelKind::TransE ? "transe" : "distmult";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "transe") return ModelKind::TransE;
  if (name == "distmult") return ModelKind::DistMult;
  throw std::invalid_argument("unknown model kind: " + name);
}

EmbeddingTables init_embeddings(int num_entities, int num_relations_augmented, int d,
                                std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("embedding dimension must be >= 1");
  EmbeddingTables t;
  t.num_entities = num_entities;
  t.num_relations = num_relations_augmented;
  t.dim = d;
  t.entity.resize(static_cast<std::size_t>(num_entities) * d);
  t.relation.resize(static_cast<std::size_t>(num_relations_augmented) * d);
  const double bound = 6.0 / std::sqrt(static_cast<double>(d));
  auto rng = substream(seed, "init");
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (double& v : t.entity) v = dist(rng);
  for (double& v : t.relation) v = dist(rng);
  return t;
}

double psi_transe(Vec e_h, Vec e_r, Vec e_t) {
  check_dims(e_h, e_r, e_t);
  double sq = 0.0;
  for (std::size_t i = 0; i < e_h.size(); ++i) {
    const double u = e_h[i] + e_r[i] - e_t[i];
    sq += u * u;
  }
  return -std::sqrt(sq);
}

double psi_distmult(Vec e_h, Vec e_r, Vec e_t) {
  check_dims(e_h, e_r, e_t);
  double s = 0.0;
  for (std::size_t i = 0; i < e_h.size(); ++i) s += e_h[i] * e_r[i] * e_t[i];
  return s;
}

double psi(ModelKind kind, Vec e_h, Vec e_r, Vec e_t) {
  return kind == ModelKind::TransE ? psi_transe(e_h, e_r, e_t) : psi_distmult(e_h, e_r, e_t);
}

void encode_triple(ModelKind kind, Vec e_h, Vec e_r, Vec e_t, std::span<double> out) {
  check_dims(e_h, e_r, e_t);
  check_dims(e_h, out);
  if (kind == ModelKind::TransE) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = e_t[i] - e_r[i] - e_h[i];
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = e_h[i] * e_r[i] * e_t[i];
  }
}

double reduce_score(ModelKind kind, Vec v) {
  double s = 0.0;
  if (kind == ModelKind::TransE) {
    for (double x : v) s += x * x;
    return -std::sqrt(s);
  }
  for (double x : v) s += x;
  return s;
}

void phi_ent(ModelKind kind, Vec e_r, Vec e_t, std::span<double> out) {
  check_dims(e_r, e_t);
  check_dims(e_r, out);
  if (kind == ModelKind::TransE) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = e_t[i] - e_r[i];
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = e_t[i] * e_r[i];
  }
}

void phi_rel(ModelKind kind, Vec e_h, Vec e_t, std::span<double> out) {
  check_dims(e_h, e_t);
  check_dims(e_h, out);
  if (kind == ModelKind::TransE) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = e_t[i] - e_h[i];
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = e_t[i] * e_h[i];
  }
}

void psi_backward(ModelKind kind, Vec e_h, Vec e_r, Vec e_t, double w, std::span<double> g_h,
                  std::span<double> g_r, std::span<double> g_t) {
  check_dims(e_h, e_r, e_t);
  if (kind == ModelKind::TransE) {
    double sq = 0.0;
    for (std::size_t i = 0; i < e_h.size(); ++i) {
      const double u = e_h[i] + e_r[i] - e_t[i];
      sq += u * u;
    }
    const double n = std::sqrt(sq);
    if (n == 0.0) return;
    const double s = w / n;
    for (std::size_t i = 0; i < e_h.size(); ++i) {
      const double u = e_h[i] + e_r[i] - e_t[i];
      g_h[i] -= s * u;
      g_r[i] -= s * u;
      g_t[i] += s * u;
    }
  } else {
    for (std::size_t i = 0; i < e_h.size(); ++i) {
      g_h[i] += w * e_r[i] * e_t[i];
      g_r[i] += w * e_h[i] * e_t[i];
      g_t[i] += w * e_h[i] * e_r[i];
    }
  }
}

void phi_ent_backward(ModelKind kind, Vec e_r, Vec e_t, Vec g_out, std::span<double> g_r,
                      std::span<double> g_t) {
  if (kind == ModelKind::TransE) {
    for (std::size_t i = 0; i < g_out.size(); ++i) {
      g_t[i] += g_out[i];
      g_r[i] -= g_out[i];
    }
  } else {
    for (std::size_t i = 0; i < g_out.size(); ++i) {
      g_t[i] += g_out[i] * e_r[i];
      g_r[i] += g_out[i] * e_t[i];
    }
  }
}

void phi_rel_backward(ModelKind kind, Vec e_h, Vec e_t, Vec g_out, std::span<double> g_h,
                      std::span<double> g_t) {
  if (kind == ModelKind::TransE) {
    for (std::size_t i = 0; i < g_out.size(); ++i) {
      g_t[i] += g_out[i];
      g_h[i] -= g_out[i];
    }
  } else {
    for (std::size_t i = 0; i < g_out.size(); ++i) {
      g_t[i] += g_out[i] * e_h[i];
      g_h[i] += g_out[i] * e_t[i];
    }
  }
}

}  // namespace ctxkge
