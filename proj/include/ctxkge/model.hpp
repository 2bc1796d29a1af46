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
#include <span>
#include <string>
#include <vector>

namespace ctxkge {

enum class ModelKind { TransE, DistMult };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);  // "transe" | "distmult"

// Dense entity and relation embedding matrices, row-major, 64-bit floats.
// Relation rows cover the augmented relation set (originals then inverses).
struct EmbeddingTables {
  int num_entities = 0;
  int num_relations = 0;  // augmented count (2 * originals)
  int dim = 0;
  std::vector<double> entity;
  std::vector<double> relation;

  std::span<double> entity_row(int i) {
    return {entity.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
  }
  std::span<const double> entity_row(int i) const {
    return {entity.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
  }
  std::span<double> relation_row(int i) {
    return {relation.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
  }
  std::span<const double> relation_row(int i) const {
    return {relation.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
  }
  bool same_shape(const EmbeddingTables& other) const {
    return num_entities == other.num_entities && num_relations == other.num_relations &&
           dim == other.dim;
  }
  std::size_t parameter_count() const {
    return static_cast<std::size_t>(num_entities + num_relations) * dim;
  }
};

// Entries i.i.d. uniform on [-6/sqrt(d), +6/sqrt(d)], deterministic per seed.
// d == 0 is rejected with std::invalid_argument.
EmbeddingTables init_embeddings(int num_entities, int num_relations_augmented, int d,
                                std::uint64_t seed);

using Vec = std::span<const double>;

// Scoring functions: TransE -||e_h + e_r - e_t||_2, DistMult sum_i h*r*t.
double psi_transe(Vec e_h, Vec e_r, Vec e_t);
double psi_distmult(Vec e_h, Vec e_r, Vec e_t);
double psi(ModelKind kind, Vec e_h, Vec e_r, Vec e_t);

// Triplet encoder / score reducer decomposition; reduce(encode(.)) == psi(.).
void encode_triple(ModelKind kind, Vec e_h, Vec e_r, Vec e_t, std::span<double> out);
double reduce_score(ModelKind kind, Vec v);

// Parameter-free context encoders.
// TransE: phi_ent(r, t) = t - r, phi_rel(h, t) = t - h.
// DistMult: elementwise products.
void phi_ent(ModelKind kind, Vec e_r, Vec e_t, std::span<double> out);
void phi_rel(ModelKind kind, Vec e_h, Vec e_t, std::span<double> out);

// Gradient kernels, all accumulating (+=) weighted adjoints.
// psi_backward adds w * d psi / d {h,r,t} to the three accumulators.
// The TransE norm is nonsmooth at 0; a zero subgradient is used there.
void psi_backward(ModelKind kind, Vec e_h, Vec e_r, Vec e_t, double w, std::span<double> g_h,
                  std::span<double> g_r, std::span<double> g_t);
// Adjoint of phi given upstream gradient g_out.
void phi_ent_backward(ModelKind kind, Vec e_r, Vec e_t, Vec g_out, std::span<double> g_r,
                      std::span<double> g_t);
void phi_rel_backward(ModelKind kind, Vec e_h, Vec e_t, Vec g_out, std::span<double> g_h,
                      std::span<double> g_t);

}  // namespace ctxkge
