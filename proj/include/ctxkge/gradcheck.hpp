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

#include "ctxkge/dataset.hpp"
#include "ctxkge/model.hpp"

namespace ctxkge {

struct GradCheckOptions {
  ModelKind kind = ModelKind::DistMult;
  int num_iterations = 2;
  std::uint64_t seed = 1;
  bool mask_target_edge = false;
  double fd_step = 1e-5;
  // Test hook: flips one analytic gradient entry so the check must fail.
  bool corrupt_gradient = false;
};

// Seeded tiny knowledge graph for gradient validation.
Dataset make_tiny_kg(std::uint64_t seed, int num_entities = 6, int num_relations = 3,
                     int num_triples = 14);

// Compares analytic gradients of the batch loss (all training triples, L2 on)
// against central finite differences over every base parameter. Returns the
// maximum relative error, with relative error |a - f| / max(1, |a|, |f|).
double gradcheck(const GradCheckOptions& options);

}  // namespace ctxkge
