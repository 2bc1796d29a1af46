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

#include "ctxkge/context_index.hpp"
#include "ctxkge/dataset.hpp"
#include "ctxkge/model.hpp"

namespace ctxkge {

// Space/work summary for a configuration. The parameter count is always
// (|E| + 2|R|) * d — the two embedding tables are the only trainable state,
// independent of L.
struct EfficiencyReport {
  std::uint64_t trainable_parameters = 0;
  std::uint64_t aggregation_work = 0;  // context entries touched per pass * L
  ModelKind kind = ModelKind::DistMult;
  int dim = 0;
  int num_iterations = 0;
};

EfficiencyReport make_report(const Dataset& dataset, const ContextIndex& index, ModelKind kind,
                             int dim, int num_iterations);

}  // namespace ctxkge
