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

#include <string>
#include <vector>

#include "ctxkge/aggregator.hpp"
#include "ctxkge/model.hpp"

namespace ctxkge {

// Binary checkpoint. Layout:
//   magic "LCKE1" (5 bytes)
//   u64 LE: model kind, dim, num entities, num relations (augmented),
//           num iterations, context variant
//   entity matrix then relation matrix, row-major f64 LE
//   entity vocabulary then original-relation vocabulary, each string
//   u64-length-prefixed UTF-8
struct Checkpoint {
  ModelKind kind = ModelKind::DistMult;
  int num_iterations = 0;
  ContextVariant variant = ContextVariant::Both;
  EmbeddingTables tables;
  std::vector<std::string> entity_names;
  std::vector<std::string> relation_names;  // originals only
};

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace ctxkge
