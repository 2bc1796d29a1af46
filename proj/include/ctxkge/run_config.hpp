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

#include "ctxkge/trainer.hpp"

namespace ctxkge {

// Resolved experiment configuration. Serialized as a flat key=value file
// (keys match the CLI long-flag names) so a written config can be fed back
// through --config; flags override file values, file values override
// defaults.
struct RunConfig {
  std::string dataset_dir;
  ModelKind model = ModelKind::DistMult;
  ContextVariant context = ContextVariant::Both;
  int dim = 256;
  double lr = 5e-3;
  double l2 = 1e-7;
  int batch_size = 512;
  int iterations = 4;
  int epochs = 20;
  int patience = 3;
  std::uint64_t seed = 0;
  int threads = 1;
  int cap = -1;  // -1 = no context cap
  std::uint64_t cap_seed = 0;
  bool mask_target_edge = false;
  std::string out = "out";

  TrainConfig to_train_config() const;
  std::string to_kv() const;
  static RunConfig from_kv(const std::string& text);

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

}  // namespace ctxkge
