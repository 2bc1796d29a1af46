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
#include "ctxkge/run_config.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ctxkge {
namespace {

// Shortest round-trippable decimal form.
std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back;
  for (int prec = 1; prec < 17; ++prec) {
    char probe[64];
    std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
    std::sscanf(probe, "%lf", &back);
    if (back == v) return probe;
  }
  return buf;
}

}  // namespace

TrainConfig RunConfig::to_train_config() const {
  TrainConfig t;
  t.kind = model;
  t.learning_rate = lr;
  t.l2_coeff = l2;
  t.batch_size = batch_size;
  t.dim = dim;
  t.num_iterations = iterations;
  t.max_epochs = epochs;
  t.patience = patience;
  t.seed = seed;
  t.variant = context;
  t.mask_target_edge = mask_target_edge;
  if (cap > 0) t.context_cap = cap;
  t.cap_seed = cap_seed;
  t.threads = threads;
  return t;
}

std::string RunConfig::to_kv() const {
  std::ostringstream out_s;
  out_s << "dataset-dir=" << dataset_dir << '\n'
        << "model=" << to_string(model) << '\n'
        << "context=" << to_string(context) << '\n'
        << "dim=" << dim << '\n'
        << "lr=" << fmt_double(lr) << '\n'
        << "l2=" << fmt_double(l2) << '\n'
        << "batch-size=" << batch_size << '\n'
        << "iterations=" << iterations << '\n'
        << "epochs=" << epochs << '\n'
        << "patience=" << patience << '\n'
        << "seed=" << seed << '\n'
        << "threads=" << threads << '\n'
        << "cap=" << cap << '\n'
        << "cap-seed=" << cap_seed << '\n'
        << "mask-target-edge=" << (mask_target_edge ? "true" : "false") << '\n'
        << "out=" << out << '\n';
  return out_s.str();
}

RunConfig RunConfig::from_kv(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    if (key == "dataset-dir") c.dataset_dir = val;
    else if (key == "model") c.model = model_kind_from_string(val);
    else if (key == "context") c.context = variant_from_string(val);
    else if (key == "dim") c.dim = std::stoi(val);
    else if (key == "lr") c.lr = std::stod(val);
    else if (key == "l2") c.l2 = std::stod(val);
    else if (key == "batch-size") c.batch_size = std::stoi(val);
    else if (key == "iterations") c.iterations = std::stoi(val);
    else if (key == "epochs") c.epochs = std::stoi(val);
    else if (key == "patience") c.patience = std::stoi(val);
    else if (key == "seed") c.seed = std::stoull(val);
    else if (key == "threads") c.threads = std::stoi(val);
    else if (key == "cap") c.cap = std::stoi(val);
    else if (key == "cap-seed") c.cap_seed = std::stoull(val);
    else if (key == "mask-target-edge") c.mask_target_edge = (val == "true" || val == "1");
    else if (key == "out") c.out = val;
    else throw std::runtime_error("config line " + std::to_string(lineno) + ": unknown key " + key);
  }
  return c;
}

}  // namespace ctxkge
