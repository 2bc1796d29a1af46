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
#include "ctxkge/dataset.hpp"

#include <fstream>
#include <stdexcept>
#include <string_view>

namespace ctxkge {
namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

EntityId intern_entity(Dataset& ds, const std::string& name) {
  auto [it, inserted] = ds.entity_ids.try_emplace(name, static_cast<EntityId>(ds.entity_names.size()));
  if (inserted) ds.entity_names.push_back(name);
  return it->second;
}

RelationId intern_relation(Dataset& ds, const std::string& name) {
  auto [it, inserted] = ds.relation_ids.try_emplace(name, static_cast<RelationId>(ds.relation_names.size()));
  if (inserted) ds.relation_names.push_back(name);
  return it->second;
}

std::vector<Triple> encode(Dataset& ds, const std::vector<RawTriple>& raw) {
  std::vector<Triple> out;
  out.reserve(raw.size());
  for (const auto& t : raw) {
    const EntityId h = intern_entity(ds, t.head);
    const RelationId r = intern_relation(ds, t.relation);
    const EntityId tl = intern_entity(ds, t.tail);
    out.push_back({h, r, tl});
  }
  return out;
}

}  // namespace

std::vector<RawTriple> load_split(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open triple file: " + path);
  std::vector<RawTriple> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    const auto tab3 = tab2 == std::string::npos ? std::string::npos : line.find('\t', tab2 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos || tab3 != std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 3 tab-separated fields");
    }
    RawTriple t;
    t.head = std::string(trim(std::string_view(line).substr(0, tab1)));
    t.relation = std::string(trim(std::string_view(line).substr(tab1 + 1, tab2 - tab1 - 1)));
    t.tail = std::string(trim(std::string_view(line).substr(tab2 + 1)));
    out.push_back(std::move(t));
  }
  return out;
}

Dataset build_dataset(const std::vector<RawTriple>& train,
                      const std::vector<RawTriple>& valid,
                      const std::vector<RawTriple>& test) {
  Dataset ds;
  // Vocabulary over the union of all splits, first occurrence assigns ids.
  ds.train = encode(ds, train);
  ds.valid = encode(ds, valid);
  ds.test = encode(ds, test);

  const RelationId nr = ds.num_relations();
  ds.train_augmented = ds.train;
  ds.train_augmented.reserve(2 * ds.train.size());
  for (const Triple& t : ds.train) {
    ds.train_augmented.push_back({t.tail, static_cast<RelationId>(t.relation + nr), t.head});
  }
  return ds;
}

DatasetStats compute_stats(const Dataset& dataset) {
  DatasetStats s;
  s.num_entities = dataset.num_entities();
  s.num_relations = dataset.num_relations();
  s.num_train = static_cast<std::int64_t>(dataset.train.size());
  s.num_valid = static_cast<std::int64_t>(dataset.valid.size());
  s.num_test = static_cast<std::int64_t>(dataset.test.size());
  const double aug = static_cast<double>(dataset.train_augmented.size());
  if (s.num_entities > 0) s.avg_entity_context = aug / s.num_entities;
  if (s.num_relations > 0) s.avg_relation_context = aug / (2.0 * s.num_relations);
  return s;
}

}  // namespace ctxkge
