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
#include "ctxkge/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ctxkge {
namespace {

constexpr char kMagic[5] = {'L', 'C', 'K', 'E', '1'};

void write_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

std::uint64_t read_u64(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  if (!in) throw std::runtime_error("truncated checkpoint");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

void write_f64(std::ostream& out, double d) {
  write_u64(out, std::bit_cast<std::uint64_t>(d));
}

double read_f64(std::istream& in) { return std::bit_cast<double>(read_u64(in)); }

void write_string(std::ostream& out, const std::string& s) {
  write_u64(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in) {
  const std::uint64_t n = read_u64(in);
  std::string s(n, '\0');
  in.read(s.data(), static_cast<std::streamsize>(n));
  if (!in) throw std::runtime_error("truncated checkpoint");
  return s;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out.write(kMagic, sizeof(kMagic));
  write_u64(out, static_cast<std::uint64_t>(ckpt.kind));
  write_u64(out, static_cast<std::uint64_t>(ckpt.tables.dim));
  write_u64(out, static_cast<std::uint64_t>(ckpt.tables.num_entities));
  write_u64(out, static_cast<std::uint64_t>(ckpt.tables.num_relations));
  write_u64(out, static_cast<std::uint64_t>(ckpt.num_iterations));
  write_u64(out, static_cast<std::uint64_t>(ckpt.variant));
  for (double v : ckpt.tables.entity) write_f64(out, v);
  for (double v : ckpt.tables.relation) write_f64(out, v);
  for (const auto& s : ckpt.entity_names) write_string(out, s);
  for (const auto& s : ckpt.relation_names) write_string(out, s);
  if (!out) throw std::runtime_error("failed writing checkpoint: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  char magic[5];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("not a checkpoint file (bad magic): " + path);
  }
  Checkpoint c;
  const auto kind = read_u64(in);
  if (kind > 1) throw std::runtime_error("unknown model kind in checkpoint");
  c.kind = static_cast<ModelKind>(kind);
  c.tables.dim = static_cast<int>(read_u64(in));
  c.tables.num_entities = static_cast<int>(read_u64(in));
  c.tables.num_relations = static_cast<int>(read_u64(in));
  c.num_iterations = static_cast<int>(read_u64(in));
  const auto variant = read_u64(in);
  if (variant > 3) throw std::runtime_error("unknown context variant in checkpoint");
  c.variant = static_cast<ContextVariant>(variant);
  if (c.tables.num_relations % 2 != 0) {
    throw std::runtime_error("checkpoint relation count is not augmented (odd)");
  }
  c.tables.entity.resize(static_cast<std::size_t>(c.tables.num_entities) * c.tables.dim);
  c.tables.relation.resize(static_cast<std::size_t>(c.tables.num_relations) * c.tables.dim);
  for (double& v : c.tables.entity) v = read_f64(in);
  for (double& v : c.tables.relation) v = read_f64(in);
  c.entity_names.reserve(c.tables.num_entities);
  for (int i = 0; i < c.tables.num_entities; ++i) c.entity_names.push_back(read_string(in));
  const int originals = c.tables.num_relations / 2;
  c.relation_names.reserve(originals);
  for (int i = 0; i < originals; ++i) c.relation_names.push_back(read_string(in));
  return c;
}

}  // namespace ctxkge
