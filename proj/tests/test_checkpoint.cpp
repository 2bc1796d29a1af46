#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>

#include "ctxkge/checkpoint.hpp"

using namespace ctxkge;
namespace fs = std::filesystem;

namespace {

Checkpoint sample_checkpoint() {
  Checkpoint c;
  c.kind = ModelKind::TransE;
  c.num_iterations = 3;
  c.variant = ContextVariant::EntityOnly;
  c.tables = init_embeddings(3, 4, 5, 99);
  c.entity_names = {"alpha", "beta", "entity with spaces"};
  c.relation_names = {"r0", "r/1"};
  return c;
}

}  // namespace

TEST_CASE("checkpoint round-trips exactly") {
  const auto path = (fs::temp_directory_path() / "ctxkge_rt.ckpt").string();
  const auto c = sample_checkpoint();
  save_checkpoint(path, c);
  const auto r = load_checkpoint(path);
  CHECK(r.kind == c.kind);
  CHECK(r.num_iterations == c.num_iterations);
  CHECK(r.variant == c.variant);
  CHECK(r.tables.num_entities == c.tables.num_entities);
  CHECK(r.tables.num_relations == c.tables.num_relations);
  CHECK(r.tables.dim == c.tables.dim);
  CHECK(r.tables.entity == c.tables.entity);  // bit-exact doubles
  CHECK(r.tables.relation == c.tables.relation);
  CHECK(r.entity_names == c.entity_names);
  CHECK(r.relation_names == c.relation_names);
  fs::remove(path);
}

TEST_CASE("loading rejects a bad magic") {
  const auto path = (fs::temp_directory_path() / "ctxkge_badmagic.ckpt").string();
  std::ofstream(path, std::ios::binary) << "NOTCK followed by junk";
  CHECK_THROWS_AS(load_checkpoint(path), std::runtime_error);
  fs::remove(path);
}

TEST_CASE("loading rejects a truncated file") {
  const auto path = (fs::temp_directory_path() / "ctxkge_trunc.ckpt").string();
  save_checkpoint(path, sample_checkpoint());
  const auto size = fs::file_size(path);
  fs::resize_file(path, size / 2);
  CHECK_THROWS_AS(load_checkpoint(path), std::runtime_error);
  fs::resize_file(path, 3);  // inside the magic itself
  CHECK_THROWS_AS(load_checkpoint(path), std::runtime_error);
  fs::remove(path);
}

TEST_CASE("loading a missing file throws") {
  CHECK_THROWS_AS(load_checkpoint("/nonexistent/ctxkge.ckpt"), std::runtime_error);
}
