#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>

#include "ctxkge/dataset.hpp"
#include "test_util.hpp"

using namespace ctxkge;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("load_split parses a single line") {
  const auto p = write_temp("ctxkge_single.txt", "A\tr1\tB\n");
  const auto t = load_split(p.string());
  REQUIRE(t.size() == 1);
  CHECK(t[0].head == "A");
  CHECK(t[0].relation == "r1");
  CHECK(t[0].tail == "B");
}

TEST_CASE("load_split on empty file") {
  const auto p = write_temp("ctxkge_empty.txt", "");
  CHECK(load_split(p.string()).empty());
}

TEST_CASE("load_split trims surrounding whitespace and skips blank lines") {
  const auto p = write_temp("ctxkge_ws.txt", " A \tr1\t B \n\n\nC\tr2\tD\n");
  const auto t = load_split(p.string());
  REQUIRE(t.size() == 2);
  CHECK(t[0].head == "A");
  CHECK(t[0].tail == "B");
  CHECK(t[1].head == "C");
}

TEST_CASE("load_split rejects wrong field counts with the line number") {
  const auto p = write_temp("ctxkge_bad.txt", "A\tr1\n");
  CHECK_THROWS_WITH_AS(load_split(p.string()), doctest::Contains(":1:"), std::runtime_error);
  const auto p4 = write_temp("ctxkge_bad4.txt", "A\tr1\tB\nA\tr1\tB\tC\n");
  CHECK_THROWS_WITH_AS(load_split(p4.string()), doctest::Contains(":2:"), std::runtime_error);
}

TEST_CASE("load_split on a missing file") {
  CHECK_THROWS_AS(load_split("/nonexistent/ctxkge.txt"), std::runtime_error);
}

TEST_CASE("build_dataset single-triple augmentation") {
  const auto ds = build_dataset({{"A", "r", "B"}}, {}, {});
  CHECK(ds.num_entities() == 2);
  CHECK(ds.num_relations() == 1);
  REQUIRE(ds.train_augmented.size() == 2);
  CHECK(ds.train_augmented[0] == Triple{0, 0, 1});
  CHECK(ds.train_augmented[1] == Triple{1, 1, 0});
}

TEST_CASE("build_dataset keeps duplicate triples") {
  const auto ds = build_dataset({{"A", "r", "B"}, {"A", "r", "B"}}, {}, {});
  CHECK(ds.train.size() == 2);
  CHECK(ds.train_augmented.size() == 4);
}

TEST_CASE("augmentation pairs every train triple with its inverse") {
  const auto ds = testutil::make_random_kg(11);
  REQUIRE(ds.train_augmented.size() == 2 * ds.train.size());
  const auto n = ds.train.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Triple& t = ds.train[i];
    const Triple& inv = ds.train_augmented[n + i];
    CHECK(inv.head == t.tail);
    CHECK(inv.relation == t.relation + ds.num_relations());
    CHECK(inv.tail == t.head);
  }
}

TEST_CASE("inverse map is an involution") {
  const auto ds = testutil::make_random_kg(3, 6, 3);
  for (RelationId r = 0; r < ds.num_relations_augmented(); ++r) {
    CHECK(ds.inverse_of(ds.inverse_of(r)) == r);
  }
}

TEST_CASE("vocabulary round-trips every encoded triple") {
  std::vector<RawTriple> train = {{"x", "likes", "y"}, {"y", "likes", "z"}, {"z", "hates", "x"}};
  std::vector<RawTriple> valid = {{"x", "hates", "z"}};
  std::vector<RawTriple> test = {{"y", "hates", "x"}};
  const auto ds = build_dataset(train, valid, test);
  auto check_split = [&](const std::vector<Triple>& enc, const std::vector<RawTriple>& raw) {
    REQUIRE(enc.size() == raw.size());
    for (std::size_t i = 0; i < enc.size(); ++i) {
      CHECK(ds.entity_names[enc[i].head] == raw[i].head);
      CHECK(ds.relation_names[enc[i].relation] == raw[i].relation);
      CHECK(ds.entity_names[enc[i].tail] == raw[i].tail);
    }
  };
  check_split(ds.train, train);
  check_split(ds.valid, valid);
  check_split(ds.test, test);
}

TEST_CASE("all split indices are in vocabulary bounds") {
  const auto ds = testutil::make_random_kg(5);
  for (const auto* split : {&ds.train, &ds.valid, &ds.test, &ds.train_augmented}) {
    for (const Triple& t : *split) {
      CHECK(t.head >= 0);
      CHECK(t.head < ds.num_entities());
      CHECK(t.tail < ds.num_entities());
      CHECK(t.relation < (split == &ds.train_augmented ? ds.num_relations_augmented()
                                                       : ds.num_relations()));
    }
  }
}

TEST_CASE("compute_stats on the single-triple dataset") {
  const auto ds = build_dataset({{"A", "r", "B"}}, {}, {});
  const auto s = compute_stats(ds);
  CHECK(s.num_entities == 2);
  CHECK(s.num_relations == 1);
  CHECK(s.num_train == 1);
  CHECK(s.avg_entity_context == doctest::Approx(1.0));
  CHECK(s.avg_relation_context == doctest::Approx(1.0));
}
