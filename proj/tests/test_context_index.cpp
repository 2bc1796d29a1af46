#include <doctest.h>

#include <stdexcept>

#include "ctxkge/context_index.hpp"
#include "test_util.hpp"

using namespace ctxkge;

TEST_CASE("contexts of the single-triple dataset") {
  const auto ds = build_dataset({{"A", "r", "B"}}, {}, {});
  const auto index = build_context_index(ds);
  REQUIRE(index.entity_context.size() == 2);
  REQUIRE(index.relation_context.size() == 2);
  CHECK(index.entity_context[0] == std::vector<std::pair<RelationId, EntityId>>{{0, 1}});
  CHECK(index.entity_context[1] == std::vector<std::pair<RelationId, EntityId>>{{1, 0}});
  CHECK(index.relation_context[0] == std::vector<std::pair<EntityId, EntityId>>{{0, 1}});
  CHECK(index.relation_context[1] == std::vector<std::pair<EntityId, EntityId>>{{1, 0}});
}

TEST_CASE("conservation: context entry totals equal augmented train size") {
  const auto ds = testutil::make_random_kg(21);
  const auto index = build_context_index(ds);
  std::size_t ent = 0, rel = 0;
  for (const auto& c : index.entity_context) ent += c.size();
  for (const auto& c : index.relation_context) rel += c.size();
  CHECK(ent == ds.train_augmented.size());
  CHECK(rel == ds.train_augmented.size());
}

TEST_CASE("incoming edges are visible through inverse relations") {
  const auto ds = testutil::make_random_kg(22);
  const auto index = build_context_index(ds);
  for (const Triple& t : ds.train) {
    const auto& ctx = index.entity_context[t.tail];
    const std::pair<RelationId, EntityId> want{t.relation + ds.num_relations(), t.head};
    CHECK(std::find(ctx.begin(), ctx.end(), want) != ctx.end());
  }
}

TEST_CASE("repeated triples keep multiset semantics") {
  const auto ds = build_dataset({{"A", "r", "B"}, {"A", "r", "B"}, {"A", "r", "C"}}, {}, {});
  const auto index = build_context_index(ds);
  const auto& ctx = index.entity_context[0];
  CHECK(std::count(ctx.begin(), ctx.end(), std::pair<RelationId, EntityId>{0, 1}) == 2);
}

TEST_CASE("construction is deterministic") {
  const auto ds = testutil::make_random_kg(23);
  const auto a = build_context_index(ds, 3, 99);
  const auto b = build_context_index(ds, 3, 99);
  CHECK(a.entity_context == b.entity_context);
  CHECK(a.relation_context == b.relation_context);
}

TEST_CASE("cap down-samples without replacement preserving order") {
  const auto ds = testutil::make_random_kg(24, 6, 2, 60);
  const auto full = build_context_index(ds);
  const auto capped = build_context_index(ds, 4, 7);
  for (std::size_t h = 0; h < capped.entity_context.size(); ++h) {
    CHECK(capped.entity_context[h].size() == std::min<std::size_t>(4, full.entity_context[h].size()));
    // Capped context is an order-preserving subsequence of the full one.
    std::size_t pos = 0;
    for (const auto& e : capped.entity_context[h]) {
      while (pos < full.entity_context[h].size() && full.entity_context[h][pos] != e) ++pos;
      CHECK(pos < full.entity_context[h].size());
      ++pos;
    }
  }
  // Different seed, different sample (for at least one long row).
  const auto other = build_context_index(ds, 4, 8);
  CHECK(capped.entity_context != other.entity_context);
}

TEST_CASE("cap of zero is rejected") {
  const auto ds = build_dataset({{"A", "r", "B"}}, {}, {});
  CHECK_THROWS_AS(build_context_index(ds, 0, 0), std::invalid_argument);
}

TEST_CASE("context_of_entity accessor") {
  const auto ds = build_dataset({{"A", "r", "B"}}, {{"C", "r", "A"}}, {});
  const auto index = build_context_index(ds);
  // C appears only in valid, so it is isolated in the training contexts.
  CHECK(context_of_entity(index, ds.entity_ids.at("C")).empty());
  CHECK(context_of_entity(index, 0).size() == 1);
  CHECK_THROWS_AS(context_of_entity(index, 99), std::out_of_range);
  CHECK_THROWS_AS(context_of_relation(index, -1), std::out_of_range);
}

TEST_CASE("valid and test edges never enter the contexts") {
  const auto ds = build_dataset({{"A", "r", "B"}}, {{"A", "r", "C"}}, {{"B", "r", "C"}});
  const auto index = build_context_index(ds);
  std::size_t total = 0;
  for (const auto& c : index.entity_context) total += c.size();
  CHECK(total == 2);  // only the train triple and its inverse
}
