#include <doctest.h>

#include <stdexcept>

#include "ctxkge/run_config.hpp"

using namespace ctxkge;

TEST_CASE("run config kv round-trip on non-default values") {
  RunConfig c;
  c.dataset_dir = "data/toy";
  c.model = ModelKind::TransE;
  c.context = ContextVariant::RelationOnly;
  c.dim = 64;
  c.lr = 1.5e-3;
  c.l2 = 1e-6;
  c.batch_size = 128;
  c.iterations = 2;
  c.epochs = 7;
  c.patience = 5;
  c.seed = 123456789;
  c.threads = 4;
  c.cap = 32;
  c.cap_seed = 42;
  c.mask_target_edge = true;
  c.out = "runs/exp1";
  const auto r = RunConfig::from_kv(c.to_kv());
  CHECK(r == c);
}

TEST_CASE("defaults survive the round-trip") {
  const RunConfig c;
  CHECK(RunConfig::from_kv(c.to_kv()) == c);
}

TEST_CASE("doubles round-trip without precision loss") {
  RunConfig c;
  c.lr = 0.1 + 0.2;  // not exactly representable as a short decimal
  c.l2 = 1e-300;
  const auto r = RunConfig::from_kv(c.to_kv());
  CHECK(r.lr == c.lr);
  CHECK(r.l2 == c.l2);
}

TEST_CASE("unknown keys are rejected") {
  CHECK_THROWS_WITH_AS(RunConfig::from_kv("no-such-key=1\n"), doctest::Contains("unknown key"),
                       std::runtime_error);
}

TEST_CASE("to_train_config carries the fields over") {
  RunConfig c;
  c.model = ModelKind::TransE;
  c.context = ContextVariant::EntityOnly;
  c.dim = 48;
  c.lr = 2e-3;
  c.iterations = 3;
  c.cap = 16;
  c.mask_target_edge = true;
  const auto t = c.to_train_config();
  CHECK(t.kind == ModelKind::TransE);
  CHECK(t.variant == ContextVariant::EntityOnly);
  CHECK(t.dim == 48);
  CHECK(t.learning_rate == 2e-3);
  CHECK(t.num_iterations == 3);
  REQUIRE(t.context_cap.has_value());
  CHECK(*t.context_cap == 16);
  CHECK(t.mask_target_edge);

  c.cap = -1;
  CHECK(!c.to_train_config().context_cap.has_value());
}
