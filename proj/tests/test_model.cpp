#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "ctxkge/model.hpp"
#include "ctxkge/rng.hpp"

using namespace ctxkge;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, int d, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> v(d);
  for (double& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("init_embeddings is deterministic and bounded") {
  const auto a = init_embeddings(2, 2, 4, 7);
  const auto b = init_embeddings(2, 2, 4, 7);
  CHECK(a.entity == b.entity);
  CHECK(a.relation == b.relation);

  const auto big = init_embeddings(5, 4, 256, 1);
  const double bound = 6.0 / std::sqrt(256.0);
  CHECK(bound == doctest::Approx(0.375));
  for (double v : big.entity) {
    CHECK(v <= bound);
    CHECK(v >= -bound);
  }
  CHECK(init_embeddings(3, 2, 4, 1).parameter_count() == 20);
  CHECK_THROWS_AS(init_embeddings(2, 2, 0, 1), std::invalid_argument);
}

TEST_CASE("psi_transe known values") {
  const std::vector<double> h{1, 0}, r{0, 1}, t{1, 1};
  CHECK(psi_transe(h, r, t) == doctest::Approx(0.0));
  const std::vector<double> z{0, 0}, v34{3, 4};
  CHECK(psi_transe(z, v34, z) == doctest::Approx(-5.0));
}

TEST_CASE("psi_distmult known values") {
  const std::vector<double> ones{1, 1, 1};
  CHECK(psi_distmult(ones, ones, ones) == doctest::Approx(3.0));
  const std::vector<double> h{1, 2}, r{3, 4}, t{5, 6};
  CHECK(psi_distmult(h, r, t) == doctest::Approx(63.0));  // 1*3*5 + 2*4*6
  const std::vector<double> zero{0, 0};
  CHECK(psi_distmult(h, zero, t) == doctest::Approx(0.0));
}

TEST_CASE("encode/reduce decomposition equals psi for both kinds") {
  const std::vector<double> h{1, 0}, r{0, 1}, t{1, 1};
  std::vector<double> v(2);
  encode_triple(ModelKind::TransE, h, r, t, v);
  CHECK(v == std::vector<double>{0, 0});
  CHECK(reduce_score(ModelKind::TransE, v) == doctest::Approx(0.0));

  const std::vector<double> dh{1, 2}, dr{3, 4}, dt{5, 6};
  encode_triple(ModelKind::DistMult, dh, dr, dt, v);
  CHECK(v == std::vector<double>{15, 48});
  CHECK(reduce_score(ModelKind::DistMult, v) == doctest::Approx(63.0));

  auto rng = substream(42, "test/decomp");
  for (int trial = 0; trial < 100; ++trial) {
    for (ModelKind kind : {ModelKind::TransE, ModelKind::DistMult}) {
      const auto a = random_vec(rng, 4), b = random_vec(rng, 4), c = random_vec(rng, 4);
      std::vector<double> enc(4);
      encode_triple(kind, a, b, c, enc);
      CHECK(reduce_score(kind, enc) == doctest::Approx(psi(kind, a, b, c)).epsilon(1e-14));
    }
  }
}

TEST_CASE("psi_transe is nonpositive and zero exactly at translation") {
  auto rng = substream(43, "test/transe_sign");
  for (int trial = 0; trial < 50; ++trial) {
    const auto h = random_vec(rng, 3), r = random_vec(rng, 3);
    std::vector<double> t(3);
    for (int i = 0; i < 3; ++i) t[i] = h[i] + r[i];
    CHECK(psi_transe(h, r, t) == 0.0);
    const auto t2 = random_vec(rng, 3);
    CHECK(psi_transe(h, r, t2) <= 0.0);
  }
}

TEST_CASE("psi_distmult is symmetric in head and tail") {
  auto rng = substream(44, "test/dm_sym");
  for (int trial = 0; trial < 50; ++trial) {
    const auto h = random_vec(rng, 5), r = random_vec(rng, 5), t = random_vec(rng, 5);
    CHECK(psi_distmult(h, r, t) == doctest::Approx(psi_distmult(t, r, h)));
  }
}

TEST_CASE("context encoders") {
  std::vector<double> out(2);
  phi_ent(ModelKind::TransE, std::vector<double>{0, 1}, std::vector<double>{1, 1}, out);
  CHECK(out == std::vector<double>{1, 0});
  phi_rel(ModelKind::DistMult, std::vector<double>{2, 3}, std::vector<double>{4, 5}, out);
  CHECK(out == std::vector<double>{8, 15});
  const std::vector<double> x{0.3, -0.7};
  phi_rel(ModelKind::TransE, x, x, out);
  CHECK(out == std::vector<double>{0, 0});
  phi_ent(ModelKind::DistMult, std::vector<double>{2, 3}, std::vector<double>{4, 5}, out);
  CHECK(out == std::vector<double>{8, 15});
}

TEST_CASE("dimension mismatches are rejected") {
  const std::vector<double> a{1, 2}, b{1, 2, 3};
  std::vector<double> out(2);
  CHECK_THROWS_AS(psi_transe(a, b, a), std::invalid_argument);
  CHECK_THROWS_AS(psi_distmult(a, a, b), std::invalid_argument);
  CHECK_THROWS_AS(encode_triple(ModelKind::TransE, a, b, a, out), std::invalid_argument);
  CHECK_THROWS_AS(phi_ent(ModelKind::TransE, a, b, out), std::invalid_argument);
}

TEST_CASE("model kind names round-trip") {
  CHECK(model_kind_from_string(to_string(ModelKind::TransE)) == ModelKind::TransE);
  CHECK(model_kind_from_string(to_string(ModelKind::DistMult)) == ModelKind::DistMult);
  CHECK_THROWS_AS(model_kind_from_string("complex"), std::invalid_argument);
}
