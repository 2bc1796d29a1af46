#pragma once

#include <random>
#include <string>
#include <vector>

#include "ctxkge/dataset.hpp"
#include "ctxkge/rng.hpp"

namespace ctxkge::testutil {

// Random KG over nE entities and nR relations; valid/test drawn the same way
// so their symbols are covered by the union vocabulary.
inline Dataset make_random_kg(std::uint64_t seed, int num_entities = 10, int num_relations = 4,
                              int num_train = 30, int num_valid = 5, int num_test = 5) {
  auto rng = substream(seed, "test/random_kg");
  std::uniform_int_distribution<int> pe(0, num_entities - 1);
  std::uniform_int_distribution<int> pr(0, num_relations - 1);
  auto draw = [&](int n) {
    std::vector<RawTriple> out;
    for (int i = 0; i < n; ++i) {
      out.push_back({"e" + std::to_string(pe(rng)), "r" + std::to_string(pr(rng)),
                     "e" + std::to_string(pe(rng))});
    }
    return out;
  };
  auto train = draw(num_train);
  // Mention every symbol in train so valid/test never extend the vocabulary
  // in surprising ways.
  for (int e = 0; e < num_entities; ++e) {
    train.push_back({"e" + std::to_string(e), "r" + std::to_string(e % num_relations),
                     "e" + std::to_string((e + 1) % num_entities)});
  }
  return build_dataset(train, draw(num_valid), draw(num_test));
}

// KG with latent entity types where the relation is a deterministic function
// of the endpoint types, so relation prediction is learnable.
inline Dataset make_typed_kg(std::uint64_t seed, int num_types = 4, int per_type = 8,
                             int num_train = 120, int num_valid = 30, int num_test = 30) {
  auto rng = substream(seed, "test/typed_kg");
  std::uniform_int_distribution<int> pt(0, num_types - 1);
  std::uniform_int_distribution<int> pi(0, per_type - 1);
  auto draw = [&](int n) {
    std::vector<RawTriple> out;
    for (int i = 0; i < n; ++i) {
      const int a = pt(rng), b = pt(rng);
      const int r = a * num_types + b;  // relation id encodes the type pair
      out.push_back({"t" + std::to_string(a) + "_" + std::to_string(pi(rng)),
                     "r" + std::to_string(r),
                     "t" + std::to_string(b) + "_" + std::to_string(pi(rng))});
    }
    return out;
  };
  return build_dataset(draw(num_train), draw(num_valid), draw(num_test));
}

}  // namespace ctxkge::testutil
