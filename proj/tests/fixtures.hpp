#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "newsforge/embed.hpp"

namespace fixtures {

// About 200 short sentences where "cat" and "dog" fill the same slots and
// "bolt" only shows up in hardware and weather sentences.
inline newsforge::TokenCorpus cat_dog_corpus(std::uint64_t seed = 3) {
  const std::vector<std::vector<std::string>> pet_templates = {
      {"the", "PET", "chased", "a", "ball", "across", "the", "garden"},
      {"my", "PET", "sleeps", "on", "the", "warm", "sofa"},
      {"our", "PET", "ate", "its", "food", "from", "a", "bowl"},
      {"the", "hungry", "PET", "wanted", "more", "food"},
      {"a", "PET", "makes", "a", "loyal", "pet", "for", "children"},
      {"she", "took", "the", "PET", "to", "the", "vet", "yesterday"},
      {"the", "PET", "played", "with", "a", "toy", "in", "the", "garden"},
  };
  const std::vector<std::vector<std::string>> bolt_templates = {
      {"the", "engineer", "tightened", "a", "steel", "bolt", "on", "the", "machine"},
      {"a", "loose", "bolt", "rattled", "inside", "the", "engine"},
      {"lightning", "struck", "as", "a", "bolt", "hit", "the", "tower"},
      {"he", "replaced", "the", "rusty", "bolt", "with", "a", "new", "nut"},
  };
  std::mt19937_64 rng(seed);
  newsforge::TokenCorpus out;
  for (int i = 0; i < 160; ++i) {
    auto s = pet_templates[rng() % pet_templates.size()];
    const std::string pet = (i % 2) ? "cat" : "dog";
    for (auto& w : s)
      if (w == "PET") w = pet;
    out.push_back(std::move(s));
  }
  for (int i = 0; i < 40; ++i) out.push_back(bolt_templates[rng() % bolt_templates.size()]);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

inline newsforge::TrainConfig cat_dog_config() {
  newsforge::TrainConfig c;
  c.dimension = 50;
  c.window = 3;
  c.negatives = 5;
  c.epochs = 30;
  c.min_count = 1;
  c.subsample_threshold = 0.0;
  c.seed = 11;
  return c;
}

}  // namespace fixtures
