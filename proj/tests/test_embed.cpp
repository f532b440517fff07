#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "newsforge/embed.hpp"
#include "newsforge/error.hpp"

using namespace newsforge;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "newsforge_test_embed";
  std::filesystem::create_directories(dir);
  return dir;
}

double cosine_of(const EmbeddingModel& m, const std::string& a, const std::string& b) {
  return cosine_similarity(m.input_vector(static_cast<std::size_t>(m.index_of(a))),
                           m.input_vector(static_cast<std::size_t>(m.index_of(b))));
}

}  // namespace

TEST_CASE("build_embed_vocab examples") {
  const TokenCorpus c{{"a", "a", "a", "b"}};
  const auto v2 = build_embed_vocab(c, 2);
  CHECK(v2.words() == std::vector<std::string>{"a"});
  const auto v1 = build_embed_vocab(c, 1);
  CHECK(v1.words() == std::vector<std::string>{"a", "b"});
  CHECK(v1.counts() == std::vector<std::uint64_t>{3, 1});
  CHECK(v1.total_count() == 4);
  const double pa = std::pow(3.0, 0.75) / (std::pow(3.0, 0.75) + 1.0);
  CHECK(v1.noise_probabilities()[0] == doctest::Approx(pa).epsilon(1e-12));
  CHECK(pa == doctest::Approx(0.695).epsilon(1e-3));
  CHECK(v1.index_of("b") == 1);
  CHECK(v1.index_of("zz") == -1);
  CHECK_THROWS_AS(build_embed_vocab(c, 5), Error);
  CHECK_THROWS_AS(build_embed_vocab(TokenCorpus{}, 1), Error);
}

TEST_CASE("noise sampling follows the table") {
  const auto v = build_embed_vocab(TokenCorpus{{"a", "a", "a", "b"}}, 1);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int hits = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) hits += v.sample_noise(u(rng)) == 0;
  CHECK(static_cast<double>(hits) / n == doctest::Approx(v.noise_probabilities()[0]).epsilon(0.01));
  CHECK(v.sample_noise(0.0) == 0);
  CHECK(v.sample_noise(0.999999) == 1);
}

TEST_CASE("vocabulary order is count descending then word") {
  const auto v = build_embed_vocab(TokenCorpus{{"b", "c", "a", "c", "b"}}, 1);
  CHECK(v.words() == std::vector<std::string>{"b", "c", "a"});
}

TEST_CASE("train config validation") {
  TrainConfig c;
  c.dimension = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.window = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.initial_rate = -1;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("zero epochs returns the initialization") {
  const auto corpus = fixtures::cat_dog_corpus();
  auto cfg = fixtures::cat_dog_config();
  cfg.epochs = 0;
  const auto trained = train(corpus, cfg);
  const auto init = initialize_model(build_embed_vocab(corpus, cfg.min_count), cfg);
  CHECK(trained.words == init.words);
  CHECK(trained.input == init.input);
  CHECK(trained.output == init.output);
  const float bound = 0.5f / static_cast<float>(cfg.dimension);
  for (float x : init.input) {
    CHECK(x >= -bound);
    CHECK(x < bound);
  }
  for (float x : init.output) CHECK(x == 0.0f);
}

TEST_CASE("sgns gradient matches central differences") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 0.7);
  const double h = 1e-5;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(3), u(3), n1(3);
    for (auto* vec : {&v, &u, &n1})
      for (double& x : *vec) x = g(rng);

    auto objective = [&](const std::vector<double>& vv, const std::vector<double>& uu, const std::vector<double>& nn) {
      const std::vector<std::vector<double>> negs{nn};
      return sgns_objective(vv, uu, negs);
    };
    std::vector<double> grad_v(3), grad_u(3), grad_n(3);
    for (int i = 0; i < 3; ++i) {
      auto p = v, m = v;
      p[i] += h;
      m[i] -= h;
      grad_v[i] = (objective(p, u, n1) - objective(m, u, n1)) / (2 * h);
      p = u, m = u;
      p[i] += h;
      m[i] -= h;
      grad_u[i] = (objective(v, p, n1) - objective(v, m, n1)) / (2 * h);
      p = n1, m = n1;
      p[i] += h;
      m[i] -= h;
      grad_n[i] = (objective(v, u, p) - objective(v, u, m)) / (2 * h);
    }

    auto v2 = v, u2 = u, n2 = n1;
    std::vector<std::span<double>> negs{std::span<double>(n2)};
    const double before = sgns_step<double>(v2, u2, negs, 1.0);
    CHECK(before == doctest::Approx(objective(v, u, n1)).epsilon(1e-12));

    auto rel = [](double a, double b) { return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-6}); };
    for (int i = 0; i < 3; ++i) {
      CHECK(rel(v2[i] - v[i], grad_v[i]) < 1e-4);
      CHECK(rel(u2[i] - u[i], grad_u[i]) < 1e-4);
      CHECK(rel(n2[i] - n1[i], grad_n[i]) < 1e-4);
    }
  }
}

TEST_CASE("training is deterministic and stays finite") {
  const auto corpus = fixtures::cat_dog_corpus();
  auto cfg = fixtures::cat_dog_config();
  cfg.epochs = 5;
  std::size_t epochs_seen = 0;
  const auto a = train(corpus, cfg, [&](std::size_t epoch, const EmbeddingModel& m) {
    CHECK(epoch == epochs_seen);
    ++epochs_seen;
    for (float x : m.input) REQUIRE(std::isfinite(x));
    for (float x : m.output) REQUIRE(std::isfinite(x));
  });
  CHECK(epochs_seen == 5);
  const auto b = train(corpus, cfg);
  REQUIRE(a.input.size() == b.input.size());
  CHECK(std::memcmp(a.input.data(), b.input.data(), a.input.size() * sizeof(float)) == 0);
  CHECK(std::memcmp(a.output.data(), b.output.data(), a.output.size() * sizeof(float)) == 0);
  CHECK(a.to_text() == b.to_text());

  cfg.seed = 12;
  CHECK(train(corpus, cfg).to_text() != a.to_text());
}

TEST_CASE("cat and dog end up close, bolt does not") {
  const auto model = train(fixtures::cat_dog_corpus(), fixtures::cat_dog_config());
  CHECK(cosine_of(model, "cat", "dog") > cosine_of(model, "cat", "bolt"));
  const auto top = nearest_words(model, "cat", 3);
  const bool found = std::any_of(top.begin(), top.end(), [](const Neighbor& n) { return n.word == "dog"; });
  CHECK(found);
}

TEST_CASE("nearest_words rules") {
  auto cfg = fixtures::cat_dog_config();
  cfg.epochs = 2;
  const auto model = train(fixtures::cat_dog_corpus(), cfg);
  const auto top = nearest_words(model, "dog", 5);
  CHECK(top.size() == 5);
  for (const auto& n : top) CHECK(n.word != "dog");
  for (std::size_t i = 1; i < top.size(); ++i) CHECK(top[i - 1].similarity >= top[i].similarity);
  CHECK(nearest_words(model, "dog", model.size() + 10).size() == model.size() - 1);
  CHECK(nearest_words(model, "Dogs", 1).size() == 1);  // normalized before lookup
  try {
    nearest_words(model, "unicorn", 3);
    FAIL("expected UnknownWord");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownWord);
  }
}

TEST_CASE("save, load, save is byte-identical") {
  auto cfg = fixtures::cat_dog_config();
  cfg.epochs = 2;
  const auto model = train(fixtures::cat_dog_corpus(), cfg);
  const auto dir = temp_dir();
  const std::string p1 = (dir / "m1.txt").string(), p2 = (dir / "m2.txt").string();
  model.save(p1);
  const auto back = EmbeddingModel::load(p1);
  back.save(p2);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(slurp(p1 + ".json") == slurp(p2 + ".json"));
  CHECK(back.input == model.input);
  CHECK(back.words == model.words);
  CHECK(back.config.seed == cfg.seed);

  const std::string header = slurp(p1).substr(0, slurp(p1).find('\n'));
  CHECK(header == std::to_string(model.size()) + " " + std::to_string(cfg.dimension));
}

TEST_CASE("load rejects malformed models") {
  const auto dir = temp_dir();
  const std::string p = (dir / "bad.txt").string();
  {
    std::ofstream out(p);
    out << "2 3\nfoo 1 2 3\nbar 1 2\n";
  }
  CHECK_THROWS_AS(EmbeddingModel::load(p), Error);
  CHECK_THROWS_AS(EmbeddingModel::load((dir / "missing.txt").string()), Error);
}

TEST_CASE("embedding_corpus keeps sentence boundaries") {
  NewsDocument d;
  d.cleaned = true;
  d.title_tokens = {"big", "match"};
  d.sentences = {Sentence{"", {"a", "b"}}, Sentence{"", {"c"}}};
  const auto c = embedding_corpus(std::vector<NewsDocument>{d});
  CHECK(c == TokenCorpus{{"big", "match"}, {"a", "b"}, {"c"}});
}
