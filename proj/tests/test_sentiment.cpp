#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "newsforge/error.hpp"
#include "newsforge/sentiment.hpp"
#include "oracles.hpp"

using namespace newsforge;

namespace {

Sentence sentence(std::vector<std::string> tokens) { return Sentence{"", std::move(tokens)}; }

std::vector<double> random_series(std::mt19937_64& rng, std::size_t max_len = 50) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::vector<double> x(len(rng));
  for (double& v : x) v = val(rng);
  return x;
}

}  // namespace

TEST_CASE("lexicon parsing") {
  std::istringstream in("# comment\ngood\t1\n\ngreat\t2.0\nawful\t-2\n");
  const auto lex = SentimentLexicon::parse(in);
  CHECK(lex.size() == 3);
  REQUIRE(lex.find("great") != nullptr);
  CHECK(*lex.find("great") == 2.0);
  CHECK(lex.find("meh") == nullptr);
}

TEST_CASE("lexicon keys are stemmed and collisions averaged") {
  std::istringstream in("happy\t2\nhappiness\t1\n");
  const auto lex = SentimentLexicon::parse(in);
  // both stem to "happi"
  REQUIRE(lex.find("happi") != nullptr);
  CHECK(*lex.find("happi") == 1.5);
}

TEST_CASE("lexicon rejects bad input") {
  auto parse = [](const char* text) {
    std::istringstream in(text);
    return SentimentLexicon::parse(in);
  };
  CHECK_THROWS_AS(parse("good\t3\n"), Error);
  CHECK_THROWS_AS(parse("good\n"), Error);
  CHECK_THROWS_AS(parse("good\tbad\n"), Error);
  CHECK_THROWS_AS(parse("# only comments\n"), Error);
  CHECK_THROWS_AS(SentimentLexicon::load_file("/nonexistent.tsv"), Error);
}

TEST_CASE("bundled lexicon") {
  const auto& lex = SentimentLexicon::bundled();
  CHECK(lex.size() >= 500);
  for (const auto& [word, v] : lex.entries()) {
    CHECK(v >= kMinValence);
    CHECK(v <= kMaxValence);
  }
  REQUIRE(lex.find("excel") != nullptr);  // excellent
  CHECK(*lex.find("excel") > 0);
}

TEST_CASE("score_sentence examples") {
  const auto lex = SentimentLexicon::from_entries({{"great", 2.0}});
  CHECK(score_sentence(sentence({"great", "game"}), lex) == 2.0);
  CHECK(score_sentence(sentence({"not", "great", "game"}), lex) == -2.0);
  CHECK(score_sentence(sentence({"plain", "game"}), lex) == 0.0);
}

TEST_CASE("negation window is three tokens") {
  const auto lex = SentimentLexicon::from_entries({{"good", 1.0}, {"bad", -2.0}});
  CHECK(score_sentence(sentence({"never", "a", "b", "good"}), lex) == -1.0);
  CHECK(score_sentence(sentence({"never", "a", "b", "c", "good"}), lex) == 1.0);
  CHECK(score_sentence(sentence({"isn't", "bad"}), lex) == 2.0);
  CHECK(score_sentence(sentence({"good", "and", "bad"}), lex) == -0.5);
  CHECK(is_negator("no"));
  CHECK(is_negator("didn't"));
  CHECK_FALSE(is_negator("nothing"));
}

TEST_CASE("score_document uses every cleaned sentence") {
  const auto lex = SentimentLexicon::from_entries({{"good", 1.0}});
  const LexiconScorer scorer(lex);
  NewsDocument doc;
  doc.id = "d";
  doc.cleaned = true;
  doc.sentences = {sentence({"good"}), sentence({"none"})};
  const auto s = score_document(doc, scorer);
  CHECK(s.document_id == "d");
  CHECK(s.values == std::vector<double>{1.0, 0.0});
}

TEST_CASE("fuse_mean examples") {
  CHECK(fuse_mean(std::vector<double>{1, 2, 3}).value == 2.0);
  CHECK(fuse_mean(std::vector<double>{-2}).value == -2.0);
  CHECK(fuse_mean(std::vector<double>{-1, -1, -1, 2}).value == -0.25);
  CHECK_THROWS_AS(fuse_mean(std::vector<double>{}), Error);
}

TEST_CASE("fuse_correntropy examples") {
  const FusionConfig cfg;
  const std::vector<double> x{-1, -1, -1, 2};
  const auto r = fuse_correntropy(x, cfg);
  CHECK(r.converged);
  CHECK(std::fabs(r.value - -1.0) < 1e-2);
  CHECK(std::fabs(r.value - oracles::correntropy(x, 1.0)) < 1e-6);

  FusionConfig one = cfg;
  one.max_iterations = 1;
  const auto first = fuse_correntropy(x, one);
  CHECK(first.iterations == 1);
  CHECK(first.value == doctest::Approx(-0.9889).epsilon(1e-4));

  for (double eta : {0.0, 0.5, 1.0, 10.0}) {
    FusionConfig c;
    c.eta = eta;
    const auto k = fuse_correntropy(std::vector<double>{0.5, 0.5, 0.5}, c);
    CHECK(k.value == 0.5);
    CHECK(k.iterations <= 1);
  }

  FusionConfig flat;
  flat.eta = 0.0;
  const auto e = fuse_correntropy(std::vector<double>{1, 2, 3}, flat);
  CHECK(e.value == 2.0);
  CHECK(e.weights == std::vector<double>{1.0, 1.0, 1.0});
  CHECK_THROWS_AS(fuse_correntropy(std::vector<double>{}, cfg), Error);
}

TEST_CASE("non-convergence is flagged, not thrown") {
  FusionConfig c;
  c.max_iterations = 1;
  c.tolerance = 1e-300;
  const auto r = fuse_correntropy(std::vector<double>{-2, -2, 2, 1.9}, c);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 1);
}

TEST_CASE("fusion config validation") {
  FusionConfig c;
  c.eta = -1;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.max_iterations = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.tolerance = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK_THROWS_AS(fuse_mean(std::vector<double>{1.0, NAN}), Error);
}

TEST_CASE("fusion properties over random series") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    auto x = random_series(rng);
    std::uniform_real_distribution<double> eta_dist(0.0, 4.0);
    FusionConfig cfg;
    cfg.eta = eta_dist(rng);
    const auto r = fuse_correntropy(x, cfg);
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    CHECK(r.value >= *lo);
    CHECK(r.value <= *hi);
    CHECK(std::fabs(r.value - oracles::correntropy(x, cfg.eta)) < 1e-6);

    auto shuffled = x;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(fuse_correntropy(shuffled, cfg).value == r.value);
    CHECK(fuse_mean(shuffled).value == fuse_mean(x).value);

    FusionConfig flat;
    flat.eta = 0.0;
    CHECK(fuse_correntropy(x, flat).value == fuse_mean(x).value);

    // Monotone weight decay around the returned value.
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j)
        if (std::fabs(x[i] - r.value) < std::fabs(x[j] - r.value)) CHECK(r.weights[i] >= r.weights[j]);
  }
}

TEST_CASE("constants fuse to themselves") {
  for (double v : {-2.0, -0.3, 0.0, 1.75}) {
    const std::vector<double> x(7, v);
    CHECK(fuse_mean(x).value == v);
    CHECK(fuse_correntropy(x, {}).value == v);
  }
}

TEST_CASE("outlier suppression") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int checked = 0;
  while (checked < 200) {
    const double v = u(rng), o = u(rng);
    if (std::fabs(o - v) < 3.0) continue;
    const std::size_t n = 3 + rng() % 20;  // n = 2 is symmetric: the mean is already the fixed point
    std::vector<double> x(n - 1, v);
    x.push_back(o);
    const double c = fuse_correntropy(x, {}).value;
    const double m = fuse_mean(x).value;
    CHECK(std::fabs(c - v) < std::fabs(m - v));
    ++checked;
  }
}

TEST_CASE("fuse_corpus skips documents with no sentences") {
  const auto lex = SentimentLexicon::from_entries({{"good", 1.0}});
  const LexiconScorer scorer(lex);
  std::vector<NewsDocument> docs(2);
  docs[0].id = "a";
  docs[0].country = "US";
  docs[0].cleaned = true;
  docs[0].sentences = {sentence({"good"})};
  docs[1].id = "b";
  docs[1].country = "US";
  docs[1].cleaned = true;
  const auto r = fuse_corpus(docs, scorer, FusionMethod::Correntropy, {});
  REQUIRE(r.documents.size() == 1);
  CHECK(r.documents[0].id == "a");
  CHECK(r.documents[0].sentiment == 1.0);
  CHECK(r.skipped_ids == std::vector<std::string>{"b"});
}
