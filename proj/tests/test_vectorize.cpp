#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "newsforge/error.hpp"
#include "newsforge/vectorize.hpp"

using namespace newsforge;

namespace {

using Titles = std::vector<std::vector<std::string>>;

TfIdfOptions raw_weights() {
  TfIdfOptions o;
  o.l2_normalize = false;
  return o;
}

double weight(const TfIdfModel& m, const SparseVector& v, const std::string& term) {
  const auto idx = m.vocabulary().index_of(term);
  return idx < 0 ? 0.0 : v.weight_at(static_cast<std::uint32_t>(idx));
}

SparseVector sv(std::vector<std::uint32_t> idx, std::vector<double> w) { return {std::move(idx), std::move(w)}; }

}  // namespace

TEST_CASE("build_model examples") {
  const Titles titles{{"a", "a", "b"}, {"a", "c"}};
  const auto m = build_model(titles);
  const auto& v = m.vocabulary();
  CHECK(v.corpus_size() == 2);
  CHECK(v.size() == 3);
  CHECK(v.document_frequency("a") == 2);
  CHECK(v.document_frequency("b") == 1);
  CHECK(v.document_frequency("c") == 1);
  CHECK(v.index_of("a") == 0);
  CHECK(v.index_of("c") == 2);
  CHECK(v.index_of("zz") == -1);

  const Titles single{{"x"}};
  const auto s = build_model(single);
  CHECK(s.vocabulary().corpus_size() == 1);
  CHECK(s.vocabulary().size() == 1);
  CHECK(s.vocabulary().document_frequency("x") == 1);

  TfIdfOptions min2;
  min2.min_df = 2;
  const auto f = build_model(titles, min2);
  CHECK(f.vocabulary().size() == 1);
  CHECK(f.vocabulary().term(0) == "a");
}

TEST_CASE("build_model rejects an empty corpus") {
  CHECK_THROWS_AS(build_model(Titles{}), Error);
  CHECK_THROWS_AS(build_model(Titles{{}, {}}), Error);
  TfIdfOptions o;
  o.stopwords = {"the"};
  CHECK_THROWS_AS(build_model(Titles{{"the"}}, o), Error);
}

TEST_CASE("term_frequency examples") {
  const std::vector<std::string> d{"a", "a", "b"};
  CHECK(term_frequency("a", d) == doctest::Approx(2.0 / 3.0));
  CHECK(term_frequency("z", d) == 0.0);
  CHECK(term_frequency("x", std::vector<std::string>{"x"}) == 1.0);
  CHECK(term_frequency("x", std::vector<std::string>{}) == 0.0);
}

TEST_CASE("vectorize examples") {
  const Titles titles{{"a", "a", "b"}, {"a", "c"}};
  const auto m = build_model(titles, raw_weights());
  const auto v = m.vectorize(titles[0]);
  CHECK(weight(m, v, "a") == 0.0);
  CHECK(std::fabs(weight(m, v, "b") - std::log(2.0) / 3.0) < 1e-12);
  CHECK(v.nnz() == 1);  // the zero weight of "a" is not stored

  CHECK(m.idf("a") == 0.0);
  CHECK(m.vectorize(std::vector<std::string>{"q", "r"}).is_zero());
}

TEST_CASE("stopwords leave the vocabulary and the tf denominator") {
  TfIdfOptions o = raw_weights();
  o.stopwords = {"the"};
  const Titles titles{{"the", "x", "y"}, {"z"}};
  const auto m = build_model(titles, o);
  CHECK(m.vocabulary().index_of("the") == -1);
  const auto v = m.vectorize(titles[0]);
  CHECK(weight(m, v, "x") == doctest::Approx(0.5 * std::log(2.0)));
}

TEST_CASE("normalized english stopwords are stems") {
  const auto sw = normalized_english_stopwords();
  CHECK(sw.count("the"));
  CHECK(sw.count("thi"));  // "this"
}

TEST_CASE("tf and idf properties on random corpora") {
  std::mt19937 rng(5);
  const std::vector<std::string> terms{"a", "b", "c", "d", "e", "f", "g", "h"};
  for (int trial = 0; trial < 100; ++trial) {
    Titles titles(2 + rng() % 12);
    for (auto& t : titles) {
      const std::size_t len = 1 + rng() % 6;
      for (std::size_t i = 0; i < len; ++i) t.push_back(terms[rng() % (1 + rng() % terms.size())]);
    }
    const auto m = build_model(titles);
    const auto& voc = m.vocabulary();
    for (std::size_t i = 0; i < voc.size(); ++i)
      for (std::size_t j = 0; j < voc.size(); ++j)
        if (voc.document_frequency(i) < voc.document_frequency(j)) CHECK(m.idf(voc.term(i)) > m.idf(voc.term(j)));

    for (const auto& t : titles) {
      std::map<std::string, int> distinct;
      for (const auto& w : t) ++distinct[w];
      double sum = 0;
      for (const auto& [w, c] : distinct) {
        const double tf = term_frequency(w, t);
        CHECK(tf >= 0.0);
        CHECK(tf <= 1.0);
        sum += tf;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      const auto v = m.vectorize(t);
      if (!v.is_zero()) CHECK(std::fabs(v.norm() - 1.0) < 1e-12);
      for (double w : v.weights) CHECK(w > 0.0);
    }
  }
}

TEST_CASE("cosine_distance examples and properties") {
  const auto a = sv({0, 3}, {1.0, 2.0});
  const auto b = sv({1, 4}, {5.0, 1.0});
  CHECK(cosine_distance(a, a) == doctest::Approx(0.0));
  CHECK(cosine_distance(a, b) == 1.0);
  CHECK(cosine_distance(a, a.scaled(2.0)) == doctest::Approx(0.0));
  CHECK(cosine_distance(a, SparseVector{}) == 1.0);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    SparseVector x, y;
    for (std::uint32_t i = 0; i < 6; ++i) {
      if (rng() % 2) {
        x.indices.push_back(i);
        x.weights.push_back(u(rng));
      }
      if (rng() % 2) {
        y.indices.push_back(i);
        y.weights.push_back(u(rng));
      }
    }
    const double d = cosine_distance(x, y);
    CHECK(d >= 0.0);
    CHECK(d <= 2.0);
    CHECK(d == cosine_distance(y, x));
    const double s = u(rng);
    CHECK(cosine_distance(x.scaled(s), y) == doctest::Approx(d).epsilon(1e-12));
  }
}

TEST_CASE("sparse vector helpers") {
  const auto a = sv({1, 4}, {3.0, 4.0});
  CHECK(a.norm() == 5.0);
  CHECK(a.weight_at(4) == 4.0);
  CHECK(a.weight_at(2) == 0.0);
  CHECK(dot(a, sv({4, 9}, {2.0, 1.0})) == 8.0);
  CHECK(SparseVector{}.is_zero());
}
