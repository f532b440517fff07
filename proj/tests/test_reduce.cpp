#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "newsforge/error.hpp"
#include "newsforge/reduce.hpp"
#include "oracles.hpp"

using namespace newsforge;

namespace {

// Point t on a line, embedded as an angle so cosine distance grows with |dt|.
SparseVector on_line(double t) {
  const double a = t * std::numbers::pi / 3.0;
  return {{0, 1}, {std::cos(a), std::sin(a)}};
}

std::vector<LabeledInstance> line(const std::vector<std::pair<double, std::string>>& points) {
  std::vector<LabeledInstance> out;
  for (std::size_t i = 0; i < points.size(); ++i) out.push_back({i, on_line(points[i].first), points[i].second});
  return out;
}

using oracles::TwoClusters;

std::vector<std::size_t> removed_ids(const SelectionResult& r) {
  std::vector<std::size_t> out;
  for (const auto& x : r.removed) out.push_back(x.id);
  return out;
}

void check_partition(const SelectionResult& r, std::size_t n) {
  std::vector<std::size_t> all = r.retained;
  for (const auto& x : r.removed) all.push_back(x.id);
  std::sort(all.begin(), all.end());
  REQUIRE(all.size() == n);
  for (std::size_t i = 0; i < n; ++i) CHECK(all[i] == i);
}

}  // namespace

TEST_CASE("knn examples") {
  const auto pool = line({{0.0, "A"}, {0.1, "A"}, {0.9, "B"}});
  // 0.05 is equidistant up to rounding, so only the set is fixed.
  const auto near = knn(on_line(0.05), pool, 2);
  CHECK(std::set<std::size_t>(near.begin(), near.end()) == std::set<std::size_t>{0, 1});
  CHECK(knn(on_line(0.04), pool, 2) == std::vector<std::size_t>{0, 1});
  CHECK(knn(on_line(0.9), pool, 1) == std::vector<std::size_t>{2});
  CHECK(knn(on_line(0.5), pool, 10).size() == 3);
  CHECK_THROWS_AS(knn(on_line(0.0), std::vector<LabeledInstance>{}, 1), Error);
  CHECK_THROWS_AS(knn(on_line(0.0), pool, 0), Error);
}

TEST_CASE("knn breaks distance ties by ascending id") {
  std::vector<LabeledInstance> pool{{7, on_line(0.2), "A"}, {3, on_line(0.2), "B"}, {5, on_line(0.0), "A"}};
  CHECK(knn(on_line(0.2), pool, 2) == std::vector<std::size_t>{3, 7});
}

TEST_CASE("enn removes the lone B point") {
  const auto inst = line({{0.0, "A"}, {0.1, "A"}, {0.2, "A"}, {0.3, "A"}, {0.15, "B"}});
  const auto r = enn_filter(inst, 3);
  CHECK(removed_ids(r) == std::vector<std::size_t>{4});
  CHECK(r.retained == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(r.removed[0].stage == RemovalStage::Enn);
  check_partition(r, 5);

  std::vector<std::string> labels;
  for (const auto& i : inst) labels.push_back(i.label);
  const auto oracle = oracles::enn(DistanceMatrix::cosine(inst), labels, 3);
  CHECK(oracle == std::set<std::size_t>{4});
}

TEST_CASE("enn keeps pure clusters and single-label sets") {
  const auto two = line({{0.0, "A"}, {0.05, "A"}, {0.1, "A"}, {0.15, "A"}, {1.0, "B"}, {1.05, "B"}, {1.1, "B"}, {1.15, "B"}});
  CHECK(enn_filter(two, 3).removed.empty());
  const auto one = line({{0.0, "A"}, {0.3, "A"}, {0.5, "A"}, {0.9, "A"}});
  CHECK(enn_filter(one, 3).removed.empty());
  CHECK_THROWS_AS(enn_filter(one, 4), Error);
}

TEST_CASE("enn agrees with the brute-force vote on random lines") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<double, std::string>> pts;
    const std::size_t n = 6 + rng() % 10;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({u(rng), rng() % 3 == 0 ? "B" : "A"});
    const auto inst = line(pts);
    std::vector<std::string> labels;
    for (const auto& p : pts) labels.push_back(p.second);
    const std::size_t k = 1 + rng() % 4;
    const auto r = enn_filter(inst, k);
    const auto got = removed_ids(r);
    CHECK(std::set<std::size_t>(got.begin(), got.end()) == oracles::enn(DistanceMatrix::cosine(inst), labels, k));
    check_partition(r, n);
  }
}

TEST_CASE("drop3 matches the hand trace on two clusters") {
  TwoClusters f;
  Drop3Options opts;
  opts.k = 2;
  const auto r = drop3(f.d, f.labels, opts);

  CHECK(r.k == 2);
  CHECK(r.distance == "precomputed");
  CHECK(r.processing_order == std::vector<std::size_t>{0, 5, 1, 4, 2, 3});
  CHECK(r.retained == std::vector<std::size_t>{1, 4, 2, 3});
  REQUIRE(r.removed.size() == 2);
  CHECK(r.removed[0].id == 0);
  CHECK(r.removed[0].stage == RemovalStage::Drop3);
  CHECK(r.removed[0].order == 0);
  CHECK(r.removed[1].id == 5);
  CHECK(r.removed[1].order == 1);

  const auto& trace = oracles::two_cluster_trace();
  REQUIRE(r.decisions.size() == trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    CAPTURE(i);
    CHECK(r.decisions[i].id == trace[i].id);
    CHECK(r.decisions[i].with == trace[i].with);
    CHECK(r.decisions[i].without == trace[i].without);
    CHECK(r.decisions[i].nearest_enemy_distance == trace[i].enemy);
    CHECK(r.decisions[i].removed == trace[i].removed);
  }
}

TEST_CASE("drop3 retained set 1-NN classifies every original point") {
  TwoClusters f;
  Drop3Options opts;
  opts.k = 2;
  const auto r = drop3(f.d, f.labels, opts);
  CHECK(r.retained.size() < 6);
  for (std::size_t i = 0; i < 6; ++i) {
    std::size_t best = r.retained[0];
    for (std::size_t p : r.retained)
      if (f.d(i, p) < f.d(i, best) || (f.d(i, p) == f.d(i, best) && p < best)) best = p;
    CHECK(f.labels[best] == f.labels[i]);
  }
}

TEST_CASE("drop3 neighbor lists match brute force after every removal") {
  TwoClusters f;
  Drop3Options opts;
  opts.k = 2;
  std::size_t calls = 0;
  opts.on_removal = [&](const NeighborGraph& g, std::size_t removed) {
    ++calls;
    CHECK_FALSE(g.retained[removed]);
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < g.retained.size(); ++i)
      if (g.retained[i]) pool.push_back(i);
    for (std::size_t i = 0; i < g.neighbors.size(); ++i) {
      if (!g.tracked[i]) continue;
      CAPTURE(i);
      CHECK(g.neighbors[i] == oracles::knn(f.d, i, pool, g.k + 1));
      for (std::size_t n : g.neighbors[i]) CHECK(g.retained[n]);
    }
  };
  drop3(f.d, f.labels, opts);
  CHECK(calls == 2);
}

TEST_CASE("drop3 is deterministic and partitions its input") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<double, std::string>> pts;
    const std::size_t n = 8 + rng() % 20;
    for (std::size_t i = 0; i < n; ++i) {
      const bool b = i % 2;
      pts.push_back({(b ? 0.6 : 0.0) + 0.5 * u(rng), b ? "B" : "A"});
    }
    const auto inst = line(pts);
    Drop3Options opts;
    opts.k = 1 + rng() % 3;

    // Brute-force repair check on every removal of a random instance too.
    std::vector<std::string> labels;
    for (const auto& p : pts) labels.push_back(p.second);
    const auto d = DistanceMatrix::cosine(inst);
    opts.on_removal = [&](const NeighborGraph& g, std::size_t) {
      std::vector<std::size_t> pool;
      for (std::size_t i = 0; i < g.retained.size(); ++i)
        if (g.retained[i]) pool.push_back(i);
      for (std::size_t i = 0; i < g.neighbors.size(); ++i)
        if (g.tracked[i]) CHECK(g.neighbors[i] == oracles::knn(d, i, pool, g.k + 1));
    };
    const auto a = drop3(inst, opts);
    const auto b = drop3(inst, opts);
    CHECK(a.retained == b.retained);
    CHECK(removed_ids(a) == removed_ids(b));
    CHECK(a.processing_order == b.processing_order);
    CHECK(a.distance == "cosine");
    check_partition(a, n);
  }
}

TEST_CASE("drop3 errors") {
  const auto one = line({{0.0, "A"}, {0.3, "A"}, {0.5, "A"}, {0.9, "A"}});
  try {
    drop3(one);
    FAIL("expected NoEnemies");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoEnemies);
  }
  const auto tiny = line({{0.0, "A"}, {0.3, "B"}});
  try {
    drop3(tiny);
    FAIL("expected TooFewInstances");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooFewInstances);
  }
}

TEST_CASE("classify_by_neighbors votes and breaks ties toward the nearest") {
  const std::vector<std::string> labels{"A", "B", "B", "A"};
  CHECK(classify_by_neighbors(std::vector<std::size_t>{1, 2, 0}, labels, 3) == "B");
  CHECK(classify_by_neighbors(std::vector<std::size_t>{0, 1}, labels, 2) == "A");
  CHECK(classify_by_neighbors(std::vector<std::size_t>{1, 0}, labels, 2) == "B");
  CHECK(classify_by_neighbors(std::vector<std::size_t>{3, 1, 2}, labels, 1) == "A");
  CHECK_FALSE(classify_by_neighbors(std::vector<std::size_t>{}, labels, 2).has_value());
}

namespace {

NewsDocument titled(const std::string& id, const std::string& country, Category c,
                    std::vector<std::string> tokens, const std::string& title = "") {
  NewsDocument d;
  d.id = id;
  d.country = country;
  d.category = c;
  d.title = title.empty() ? id : title;
  d.cleaned = true;
  d.title_tokens = std::move(tokens);
  return d;
}

}  // namespace

TEST_CASE("hottest_titles shrinks near-duplicate clusters") {
  std::vector<NewsDocument> docs;
  const std::vector<std::string> sport{"match", "goal", "team", "coach", "leagu"};
  const std::vector<std::string> pol{"elect", "vote", "minist", "senat", "ballot"};
  for (int i = 0; i < 20; ++i) {
    docs.push_back(titled("s" + std::to_string(i), "US", Category::Sports,
                          {sport[0], sport[1], sport[2 + i % 3], "w" + std::to_string(i)}));
    docs.push_back(titled("p" + std::to_string(i), "US", Category::Politics,
                          {pol[0], pol[1], pol[2 + i % 3], "v" + std::to_string(i)}));
  }
  docs.push_back(titled("x", "GB", Category::Business, {"bank"}));
  const auto r = hottest_titles(docs, "us", 3);
  CHECK(r.titles.size() < 40);
  CHECK_FALSE(r.titles.empty());
  for (std::size_t i = 0; i < r.titles.size(); ++i) CHECK(r.titles[i].rank == i + 1);

  const auto capped = hottest_titles(docs, "US", 3, 5);
  CHECK(capped.titles.size() <= 5);

  CHECK_THROWS_AS(hottest_titles(docs, "FR", 3), Error);
}

TEST_CASE("hottest_titles errors and zero-vector exclusion") {
  std::vector<NewsDocument> docs;
  for (int i = 0; i < 6; ++i)
    docs.push_back(titled("s" + std::to_string(i), "US", Category::Sports, {"match", "w" + std::to_string(i)}));
  try {
    hottest_titles(docs, "US", 3);
    FAIL("expected NoEnemies");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoEnemies);
  }

  for (int i = 0; i < 6; ++i)
    docs.push_back(titled("p" + std::to_string(i), "US", Category::Politics, {"vote", "v" + std::to_string(i)}));
  docs.push_back(titled("empty", "US", Category::Politics, {"the", "of"}));
  const auto r = hottest_titles(docs, "US", 3);
  CHECK(r.excluded_ids == std::vector<std::string>{"empty"});
}
