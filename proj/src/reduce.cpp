#include "newsforge/reduce.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "newsforge/error.hpp"

namespace newsforge {
namespace {

std::vector<std::size_t> default_ids(std::size_t n, std::span<const std::size_t> ids) {
  if (ids.empty()) {
    std::vector<std::size_t> out(n);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
  }
  if (ids.size() != n) throw Error(ErrorCode::InvalidArgument, "id count does not match instance count");
  if (std::set<std::size_t>(ids.begin(), ids.end()).size() != n)
    throw Error(ErrorCode::InvalidArgument, "instance ids must be unique");
  return {ids.begin(), ids.end()};
}

struct Context {
  const DistanceMatrix& dist;
  std::span<const std::string> labels;
  std::vector<std::size_t> ids;

  // Strict ordering of candidate neighbors of `from`: distance, then id.
  bool closer(std::size_t from, std::size_t a, std::size_t b) const {
    const double da = dist(from, a);
    const double db = dist(from, b);
    if (da != db) return da < db;
    return ids[a] < ids[b];
  }

  // The `count` nearest positions to `from` among `candidates`, excluding
  // `from` itself.
  std::vector<std::size_t> nearest(std::size_t from, std::span<const std::size_t> candidates,
                                   std::size_t count) const {
    std::vector<std::size_t> pool;
    pool.reserve(candidates.size());
    for (std::size_t c : candidates)
      if (c != from) pool.push_back(c);
    const std::size_t take = std::min(count, pool.size());
    std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take), pool.end(),
                      [&](std::size_t a, std::size_t b) { return closer(from, a, b); });
    pool.resize(take);
    return pool;
  }
};

void validate_inputs(const DistanceMatrix& distances, std::span<const std::string> labels,
                     std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  if (labels.size() != distances.size())
    throw Error(ErrorCode::InvalidArgument, "label count does not match distance matrix");
  if (labels.size() < k + 1)
    throw Error(ErrorCode::TooFewInstances,
                "need at least k + 1 = " + std::to_string(k + 1) + " instances, got " +
                    std::to_string(labels.size()));
}

void require_two_labels(std::span<const std::string> labels) {
  if (std::set<std::string_view>(labels.begin(), labels.end()).size() < 2)
    throw Error(ErrorCode::NoEnemies, "drop3 needs at least two labels");
}

std::vector<std::string> labels_of(std::span<const LabeledInstance> instances) {
  std::vector<std::string> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) out.push_back(inst.label);
  return out;
}

std::vector<std::size_t> ids_of(std::span<const LabeledInstance> instances) {
  std::vector<std::size_t> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) out.push_back(inst.id);
  return out;
}

// ENN votes on positions; returns the removal mask.
std::vector<bool> enn_mask(const Context& ctx, std::size_t k) {
  const std::size_t n = ctx.labels.size();
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<bool> remove(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::map<std::string_view, std::size_t> votes;
    for (std::size_t j : ctx.nearest(i, all, k)) ++votes[ctx.labels[j]];
    std::size_t best = 0;
    std::size_t best_count = 0;
    const std::string_view* winner = nullptr;
    for (const auto& [label, count] : votes) {
      if (count > best) {
        best = count;
        best_count = 1;
        winner = &label;
      } else if (count == best) {
        ++best_count;
      }
    }
    remove[i] = best_count == 1 && *winner != ctx.labels[i];
  }
  return remove;
}

std::vector<std::vector<std::size_t>> derive_associates(const NeighborGraph& g) {
  std::vector<std::vector<std::size_t>> assoc(g.neighbors.size());
  for (std::size_t q = 0; q < g.neighbors.size(); ++q) {
    if (!g.tracked[q]) continue;
    const auto& list = g.neighbors[q];
    const std::size_t first_k = std::min(g.k, list.size());
    for (std::size_t i = 0; i < first_k; ++i) assoc[list[i]].push_back(q);
  }
  for (auto& a : assoc) std::sort(a.begin(), a.end());
  return assoc;
}

}  // namespace

std::string_view to_string(RemovalStage s) noexcept { return s == RemovalStage::Enn ? "enn" : "drop3"; }

DistanceMatrix DistanceMatrix::cosine(std::span<const LabeledInstance> instances) {
  DistanceMatrix m(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (std::size_t j = i + 1; j < instances.size(); ++j)
      m.set(i, j, cosine_distance(instances[i].vector, instances[j].vector));
  return m;
}

std::vector<std::size_t> knn(const SparseVector& query, std::span<const LabeledInstance> pool,
                             std::size_t k) {
  if (pool.empty()) throw Error(ErrorCode::EmptyInput, "knn pool is empty");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(pool.size());
  for (const auto& inst : pool) scored.emplace_back(cosine_distance(query, inst.vector), inst.id);
  const std::size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end());
  std::vector<std::size_t> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(scored[i].second);
  return out;
}

std::optional<std::string> classify_by_neighbors(std::span<const std::size_t> neighbors,
                                                 std::span<const std::string> labels, std::size_t k) {
  const std::size_t n = std::min(k, neighbors.size());
  if (n == 0) return std::nullopt;
  std::map<std::string_view, std::size_t> votes;
  for (std::size_t i = 0; i < n; ++i) ++votes[labels[neighbors[i]]];
  std::size_t best = 0;
  for (const auto& [label, count] : votes) best = std::max(best, count);
  // Among labels tied at the top, the one held by the nearest neighbor wins.
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& label = labels[neighbors[i]];
    if (votes[label] == best) return label;
  }
  return std::nullopt;
}

SelectionResult enn_filter(const DistanceMatrix& distances, std::span<const std::string> labels,
                           std::size_t k, std::span<const std::size_t> ids) {
  validate_inputs(distances, labels, k);
  Context ctx{distances, labels, default_ids(labels.size(), ids)};
  const std::vector<bool> remove = enn_mask(ctx, k);

  SelectionResult r;
  r.k = k;
  r.distance = "precomputed";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (remove[i]) {
      r.removed.push_back({ctx.ids[i], RemovalStage::Enn, r.removed.size()});
    } else {
      r.retained.push_back(ctx.ids[i]);
    }
  }
  return r;
}

SelectionResult enn_filter(std::span<const LabeledInstance> instances, std::size_t k) {
  const auto labels = labels_of(instances);
  const auto ids = ids_of(instances);
  if (instances.size() < k + 1 || k < 1) {
    const DistanceMatrix empty(instances.size());
    validate_inputs(empty, labels, k);
  }
  SelectionResult r = enn_filter(DistanceMatrix::cosine(instances), labels, k, ids);
  r.distance = "cosine";
  return r;
}

SelectionResult drop3(const DistanceMatrix& distances, std::span<const std::string> labels,
                      const Drop3Options& options, std::span<const std::size_t> ids) {
  const std::size_t k = options.k;
  require_two_labels(labels);
  validate_inputs(distances, labels, k);

  const std::size_t n = labels.size();
  Context ctx{distances, labels, default_ids(n, ids)};

  SelectionResult r;
  r.k = k;
  r.distance = "precomputed";

  // Stage 1: ENN.
  const std::vector<bool> enn_removed = enn_mask(ctx, k);
  std::vector<std::size_t> survivors;
  for (std::size_t i = 0; i < n; ++i) {
    if (enn_removed[i]) {
      r.removed.push_back({ctx.ids[i], RemovalStage::Enn, r.removed.size()});
    } else {
      survivors.push_back(i);
    }
  }

  NeighborGraph g;
  g.k = k;
  g.tracked.assign(n, false);
  g.retained.assign(n, false);
  g.neighbors.assign(n, {});
  for (std::size_t p : survivors) g.tracked[p] = g.retained[p] = true;
  for (std::size_t p : survivors) g.neighbors[p] = ctx.nearest(p, survivors, k + 1);
  g.associates = derive_associates(g);

  // Stage 2 order: distance to nearest enemy, descending; ties by id.
  std::vector<double> enemy(n, std::numeric_limits<double>::infinity());
  for (std::size_t p : survivors)
    for (std::size_t q : survivors)
      if (labels[q] != labels[p]) enemy[p] = std::min(enemy[p], distances(p, q));
  std::vector<std::size_t> order = survivors;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (enemy[a] != enemy[b]) return enemy[a] > enemy[b];
    return ctx.ids[a] < ctx.ids[b];
  });

  for (std::size_t p : order) {
    r.processing_order.push_back(ctx.ids[p]);
    Drop3Decision d;
    d.id = ctx.ids[p];
    d.nearest_enemy_distance = enemy[p];
    d.associates = g.associates[p].size();
    for (std::size_t a : g.associates[p]) {
      const auto& list = g.neighbors[a];
      if (classify_by_neighbors(list, labels, k) == labels[a]) ++d.with;
      std::vector<std::size_t> without;
      without.reserve(list.size());
      for (std::size_t q : list)
        if (q != p) without.push_back(q);
      if (classify_by_neighbors(without, labels, k) == labels[a]) ++d.without;
    }
    d.removed = d.without >= d.with;
    r.decisions.push_back(d);
    if (!d.removed) continue;

    g.retained[p] = false;
    r.removed.push_back({ctx.ids[p], RemovalStage::Drop3, r.removed.size()});

    // Every tracked list holding p drops it and takes the next-nearest
    // retained instance not already listed.
    for (std::size_t q = 0; q < n; ++q) {
      if (!g.tracked[q]) continue;
      auto& list = g.neighbors[q];
      const auto it = std::find(list.begin(), list.end(), p);
      if (it == list.end()) continue;
      list.erase(it);
      std::optional<std::size_t> next;
      for (std::size_t c : survivors) {
        if (c == q || !g.retained[c]) continue;
        if (std::find(list.begin(), list.end(), c) != list.end()) continue;
        if (!next || ctx.closer(q, c, *next)) next = c;
      }
      if (next) list.push_back(*next);
    }
    g.associates = derive_associates(g);
    if (options.on_removal) options.on_removal(g, p);
  }

  for (std::size_t p : order)
    if (g.retained[p]) r.retained.push_back(ctx.ids[p]);
  return r;
}

SelectionResult drop3(std::span<const LabeledInstance> instances, const Drop3Options& options) {
  const auto labels = labels_of(instances);
  const auto ids = ids_of(instances);
  require_two_labels(labels);
  if (instances.size() < options.k + 1 || options.k < 1) {
    const DistanceMatrix empty(instances.size());
    validate_inputs(empty, labels, options.k);
  }
  SelectionResult r = drop3(DistanceMatrix::cosine(instances), labels, options, ids);
  r.distance = "cosine";
  return r;
}

HottestTitles hottest_titles(std::span<const NewsDocument> corpus, const std::string& country,
                             std::size_t k, std::optional<std::size_t> max_output) {
  std::string wanted = country;
  for (char& c : wanted) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));

  std::vector<const NewsDocument*> docs;
  for (const auto& doc : corpus)
    if (doc.country == wanted) docs.push_back(&doc);
  if (docs.empty()) throw Error(ErrorCode::UnknownCountry, "no documents for country '" + country + "'");

  std::vector<std::vector<std::string>> titles;
  titles.reserve(docs.size());
  for (const NewsDocument* doc : docs)
    titles.push_back(doc->cleaned ? doc->title_tokens : tokenize(strip_non_ascii(doc->title)));

  TfIdfOptions opts;
  opts.stopwords = normalized_english_stopwords();
  const TfIdfModel model = build_model(titles, std::move(opts));

  HottestTitles out;
  std::vector<LabeledInstance> instances;
  std::vector<const NewsDocument*> by_id;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    SparseVector v = model.vectorize(titles[i]);
    if (v.is_zero()) {
      out.excluded_ids.push_back(docs[i]->id);
      continue;
    }
    instances.push_back({by_id.size(), std::move(v), std::string(to_string(docs[i]->category))});
    by_id.push_back(docs[i]);
  }

  Drop3Options d3;
  d3.k = k;
  out.selection = drop3(instances, d3);
  for (std::size_t id : out.selection.retained) {
    if (max_output && out.titles.size() >= *max_output) break;
    const NewsDocument* doc = by_id[id];
    out.titles.push_back({doc->id, doc->title, doc->category, out.titles.size() + 1});
  }
  return out;
}

}  // namespace newsforge
