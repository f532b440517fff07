#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "newsforge/corpus.hpp"
#include "newsforge/vectorize.hpp"

namespace newsforge {

struct LabeledInstance {
  std::size_t id = 0;  // unique; breaks distance ties (ascending)
  SparseVector vector;
  std::string label;
};

/// Dense symmetric pairwise distances between n instances.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  static DistanceMatrix cosine(std::span<const LabeledInstance> instances);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value) noexcept {
    d_[i * n_ + j] = value;
    d_[j * n_ + i] = value;
  }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

/// The k pool instances closest to `query` by cosine distance, ascending,
/// ties by ascending id. Returns ids. Throws Error(EmptyInput) for an empty
/// pool and Error(InvalidArgument) for k < 1.
std::vector<std::size_t> knn(const SparseVector& query, std::span<const LabeledInstance> pool,
                             std::size_t k);

enum class RemovalStage { Enn, Drop3 };

std::string_view to_string(RemovalStage s) noexcept;

struct Removal {
  std::size_t id = 0;
  RemovalStage stage = RemovalStage::Enn;
  std::size_t order = 0;  // 0-based position in the overall removal sequence
};

/// One DROP3 keep/remove decision.
struct Drop3Decision {
  std::size_t id = 0;
  double nearest_enemy_distance = std::numeric_limits<double>::infinity();
  std::size_t associates = 0;
  std::size_t with = 0;     // associates classified correctly with the instance
  std::size_t without = 0;  // ... and without it
  bool removed = false;
};

struct SelectionResult {
  /// ENN: input order. DROP3: processing order (farthest from an enemy
  /// first), which is also the retention rank.
  std::vector<std::size_t> retained;
  std::vector<Removal> removed;
  /// DROP3 only: ENN survivors in the order they were examined.
  std::vector<std::size_t> processing_order;
  std::vector<Drop3Decision> decisions;
  std::size_t k = 0;
  std::string distance;
};

/// Per-instance neighbor lists (positions into the instance array) and the
/// associate sets derived from the first k entries of each list.
struct NeighborGraph {
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> neighbors;  // length <= k + 1, nearest first
  std::vector<std::vector<std::size_t>> associates; // ascending position
  std::vector<bool> tracked;                        // ENN survivor
  std::vector<bool> retained;                       // still in the selected set
};

struct Drop3Options {
  std::size_t k = 3;
  /// Invoked after every stage-2 removal with the repaired graph and the
  /// position of the removed instance.
  std::function<void(const NeighborGraph&, std::size_t removed_position)> on_removal;
};

/// Wilson's edited nearest neighbor: an instance is removed when a single
/// label other than its own wins the plurality vote of its k nearest
/// neighbors. Votes are computed on the original set and applied together.
/// Throws Error(TooFewInstances) with fewer than k + 1 instances.
SelectionResult enn_filter(std::span<const LabeledInstance> instances, std::size_t k = 3);
/// Same, over a precomputed distance matrix; ids are positions.
SelectionResult enn_filter(const DistanceMatrix& distances, std::span<const std::string> labels,
                           std::size_t k = 3, std::span<const std::size_t> ids = {});

/// ENN pass, then DROP3 removal in descending nearest-enemy order: an
/// instance goes when at least as many of its associates are classified
/// correctly without it as with it. Classification is a plurality vote of
/// the first k neighbors; a tied vote goes to the nearest tied label.
/// Throws Error(NoEnemies) for single-label input.
SelectionResult drop3(std::span<const LabeledInstance> instances, const Drop3Options& options = {});
SelectionResult drop3(const DistanceMatrix& distances, std::span<const std::string> labels,
                      const Drop3Options& options = {}, std::span<const std::size_t> ids = {});

/// Vote of the given neighbor positions (first k used); nullopt when empty.
std::optional<std::string> classify_by_neighbors(std::span<const std::size_t> neighbors,
                                                 std::span<const std::string> labels, std::size_t k);

struct HottestTitle {
  std::string id;
  std::string title;
  Category category = Category::Politics;
  std::size_t rank = 0;  // 1-based retention rank
};

struct HottestTitles {
  std::vector<HottestTitle> titles;
  /// Documents left out because their title vector is zero.
  std::vector<std::string> excluded_ids;
  SelectionResult selection;
};

/// Title selection for one country: tf-idf over the country's titles
/// (English stopwords removed), labeled by category, reduced with drop3.
/// Throws Error(UnknownCountry) when no document matches `country`.
HottestTitles hottest_titles(std::span<const NewsDocument> corpus, const std::string& country,
                             std::size_t k = 3, std::optional<std::size_t> max_output = std::nullopt);

}  // namespace newsforge
