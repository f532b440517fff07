#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "newsforge/corpus.hpp"
#include "newsforge/sentiment.hpp"

namespace newsforge {

struct SentimentCell {
  std::string country;
  Category category = Category::Politics;
  double mean = 0.0;
  std::size_t count = 0;
  std::optional<double> scaled;  // set by scale_per_country

  bool operator==(const SentimentCell&) const = default;
};

/// Country x category means. Cells are kept sorted by country code, then by
/// category; a (country, category) pair with no documents has no cell.
struct SentimentTable {
  std::vector<SentimentCell> cells;

  const SentimentCell* find(const std::string& country, Category category) const;
  std::vector<std::string> countries() const;
  bool operator==(const SentimentTable&) const = default;
};

struct RankingReport {
  /// Per country: categories from most positive to most negative mean.
  std::map<std::string, std::vector<Category>> by_country;
  /// Per category: countries from most positive to most negative mean.
  std::map<Category, std::vector<std::string>> by_category;
};

/// Mean fused sentiment per (country, category). Throws Error(EmptyInput)
/// for no documents. Cell sums run over sorted values, so the result does
/// not depend on document order.
SentimentTable aggregate(std::span<const ScoredDocument> documents);

/// Min-max scaling within each country; a country whose means are all equal
/// gets 0.5 everywhere.
SentimentTable scale_per_country(SentimentTable table);

/// Orders by unscaled mean, descending; equal means fall back to
/// alphabetical order of the category name or country code.
RankingReport rank(const SentimentTable& table);

/// Radar chart: one spoke per category, one closed polygon per country with
/// vertex radius equal to the scaled value (absent cells sit at the center).
/// Requires a scaled table.
std::string render_radar_svg(const SentimentTable& table);
void emit_radar(const SentimentTable& table, const std::string& path);

enum class ReportFormat { Csv, Json };

/// CSV columns: country,category,mean,scaled,count. JSON carries the same
/// cells plus the rankings. Numbers are written in shortest round-trip form.
std::string render_report(const SentimentTable& table, const RankingReport& rankings, ReportFormat format);
void emit_report(const SentimentTable& table, const RankingReport& rankings, ReportFormat format,
                 const std::string& path);
/// Inverse of the JSON form of render_report (cells only).
SentimentTable table_from_json(const std::string& text);

std::string rankings_to_json(const RankingReport& rankings);

struct PipelineSummary {
  std::size_t documents_read = 0;
  std::size_t documents_scored = 0;
  std::vector<std::string> skipped_ids;
  SentimentTable table;
  RankingReport rankings;
};

/// fuse -> aggregate -> scale -> rank, then writes sentiment.csv,
/// sentiment.json, radar.svg and rankings.json into `out_dir` (created if
/// missing).
PipelineSummary run_report_pipeline(std::span<const NewsDocument> docs, const SentenceScorer& scorer,
                                    FusionMethod method, const FusionConfig& config,
                                    const std::string& out_dir);

}  // namespace newsforge
