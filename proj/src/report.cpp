#include "newsforge/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "newsforge/error.hpp"

namespace newsforge {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

bool cell_less(const SentimentCell& a, const SentimentCell& b) {
  if (a.country != b.country) return a.country < b.country;
  return a.category < b.category;
}

ordered_json rankings_json(const RankingReport& r) {
  ordered_json by_country = ordered_json::object();
  for (const auto& [country, cats] : r.by_country) {
    ordered_json arr = ordered_json::array();
    for (Category c : cats) arr.push_back(std::string(to_string(c)));
    by_country[country] = std::move(arr);
  }
  ordered_json by_category = ordered_json::object();
  for (Category c : kAllCategories) {
    auto it = r.by_category.find(c);
    if (it == r.by_category.end()) continue;
    by_category[std::string(to_string(c))] = it->second;
  }
  return ordered_json{{"by_country", by_country}, {"by_category", by_category}};
}

// Palette for country polygons; cycles when there are more countries.
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                   "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

const SentimentCell* SentimentTable::find(const std::string& country, Category category) const {
  SentimentCell key;
  key.country = country;
  key.category = category;
  auto it = std::lower_bound(cells.begin(), cells.end(), key, cell_less);
  if (it == cells.end() || it->country != country || it->category != category) return nullptr;
  return &*it;
}

std::vector<std::string> SentimentTable::countries() const {
  std::vector<std::string> out;
  for (const auto& c : cells)
    if (out.empty() || out.back() != c.country) out.push_back(c.country);
  return out;
}

SentimentTable aggregate(std::span<const ScoredDocument> documents) {
  if (documents.empty()) throw Error(ErrorCode::EmptyInput, "no scored documents to aggregate");
  std::map<std::pair<std::string, Category>, std::vector<double>> groups;
  for (const auto& d : documents) {
    if (!std::isfinite(d.sentiment))
      throw Error(ErrorCode::InvalidArgument, "non-finite sentiment for document '" + d.id + "'");
    groups[{d.country, d.category}].push_back(d.sentiment);
  }
  SentimentTable table;
  for (auto& [key, values] : groups) {
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    SentimentCell cell;
    cell.country = key.first;
    cell.category = key.second;
    cell.count = values.size();
    cell.mean = sum / static_cast<double>(values.size());
    table.cells.push_back(std::move(cell));
  }
  return table;
}

SentimentTable scale_per_country(SentimentTable table) {
  std::size_t begin = 0;
  while (begin < table.cells.size()) {
    std::size_t end = begin;
    double lo = table.cells[begin].mean, hi = lo;
    while (end < table.cells.size() && table.cells[end].country == table.cells[begin].country) {
      lo = std::min(lo, table.cells[end].mean);
      hi = std::max(hi, table.cells[end].mean);
      ++end;
    }
    for (std::size_t i = begin; i < end; ++i) {
      auto& cell = table.cells[i];
      cell.scaled = hi > lo ? (cell.mean - lo) / (hi - lo) : 0.5;
    }
    begin = end;
  }
  return table;
}

RankingReport rank(const SentimentTable& table) {
  RankingReport r;
  std::map<std::string, std::vector<const SentimentCell*>> per_country;
  std::map<Category, std::vector<const SentimentCell*>> per_category;
  for (const auto& c : table.cells) {
    per_country[c.country].push_back(&c);
    per_category[c.category].push_back(&c);
  }
  for (auto& [country, cells] : per_country) {
    std::sort(cells.begin(), cells.end(), [](const SentimentCell* a, const SentimentCell* b) {
      if (a->mean != b->mean) return a->mean > b->mean;
      return to_string(a->category) < to_string(b->category);
    });
    auto& out = r.by_country[country];
    for (const auto* c : cells) out.push_back(c->category);
  }
  for (auto& [category, cells] : per_category) {
    std::sort(cells.begin(), cells.end(), [](const SentimentCell* a, const SentimentCell* b) {
      if (a->mean != b->mean) return a->mean > b->mean;
      return a->country < b->country;
    });
    auto& out = r.by_category[category];
    for (const auto* c : cells) out.push_back(c->country);
  }
  return r;
}

std::string render_radar_svg(const SentimentTable& table) {
  for (const auto& c : table.cells)
    if (!c.scaled) throw Error(ErrorCode::InvalidArgument, "radar chart needs a scaled table");

  constexpr double size = 480.0, cx = 220.0, cy = 240.0, radius = 160.0;
  const std::size_t spokes = kAllCategories.size();
  auto point = [&](std::size_t i, double r) {
    const double angle = -std::numbers::pi / 2 + 2 * std::numbers::pi * static_cast<double>(i) / spokes;
    return std::pair{cx + r * radius * std::cos(angle), cy + r * radius * std::sin(angle)};
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 160 << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size + 160 << ' ' << size << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (double ring : {0.25, 0.5, 0.75, 1.0})
    svg << "<circle class=\"grid\" cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << ring * radius
        << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
  for (std::size_t i = 0; i < spokes; ++i) {
    const auto [x, y] = point(i, 1.0);
    const auto [lx, ly] = point(i, 1.12);
    svg << "<line class=\"spoke\" x1=\"" << cx << "\" y1=\"" << cy << "\" x2=\"" << x << "\" y2=\"" << y
        << "\" stroke=\"#999\"/>\n";
    svg << "<text class=\"spoke-label\" x=\"" << lx << "\" y=\"" << ly
        << "\" text-anchor=\"middle\" font-size=\"13\">" << to_string(kAllCategories[i]) << "</text>\n";
  }

  const auto countries = table.countries();
  for (std::size_t k = 0; k < countries.size(); ++k) {
    const char* color = kColors[k % std::size(kColors)];
    svg << "<polygon class=\"country\" data-country=\"" << countries[k] << "\" points=\"";
    for (std::size_t i = 0; i < spokes; ++i) {
      const SentimentCell* cell = table.find(countries[k], kAllCategories[i]);
      const auto [x, y] = point(i, cell ? *cell->scaled : 0.0);
      svg << (i ? " " : "") << x << ',' << y;
    }
    svg << "\" fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
  }
  for (std::size_t k = 0; k < countries.size(); ++k) {
    const char* color = kColors[k % std::size(kColors)];
    const double y = 30.0 + 22.0 * static_cast<double>(k);
    svg << "<g class=\"legend-entry\"><rect x=\"" << size << "\" y=\"" << y - 11 << "\" width=\"14\" height=\"14\" fill=\""
        << color << "\"/><text x=\"" << size + 20 << "\" y=\"" << y << "\" font-size=\"13\">" << countries[k]
        << "</text></g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_radar(const SentimentTable& table, const std::string& path) {
  write_file(path, render_radar_svg(table));
}

std::string render_report(const SentimentTable& table, const RankingReport& rankings, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::string out = "country,category,mean,scaled,count\n";
    for (const auto& c : table.cells) {
      out += c.country + ',' + std::string(to_string(c.category)) + ',' + num(c.mean) + ',' +
             (c.scaled ? num(*c.scaled) : std::string()) + ',' + std::to_string(c.count) + '\n';
    }
    return out;
  }
  ordered_json cells = ordered_json::array();
  for (const auto& c : table.cells) {
    ordered_json j{{"country", c.country}, {"category", std::string(to_string(c.category))}, {"mean", c.mean}};
    j["scaled"] = c.scaled ? ordered_json(*c.scaled) : ordered_json(nullptr);
    j["count"] = c.count;
    cells.push_back(std::move(j));
  }
  ordered_json doc{{"cells", cells}, {"rankings", rankings_json(rankings)}};
  return doc.dump(2) + '\n';
}

void emit_report(const SentimentTable& table, const RankingReport& rankings, ReportFormat format,
                 const std::string& path) {
  write_file(path, render_report(table, rankings, format));
}

SentimentTable table_from_json(const std::string& text) {
  SentimentTable table;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& j : doc.at("cells")) {
      SentimentCell c;
      c.country = j.at("country").get<std::string>();
      const auto cat = parse_category(j.at("category").get<std::string>());
      if (!cat) throw Error(ErrorCode::Parse, "unknown category in report");
      c.category = *cat;
      c.mean = j.at("mean").get<double>();
      if (!j.at("scaled").is_null()) c.scaled = j.at("scaled").get<double>();
      c.count = j.at("count").get<std::size_t>();
      table.cells.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed report JSON: ") + e.what());
  }
  std::sort(table.cells.begin(), table.cells.end(), cell_less);
  return table;
}

std::string rankings_to_json(const RankingReport& rankings) {
  return rankings_json(rankings).dump(2) + '\n';
}

PipelineSummary run_report_pipeline(std::span<const NewsDocument> docs, const SentenceScorer& scorer,
                                    FusionMethod method, const FusionConfig& config,
                                    const std::string& out_dir) {
  PipelineSummary s;
  s.documents_read = docs.size();
  CorpusFusion fused = fuse_corpus(docs, scorer, method, config);
  s.documents_scored = fused.documents.size();
  s.skipped_ids = std::move(fused.skipped_ids);
  s.table = scale_per_country(aggregate(fused.documents));
  s.rankings = rank(s.table);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + out_dir + "': " + ec.message());
  const std::filesystem::path dir(out_dir);
  emit_report(s.table, s.rankings, ReportFormat::Csv, (dir / "sentiment.csv").string());
  emit_report(s.table, s.rankings, ReportFormat::Json, (dir / "sentiment.json").string());
  emit_radar(s.table, (dir / "radar.svg").string());
  write_file((dir / "rankings.json").string(), rankings_to_json(s.rankings));
  return s;
}

}  // namespace newsforge
