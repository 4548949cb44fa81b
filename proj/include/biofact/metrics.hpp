#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biofact/graph.hpp"

namespace biofact {

// node_count / edge_count in hundredths, rounded half-up; nullopt when
// edge_count is zero. Exact integer arithmetic.
std::optional<std::int64_t> ne_ratio_hundredths(std::size_t node_count, std::size_t edge_count);

// "0.64" style rendering of a hundredths value.
std::string format_hundredths(std::int64_t v);

struct DegreeStats {
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;

  bool operator==(const DegreeStats&) const = default;
};

struct GraphMetrics {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::optional<std::int64_t> ne_ratio_centi;
  std::size_t disease_count = 0;
  std::size_t gene_count = 0;
  std::size_t gg_links = 0;
  std::size_t dg_links = 0;
  std::size_t dd_links = 0;
  std::optional<DegreeStats> degree;  // only with extended metrics
  GraphProvenance provenance;

  std::optional<double> ne_ratio() const {
    if (!ne_ratio_centi) return std::nullopt;
    return static_cast<double>(*ne_ratio_centi) / 100.0;
  }

  bool operator==(const GraphMetrics&) const = default;
};

// Throws std::logic_error if either partition identity fails.
GraphMetrics compute_metrics(const BioGraph& graph, bool extended = false);

std::string to_json(const GraphMetrics& m);

// Row labels in the published layout.
inline constexpr std::string_view kMetricRows[] = {
    "No of Nodes",     "No. of Edges",       "N/E Ratio",
    "No. of Diseases", "No. of Genes",       "Gene-Gene Link No.",
    "Disease-Gene Link No.", "Disease-Disease Link No."};

struct ComparisonRow {
  std::string metric;
  std::vector<std::optional<double>> generated;
  std::vector<std::optional<double>> literature;

  bool operator==(const ComparisonRow&) const = default;
};

struct ComparisonTable {
  std::size_t sample_count = 0;
  std::vector<ComparisonRow> rows;

  bool operator==(const ComparisonTable&) const = default;
};

// Throws ValidationError unless both lists are non-empty and equally long.
ComparisonTable compare(const std::vector<GraphMetrics>& generated,
                        const std::vector<GraphMetrics>& literature);

// Source,Metric,G1..Gk with a Generated and a Literature row per metric.
std::string to_csv(const ComparisonTable& table);
ComparisonTable parse_comparison_csv(std::string_view text);
std::string to_json(const ComparisonTable& table);

// sample,generated,literature for one metric row.
std::string plot_data_csv(const ComparisonRow& row);

// File-name slug for a metric row ("No. of Edges" -> "no_of_edges").
std::string metric_slug(std::string_view metric);

}  // namespace biofact
