#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biofact/corpus.hpp"
#include "biofact/graph.hpp"
#include "biofact/matcher.hpp"
#include "biofact/metrics.hpp"

namespace biofact {

struct LinkCheck {
  std::size_t candidate_links = 0;
  std::size_t overlapping_links = 0;
  std::size_t reference_links = 0;  // counted reference edges of this type

  // overlapping / candidate; nullopt when there are no candidate links.
  std::optional<double> precision() const;
  // overlapping / reference, a supplementary coverage figure.
  std::optional<double> reference_coverage() const;

  bool operator==(const LinkCheck&) const = default;
};

struct FactCheckOptions {
  // A reference edge counts only if at least this many records support it.
  std::size_t min_support = 1;
};

struct FactCheckReport {
  // Indexed by position in kLinkTypes (DG, GG, DD).
  std::array<LinkCheck, 3> by_type{};
  std::size_t candidate_total = 0;
  std::size_t overlap_total = 0;
  std::size_t reference_total = 0;
  // Candidate edges without a counterpart in the reference: unverified
  // under the closed-world reading, either novel or noise. Canonical order.
  std::vector<BioEdge> novel_links;
  GraphProvenance candidate;
  GraphProvenance reference;
  std::size_t min_support = 1;

  const LinkCheck& for_type(LinkType t) const;
  std::optional<double> overall_precision() const;

  bool operator==(const FactCheckReport&) const = default;
};

// A candidate edge coincides iff its canonical pair is a reference edge
// (with support >= min_support); weights are ignored. Throws
// ValidationError when the graphs were built against different ontologies.
FactCheckReport fact_check(const BioGraph& candidate, const BioGraph& reference,
                           const FactCheckOptions& options = {});

std::string to_json(const FactCheckReport& report);

enum class ReferenceMode { PerSample, Full };

std::string_view to_string(ReferenceMode m);
std::optional<ReferenceMode> parse_reference_mode(std::string_view s);

struct ExperimentOptions {
  std::size_t sample_size = 250;
  std::size_t sample_count = 10;
  std::vector<std::uint64_t> seeds;  // empty -> 1..sample_count
  MatchOptions match;
  GraphOptions graph;
  FactCheckOptions check;
  ReferenceMode reference = ReferenceMode::PerSample;
  bool extended_metrics = false;
  std::size_t threads = 0;
};

struct SampleResult {
  std::size_t index = 0;  // 1-based position in the seed list
  std::uint64_t seed = 0;
  GraphMetrics generated;
  GraphMetrics literature;
  FactCheckReport check;

  bool operator==(const SampleResult&) const = default;
};

struct SeriesStats {
  std::optional<double> min;
  std::optional<double> max;
  std::optional<double> mean;
  std::size_t samples = 0;  // samples with a defined value

  bool operator==(const SeriesStats&) const = default;
};

SeriesStats summarize(const std::vector<std::optional<double>>& values);

struct ExperimentReport {
  ExperimentOptions options;
  std::vector<std::uint64_t> seeds;
  std::vector<SampleResult> samples;
  std::array<SeriesStats, 3> precision_by_type{};  // kLinkTypes order
  SeriesStats overall_precision;
  std::string pipeline_hash;
  std::string config_json;  // canonical config that fed the hash
};

// For each seed: sample both corpora with that seed, extract, build both
// graphs, compute metrics and the fact check. Output depends only on the
// inputs, never on options.threads. A failing sample aborts the run with
// a ValidationError naming its seed.
ExperimentReport run_experiment(const RecordCollection& generated,
                                const RecordCollection& literature, const ChunkIndex& index,
                                const ExperimentOptions& options);

// Canonical config rendering hashed into pipeline_hash; excludes threads.
std::string experiment_config_json(const ExperimentOptions& options,
                                   const std::vector<std::uint64_t>& seeds);

std::string to_json(const ExperimentReport& report);
ComparisonTable comparison_table(const ExperimentReport& report);

// "DG precision min/mean/max over k samples: a/b/c" plus the overall series.
std::string summary_line(const ExperimentReport& report);

}  // namespace biofact
