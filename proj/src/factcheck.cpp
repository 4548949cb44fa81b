#include "biofact/factcheck.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"

#include "biofact/digest.hpp"
#include "biofact/error.hpp"
#include "biofact/parallel.hpp"

namespace biofact {

using ojson = nlohmann::ordered_json;

namespace {

std::size_t type_slot(LinkType t) {
  for (std::size_t i = 0; i < std::size(kLinkTypes); ++i)
    if (kLinkTypes[i] == t) return i;
  return 0;
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

ojson opt_json(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson provenance_json(const GraphProvenance& p) {
  return {{"source", to_string(p.source)},
          {"corpus_digest", p.corpus_digest},
          {"ontology_digest", p.ontology_digest},
          {"config_digest", p.config_digest},
          {"records", p.records}};
}

}  // namespace

std::optional<double> LinkCheck::precision() const { return ratio(overlapping_links, candidate_links); }

std::optional<double> LinkCheck::reference_coverage() const {
  return ratio(overlapping_links, reference_links);
}

const LinkCheck& FactCheckReport::for_type(LinkType t) const { return by_type[type_slot(t)]; }

std::optional<double> FactCheckReport::overall_precision() const {
  return ratio(overlap_total, candidate_total);
}

FactCheckReport fact_check(const BioGraph& candidate, const BioGraph& reference,
                           const FactCheckOptions& options) {
  if (candidate.provenance.ontology_digest != reference.provenance.ontology_digest)
    throw ValidationError("graphs were built against different ontologies; ids are not comparable");
  FactCheckReport r;
  r.candidate = candidate.provenance;
  r.reference = reference.provenance;
  r.min_support = options.min_support;
  for (const auto& [key, e] : reference.edges) {
    if (e.support < options.min_support) continue;
    ++r.by_type[type_slot(e.link_type)].reference_links;
    ++r.reference_total;
  }
  for (const auto& [key, e] : candidate.edges) {
    LinkCheck& c = r.by_type[type_slot(e.link_type)];
    ++c.candidate_links;
    ++r.candidate_total;
    auto hit = reference.edges.find(key);
    if (hit != reference.edges.end() && hit->second.support >= options.min_support) {
      ++c.overlapping_links;
      ++r.overlap_total;
    } else {
      r.novel_links.push_back(e);
    }
  }
  return r;
}

std::string to_json(const FactCheckReport& r) {
  ojson types = ojson::object();
  for (LinkType t : kLinkTypes) {
    const LinkCheck& c = r.for_type(t);
    types[std::string(to_string(t))] = {{"candidate_links", c.candidate_links},
                                        {"overlapping_links", c.overlapping_links},
                                        {"precision", opt_json(c.precision())},
                                        {"reference_links", c.reference_links},
                                        {"reference_coverage", opt_json(c.reference_coverage())}};
  }
  ojson novel = ojson::array();
  for (const auto& e : r.novel_links)
    novel.push_back({{"term_a", e.endpoints.first},
                     {"term_b", e.endpoints.second},
                     {"link_type", to_string(e.link_type)},
                     {"weight", e.weight},
                     {"support", e.support}});
  ojson doc = {{"format", "biofact-factcheck-v1"},
               {"min_reference_support", r.min_support},
               {"by_type", std::move(types)},
               {"overall",
                {{"candidate_total", r.candidate_total},
                 {"overlap_total", r.overlap_total},
                 {"precision", opt_json(r.overall_precision())},
                 {"reference_total", r.reference_total}}},
               {"novel_or_noise_links", std::move(novel)},
               {"candidate", provenance_json(r.candidate)},
               {"reference", provenance_json(r.reference)}};
  return doc.dump(2) + "\n";
}

std::string_view to_string(ReferenceMode m) { return m == ReferenceMode::PerSample ? "sample" : "full"; }

std::optional<ReferenceMode> parse_reference_mode(std::string_view s) {
  if (s == "sample") return ReferenceMode::PerSample;
  if (s == "full") return ReferenceMode::Full;
  return std::nullopt;
}

SeriesStats summarize(const std::vector<std::optional<double>>& values) {
  SeriesStats s;
  double total = 0;
  for (const auto& v : values) {
    if (!v) continue;
    s.min = s.min ? std::min(*s.min, *v) : *v;
    s.max = s.max ? std::max(*s.max, *v) : *v;
    total += *v;
    ++s.samples;
  }
  if (s.samples) s.mean = total / static_cast<double>(s.samples);
  return s;
}

std::string experiment_config_json(const ExperimentOptions& o, const std::vector<std::uint64_t>& seeds) {
  ojson j = {{"sample_size", o.sample_size},
             {"sample_count", o.sample_count},
             {"seeds", seeds},
             {"sampler", kSamplerId},
             {"fields", to_string(o.match.fields)},
             {"window", o.graph.window ? ojson(*o.graph.window) : ojson(nullptr)},
             {"ambiguity", to_string(o.graph.ambiguity)},
             {"distance_rule", "closest-mention"},
             {"min_reference_support", o.check.min_support},
             {"reference", to_string(o.reference)},
             {"extended_metrics", o.extended_metrics}};
  return j.dump();
}

ExperimentReport run_experiment(const RecordCollection& generated,
                                const RecordCollection& literature, const ChunkIndex& index,
                                const ExperimentOptions& options) {
  if (generated.source() != Source::Generated)
    throw ValidationError("candidate corpus must be tagged generated");
  if (literature.source() != Source::Literature)
    throw ValidationError("reference corpus must be tagged literature");
  if (options.sample_count == 0) throw ValidationError("sample count must be positive");

  ExperimentReport report;
  report.options = options;
  report.seeds = options.seeds;
  if (report.seeds.empty())
    for (std::uint64_t s = 1; s <= options.sample_count; ++s) report.seeds.push_back(s);
  if (report.seeds.size() != options.sample_count)
    throw ValidationError("seed list has " + std::to_string(report.seeds.size()) +
                          " entries but sample count is " + std::to_string(options.sample_count));
  for (const auto* c : {&generated, &literature})
    if (options.sample_size == 0 || options.sample_size > c->size())
      throw ValidationError("sample size " + std::to_string(options.sample_size) + " exceeds the " +
                            std::string(to_string(c->source())) + " corpus size " +
                            std::to_string(c->size()));

  report.config_json = experiment_config_json(options, report.seeds);
  {
    Sha256 h;
    h.add_field("biofact-experiment-v1");
    h.add_field(collection_digest(generated));
    h.add_field(collection_digest(literature));
    h.add_field(index.digest());
    h.add_field(report.config_json);
    report.pipeline_hash = h.hex_digest();
  }

  GraphOptions inner = options.graph;
  inner.threads = 1;
  std::optional<BioGraph> full_reference;
  if (options.reference == ReferenceMode::Full) {
    GraphOptions g = options.graph;
    g.threads = options.threads;
    full_reference = build_graph(extract_corpus(literature, index, options.match, options.threads),
                                 index, g);
  }

  report.samples.resize(report.seeds.size());
  parallel_for(report.seeds.size(), options.threads, [&](std::size_t i) {
    const std::uint64_t seed = report.seeds[i];
    try {
      auto gen_sample = sample(generated, options.sample_size, seed);
      auto lit_sample = sample(literature, options.sample_size, seed);
      BioGraph gen_graph = build_graph(extract_corpus(gen_sample, index, options.match, 1), index, inner);
      BioGraph lit_graph = build_graph(extract_corpus(lit_sample, index, options.match, 1), index, inner);
      SampleResult& r = report.samples[i];
      r.index = i + 1;
      r.seed = seed;
      r.generated = compute_metrics(gen_graph, options.extended_metrics);
      r.literature = compute_metrics(lit_graph, options.extended_metrics);
      r.check = fact_check(gen_graph, full_reference ? *full_reference : lit_graph, options.check);
    } catch (const std::exception& e) {
      throw ValidationError("sample " + std::to_string(i + 1) + " (seed " + std::to_string(seed) +
                            ") failed: " + e.what());
    }
  });

  for (std::size_t t = 0; t < std::size(kLinkTypes); ++t) {
    std::vector<std::optional<double>> series;
    for (const auto& s : report.samples) series.push_back(s.check.by_type[t].precision());
    report.precision_by_type[t] = summarize(series);
  }
  std::vector<std::optional<double>> overall;
  for (const auto& s : report.samples) overall.push_back(s.check.overall_precision());
  report.overall_precision = summarize(overall);
  return report;
}

namespace {

ojson series_json(const SeriesStats& s) {
  return {{"min", opt_json(s.min)},
          {"mean", opt_json(s.mean)},
          {"max", opt_json(s.max)},
          {"samples", s.samples}};
}

ojson metrics_json(const GraphMetrics& m) {
  ojson j = {{"node_count", m.node_count},
             {"edge_count", m.edge_count},
             {"ne_ratio", m.ne_ratio_centi ? ojson(*m.ne_ratio()) : ojson(nullptr)},
             {"disease_count", m.disease_count},
             {"gene_count", m.gene_count},
             {"gg_links", m.gg_links},
             {"dg_links", m.dg_links},
             {"dd_links", m.dd_links},
             {"corpus_digest", m.provenance.corpus_digest}};
  if (m.degree)
    j["degree"] = {{"min", m.degree->min}, {"max", m.degree->max}, {"mean", m.degree->mean}};
  return j;
}

}  // namespace

std::string to_json(const ExperimentReport& report) {
  ojson samples = ojson::array();
  for (const auto& s : report.samples) {
    ojson check = ojson::object();
    for (LinkType t : kLinkTypes) {
      const LinkCheck& c = s.check.for_type(t);
      check[std::string(to_string(t))] = {{"candidate_links", c.candidate_links},
                                          {"overlapping_links", c.overlapping_links},
                                          {"precision", opt_json(c.precision())},
                                          {"reference_links", c.reference_links},
                                          {"reference_coverage", opt_json(c.reference_coverage())}};
    }
    check["overall"] = {{"candidate_total", s.check.candidate_total},
                        {"overlap_total", s.check.overlap_total},
                        {"precision", opt_json(s.check.overall_precision())},
                        {"novel_or_noise", s.check.novel_links.size()}};
    samples.push_back({{"index", s.index},
                       {"seed", s.seed},
                       {"generated", metrics_json(s.generated)},
                       {"literature", metrics_json(s.literature)},
                       {"fact_check", std::move(check)}});
  }
  ojson agg = ojson::object();
  for (std::size_t t = 0; t < std::size(kLinkTypes); ++t)
    agg[std::string(to_string(kLinkTypes[t]))] = series_json(report.precision_by_type[t]);
  agg["overall"] = series_json(report.overall_precision);
  ojson doc = {{"format", "biofact-experiment-v1"},
               {"pipeline_hash", report.pipeline_hash},
               {"config", ojson::parse(report.config_json)},
               {"notes",
                {"literature and generated samples are drawn independently per seed; samples "
                 "for different seeds may overlap",
                 "precision counts candidate links present in the reference; links absent from "
                 "the reference are unverified (novel-or-noise), not false"}},
               {"samples", std::move(samples)},
               {"precision", std::move(agg)}};
  return doc.dump(2) + "\n";
}

ComparisonTable comparison_table(const ExperimentReport& report) {
  std::vector<GraphMetrics> gen, lit;
  for (const auto& s : report.samples) {
    gen.push_back(s.generated);
    lit.push_back(s.literature);
  }
  return compare(gen, lit);
}

std::string summary_line(const ExperimentReport& report) {
  auto fmt = [](const SeriesStats& s) {
    if (!s.samples) return std::string("undefined");
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.4f/%.4f/%.4f", *s.min, *s.mean, *s.max);
    return std::string(buf);
  };
  return "DG precision min/mean/max over " + std::to_string(report.samples.size()) +
         " samples: " + fmt(report.precision_by_type[type_slot(LinkType::DiseaseGene)]) +
         "; overall " + fmt(report.overall_precision);
}

}  // namespace biofact
