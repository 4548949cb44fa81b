#include "biofact/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

#include "biofact/error.hpp"
#include "biofact/text.hpp"

namespace biofact {

using ojson = nlohmann::ordered_json;

std::optional<std::int64_t> ne_ratio_hundredths(std::size_t node_count, std::size_t edge_count) {
  if (edge_count == 0) return std::nullopt;
  // floor(100 n / e + 1/2) = floor((200 n + e) / 2e)
  const auto n = static_cast<std::int64_t>(node_count);
  const auto e = static_cast<std::int64_t>(edge_count);
  return (200 * n + e) / (2 * e);
}

std::string format_hundredths(std::int64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(v / 100),
                static_cast<long long>(v % 100));
  return buf;
}

GraphMetrics compute_metrics(const BioGraph& graph, bool extended) {
  GraphMetrics m;
  m.node_count = graph.node_count();
  m.edge_count = graph.edge_count();
  m.ne_ratio_centi = ne_ratio_hundredths(m.node_count, m.edge_count);
  m.disease_count = graph.count_nodes(Category::Disease);
  m.gene_count = graph.count_nodes(Category::Gene);
  m.gg_links = graph.count_edges(LinkType::GeneGene);
  m.dg_links = graph.count_edges(LinkType::DiseaseGene);
  m.dd_links = graph.count_edges(LinkType::DiseaseDisease);
  m.provenance = graph.provenance;
  if (m.disease_count + m.gene_count != m.node_count)
    throw std::logic_error("node partition identity violated");
  if (m.gg_links + m.dg_links + m.dd_links != m.edge_count)
    throw std::logic_error("edge partition identity violated");
  if (extended && m.node_count > 0) {
    std::map<std::string_view, std::size_t> degree;
    for (const auto& [id, n] : graph.nodes) degree[id] = 0;
    for (const auto& [k, e] : graph.edges) {
      ++degree[k.first];
      ++degree[k.second];
    }
    DegreeStats d;
    d.min = degree.begin()->second;
    std::size_t total = 0;
    for (const auto& [id, deg] : degree) {
      d.min = std::min(d.min, deg);
      d.max = std::max(d.max, deg);
      total += deg;
    }
    d.mean = static_cast<double>(total) / static_cast<double>(degree.size());
    m.degree = d;
  }
  return m;
}

namespace {

ojson ratio_json(const std::optional<std::int64_t>& centi) {
  if (!centi) return nullptr;
  return static_cast<double>(*centi) / 100.0;
}

ojson metrics_object(const GraphMetrics& m) {
  ojson j = {{"node_count", m.node_count},
             {"edge_count", m.edge_count},
             {"ne_ratio", ratio_json(m.ne_ratio_centi)},
             {"disease_count", m.disease_count},
             {"gene_count", m.gene_count},
             {"gg_links", m.gg_links},
             {"dg_links", m.dg_links},
             {"dd_links", m.dd_links}};
  if (m.degree)
    j["degree"] = {{"min", m.degree->min}, {"max", m.degree->max}, {"mean", m.degree->mean}};
  j["provenance"] = {{"source", to_string(m.provenance.source)},
                     {"corpus_digest", m.provenance.corpus_digest},
                     {"ontology_digest", m.provenance.ontology_digest},
                     {"config_digest", m.provenance.config_digest}};
  return j;
}

std::vector<std::optional<double>> row_values(const std::vector<GraphMetrics>& list,
                                              std::size_t row) {
  std::vector<std::optional<double>> out;
  for (const auto& m : list) {
    switch (row) {
      case 0: out.emplace_back(static_cast<double>(m.node_count)); break;
      case 1: out.emplace_back(static_cast<double>(m.edge_count)); break;
      case 2: out.push_back(m.ne_ratio()); break;
      case 3: out.emplace_back(static_cast<double>(m.disease_count)); break;
      case 4: out.emplace_back(static_cast<double>(m.gene_count)); break;
      case 5: out.emplace_back(static_cast<double>(m.gg_links)); break;
      case 6: out.emplace_back(static_cast<double>(m.dg_links)); break;
      default: out.emplace_back(static_cast<double>(m.dd_links)); break;
    }
  }
  return out;
}

bool is_ratio_row(std::string_view metric) { return metric == kMetricRows[2]; }

std::string cell(const std::optional<double>& v, bool ratio) {
  if (!v) return "";
  char buf[64];
  if (ratio)
    std::snprintf(buf, sizeof buf, "%.2f", *v);
  else
    std::snprintf(buf, sizeof buf, "%.0f", *v);
  return buf;
}

std::optional<double> parse_cell(const std::string& s) {
  std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw ValidationError("bad numeric cell \"" + t + "\" in comparison table");
  return v;
}

ojson cell_json(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

}  // namespace

std::string to_json(const GraphMetrics& m) { return metrics_object(m).dump(2) + "\n"; }

ComparisonTable compare(const std::vector<GraphMetrics>& generated,
                        const std::vector<GraphMetrics>& literature) {
  if (generated.empty()) throw ValidationError("no metrics to compare");
  if (generated.size() != literature.size())
    throw ValidationError("metric list lengths differ: " + std::to_string(generated.size()) +
                          " generated vs " + std::to_string(literature.size()) + " literature");
  ComparisonTable t;
  t.sample_count = generated.size();
  for (std::size_t r = 0; r < std::size(kMetricRows); ++r)
    t.rows.push_back({std::string(kMetricRows[r]), row_values(generated, r), row_values(literature, r)});
  return t;
}

std::string to_csv(const ComparisonTable& table) {
  std::string out = "Source,Metric";
  for (std::size_t i = 1; i <= table.sample_count; ++i) out += ",G" + std::to_string(i);
  out += "\n";
  for (const auto& row : table.rows) {
    bool ratio = is_ratio_row(row.metric);
    out += "Generated," + csv_field(row.metric);
    for (const auto& v : row.generated) out += "," + cell(v, ratio);
    out += "\nLiterature,";
    for (const auto& v : row.literature) out += "," + cell(v, ratio);
    out += "\n";
  }
  return out;
}

ComparisonTable parse_comparison_csv(std::string_view text) {
  ComparisonTable t;
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    if (!trim(line).empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  if (lines.empty()) throw ValidationError("empty comparison table");
  auto header = parse_csv_line(lines[0]);
  if (header.size() < 3 || header[0] != "Source" || header[1] != "Metric")
    throw ValidationError("comparison table header must start with Source,Metric");
  t.sample_count = header.size() - 2;
  if ((lines.size() - 1) % 2 != 0) throw ValidationError("comparison table rows must come in pairs");
  for (std::size_t i = 1; i < lines.size(); i += 2) {
    auto gen = parse_csv_line(lines[i]);
    auto lit = parse_csv_line(lines[i + 1]);
    if (gen.size() != header.size() || lit.size() != header.size())
      throw ValidationError("comparison table row has the wrong number of cells");
    if (gen[0] != "Generated" || lit[0] != "Literature")
      throw ValidationError("comparison table rows must be Generated then Literature");
    ComparisonRow row;
    row.metric = gen[1];
    for (std::size_t c = 2; c < header.size(); ++c) {
      row.generated.push_back(parse_cell(gen[c]));
      row.literature.push_back(parse_cell(lit[c]));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string to_json(const ComparisonTable& table) {
  ojson samples = ojson::array();
  for (std::size_t s = 0; s < table.sample_count; ++s) {
    ojson gen = ojson::object(), lit = ojson::object();
    for (const auto& row : table.rows) {
      gen[row.metric] = cell_json(row.generated[s]);
      lit[row.metric] = cell_json(row.literature[s]);
    }
    samples.push_back({{"sample", s + 1}, {"generated", std::move(gen)}, {"literature", std::move(lit)}});
  }
  ojson doc = {{"sample_count", table.sample_count}, {"samples", std::move(samples)}};
  return doc.dump(2) + "\n";
}

std::string plot_data_csv(const ComparisonRow& row) {
  bool ratio = is_ratio_row(row.metric);
  std::string out = "sample,generated,literature\n";
  for (std::size_t i = 0; i < row.generated.size(); ++i)
    out += std::to_string(i + 1) + "," + cell(row.generated[i], ratio) + "," +
           cell(row.literature[i], ratio) + "\n";
  return out;
}

std::string metric_slug(std::string_view metric) {
  std::string out;
  for (const auto& tok : normalize(metric)) {
    std::string t;
    for (char c : tok) t += (c == '-') ? '_' : c;
    if (!out.empty()) out += '_';
    out += t;
  }
  return out;
}

}  // namespace biofact
