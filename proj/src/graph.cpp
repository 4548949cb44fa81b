#include "biofact/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

#include "biofact/digest.hpp"
#include "biofact/error.hpp"
#include "biofact/parallel.hpp"

namespace biofact {

using ojson = nlohmann::ordered_json;

EdgeKey make_edge_key(std::string_view a, std::string_view b) {
  if (b < a) std::swap(a, b);
  return {std::string(a), std::string(b)};
}

std::string_view to_string(AmbiguityPolicy p) { return p == AmbiguityPolicy::All ? "all" : "skip"; }

std::optional<AmbiguityPolicy> parse_ambiguity(std::string_view s) {
  if (s == "all") return AmbiguityPolicy::All;
  if (s == "skip") return AmbiguityPolicy::Skip;
  return std::nullopt;
}

std::size_t BioGraph::count_nodes(Category c) const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [c](const auto& kv) { return kv.second.category == c; }));
}

std::size_t BioGraph::count_edges(LinkType t) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [t](const auto& kv) { return kv.second.link_type == t; }));
}

std::vector<const BioNode*> BioGraph::nodes_by_category(Category c) const {
  std::vector<const BioNode*> out;
  for (const auto& [id, n] : nodes)
    if (n.category == c) out.push_back(&n);
  return out;
}

std::vector<const BioEdge*> BioGraph::edges_by_type(LinkType t) const {
  std::vector<const BioEdge*> out;
  for (const auto& [k, e] : edges)
    if (e.link_type == t) out.push_back(&e);
  return out;
}

void BioGraph::check_invariants() const {
  for (const auto& [id, n] : nodes) {
    if (id != n.term_id) throw std::logic_error("node keyed under a different id: " + id);
    if (n.mention_count == 0) throw std::logic_error("node without mentions: " + id);
  }
  for (const auto& [key, e] : edges) {
    if (key != e.endpoints) throw std::logic_error("edge keyed under a different pair");
    if (!(key.first < key.second)) throw std::logic_error("non-canonical or self-loop edge " + key.first);
    auto a = nodes.find(key.first), b = nodes.find(key.second);
    if (a == nodes.end() || b == nodes.end())
      throw std::logic_error("edge endpoint missing from nodes: " + key.first + "," + key.second);
    if (link_type_of(a->second.category, b->second.category) != e.link_type)
      throw std::logic_error("link type disagrees with endpoint categories");
    if (e.support == 0) throw std::logic_error("edge without support");
  }
}

std::string graph_config_digest(const GraphOptions& options) {
  Sha256 h;
  h.add_field("biofact-graph-config-v1");
  h.add_field(options.window ? std::to_string(*options.window) : "unbounded");
  h.add_field(to_string(options.ambiguity));
  h.add_field("closest-mention");
  return h.hex_digest();
}

namespace {

struct Mention {
  const std::string* term_id;
  Category category;
  std::size_t position;
};

struct Observation {
  EdgeKey key;
  LinkType type;
  std::size_t distance;
};

struct RecordObservations {
  std::vector<Mention> mentions;
  std::vector<Observation> pairs;
};

RecordObservations observe(const MatchSet& set, const GraphOptions& options) {
  RecordObservations out;
  for (const auto& m : set.matches) {
    if (options.ambiguity == AmbiguityPolicy::Skip && m.term_ids.size() > 1) continue;
    for (const auto& id : m.term_ids) out.mentions.push_back({&id, m.category, m.token_position});
  }
  // Group positions per term.
  std::vector<const std::string*> ids;
  std::unordered_map<std::string_view, std::size_t> slot;
  std::vector<std::vector<std::size_t>> positions;
  std::vector<Category> cats;
  for (const auto& m : out.mentions) {
    auto [it, fresh] = slot.emplace(*m.term_id, ids.size());
    if (fresh) {
      ids.push_back(m.term_id);
      positions.emplace_back();
      cats.push_back(m.category);
    }
    positions[it->second].push_back(m.position);
  }
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      std::optional<std::size_t> best;
      for (std::size_t pa : positions[i])
        for (std::size_t pb : positions[j]) {
          if (pa == pb) continue;
          std::size_t d = pa > pb ? pa - pb : pb - pa;
          if (!best || d < *best) best = d;
        }
      if (!best) continue;
      if (options.window && *best > *options.window) continue;
      out.pairs.push_back({make_edge_key(*ids[i], *ids[j]), link_type_of(cats[i], cats[j]), *best});
    }
  return out;
}

}  // namespace

BioGraph build_graph(const CorpusMatches& matches, const ChunkIndex& index,
                     const GraphOptions& options) {
  for (const auto& set : matches.sets)
    if (set.source != matches.source)
      throw ValidationError("match sets from mixed sources (record " + set.record_id + ")");

  std::vector<RecordObservations> per_record(matches.sets.size());
  parallel_for(matches.sets.size(), options.threads,
               [&](std::size_t i) { per_record[i] = observe(matches.sets[i], options); });

  BioGraph g;
  for (const auto& rec : per_record) {
    for (const auto& m : rec.mentions) {
      auto it = g.nodes.find(*m.term_id);
      if (it == g.nodes.end()) {
        const TermInfo* info = index.term(*m.term_id);
        if (!info) throw ValidationError("match references unknown term id " + *m.term_id);
        if (info->category != m.category)
          throw ValidationError("match category disagrees with index for " + *m.term_id);
        it = g.nodes.emplace(*m.term_id, BioNode{*m.term_id, m.category, info->name, 0}).first;
      }
      ++it->second.mention_count;
    }
    for (const auto& obs : rec.pairs) {
      auto [it, fresh] = g.edges.try_emplace(obs.key, BioEdge{obs.key, obs.type, obs.distance, 0});
      BioEdge& e = it->second;
      e.weight = std::min(e.weight, obs.distance);
      ++e.support;
    }
  }

  g.provenance.source = matches.source;
  g.provenance.corpus_digest = matches.corpus_digest;
  g.provenance.ontology_digest = index.digest();
  g.provenance.config_digest = graph_config_digest(options);
  g.provenance.window = options.window;
  g.provenance.ambiguity = options.ambiguity;
  g.provenance.records = matches.sets.size();
  g.check_invariants();
  return g;
}

std::string to_json(const BioGraph& graph) {
  const auto& p = graph.provenance;
  ojson prov = {{"source", to_string(p.source)},
                {"corpus_digest", p.corpus_digest},
                {"ontology_digest", p.ontology_digest},
                {"config_digest", p.config_digest},
                {"window", p.window ? ojson(*p.window) : ojson(nullptr)},
                {"ambiguity", to_string(p.ambiguity)},
                {"distance_rule", p.distance_rule},
                {"records", p.records}};
  ojson nodes = ojson::array();
  for (const auto& [id, n] : graph.nodes)
    nodes.push_back({{"term_id", n.term_id},
                     {"category", to_string(n.category)},
                     {"name", n.display_name},
                     {"mentions", n.mention_count}});
  ojson edges = ojson::array();
  for (const auto& [k, e] : graph.edges)
    edges.push_back({{"term_a", k.first},
                     {"term_b", k.second},
                     {"link_type", to_string(e.link_type)},
                     {"weight", e.weight},
                     {"support", e.support}});
  ojson doc = {{"format", "biofact-graph-v1"},
               {"provenance", std::move(prov)},
               {"nodes", std::move(nodes)},
               {"edges", std::move(edges)}};
  return doc.dump(2) + "\n";
}

BioGraph parse_graph_json(std::string_view text) {
  BioGraph g;
  try {
    ojson doc = ojson::parse(text);
    if (doc.value("format", "") != "biofact-graph-v1")
      throw ValidationError("not a biofact-graph-v1 document");
    const auto& p = doc.at("provenance");
    auto src = parse_source(p.at("source").get<std::string>());
    auto amb = parse_ambiguity(p.at("ambiguity").get<std::string>());
    if (!src || !amb) throw ValidationError("bad provenance tags in graph file");
    g.provenance.source = *src;
    g.provenance.ambiguity = *amb;
    g.provenance.corpus_digest = p.at("corpus_digest").get<std::string>();
    g.provenance.ontology_digest = p.at("ontology_digest").get<std::string>();
    g.provenance.config_digest = p.at("config_digest").get<std::string>();
    if (!p.at("window").is_null()) g.provenance.window = p.at("window").get<std::size_t>();
    g.provenance.distance_rule = p.at("distance_rule").get<std::string>();
    g.provenance.records = p.at("records").get<std::size_t>();
    for (const auto& jn : doc.at("nodes")) {
      BioNode n;
      n.term_id = jn.at("term_id").get<std::string>();
      auto cat = parse_category(jn.at("category").get<std::string>());
      if (!cat) throw ValidationError("bad node category for " + n.term_id);
      n.category = *cat;
      n.display_name = jn.at("name").get<std::string>();
      n.mention_count = jn.at("mentions").get<std::size_t>();
      if (!g.nodes.emplace(n.term_id, n).second)
        throw ValidationError("duplicate node " + n.term_id);
    }
    for (const auto& je : doc.at("edges")) {
      BioEdge e;
      e.endpoints = make_edge_key(je.at("term_a").get<std::string>(), je.at("term_b").get<std::string>());
      auto t = parse_link_type(je.at("link_type").get<std::string>());
      if (!t) throw ValidationError("bad link type");
      e.link_type = *t;
      e.weight = je.at("weight").get<std::size_t>();
      e.support = je.at("support").get<std::size_t>();
      if (!g.edges.emplace(e.endpoints, e).second)
        throw ValidationError("duplicate edge " + e.endpoints.first + "," + e.endpoints.second);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed graph file: ") + e.what());
  }
  try {
    g.check_invariants();
  } catch (const std::logic_error& e) {
    throw ValidationError(std::string("invalid graph file: ") + e.what());
  }
  return g;
}

std::string to_edge_csv(const BioGraph& graph) {
  std::string out = "term_a,term_b,link_type,weight,support\n";
  for (const auto& [k, e] : graph.edges) {
    out += csv_field(k.first) + "," + csv_field(k.second) + "," + std::string(to_string(e.link_type)) +
           "," + std::to_string(e.weight) + "," + std::to_string(e.support) + "\n";
  }
  return out;
}

}  // namespace biofact
