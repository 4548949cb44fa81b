#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biofact/matcher.hpp"
#include "biofact/ontology.hpp"
#include "biofact/types.hpp"

namespace biofact {

struct BioNode {
  std::string term_id;
  Category category = Category::Disease;
  std::string display_name;
  std::size_t mention_count = 0;

  bool operator==(const BioNode&) const = default;
};

// Canonical unordered pair: first < second.
using EdgeKey = std::pair<std::string, std::string>;

EdgeKey make_edge_key(std::string_view a, std::string_view b);

struct BioEdge {
  EdgeKey endpoints;
  LinkType link_type = LinkType::DiseaseGene;
  std::size_t weight = 0;   // minimum token distance over contributing records
  std::size_t support = 0;  // number of contributing records

  bool operator==(const BioEdge&) const = default;
};

enum class AmbiguityPolicy { All, Skip };

std::string_view to_string(AmbiguityPolicy p);
std::optional<AmbiguityPolicy> parse_ambiguity(std::string_view s);

struct GraphOptions {
  std::optional<std::size_t> window;  // drop observations farther apart than this
  AmbiguityPolicy ambiguity = AmbiguityPolicy::All;
  std::size_t threads = 0;
};

struct GraphProvenance {
  Source source = Source::Literature;
  std::string corpus_digest;
  std::string ontology_digest;
  std::string config_digest;
  std::optional<std::size_t> window;
  AmbiguityPolicy ambiguity = AmbiguityPolicy::All;
  std::string distance_rule = "closest-mention";
  std::size_t records = 0;

  bool operator==(const GraphProvenance&) const = default;
};

class BioGraph {
 public:
  std::map<std::string, BioNode> nodes;
  std::map<EdgeKey, BioEdge> edges;
  GraphProvenance provenance;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t edge_count() const { return edges.size(); }
  std::size_t count_nodes(Category c) const;
  std::size_t count_edges(LinkType t) const;
  std::vector<const BioNode*> nodes_by_category(Category c) const;
  std::vector<const BioEdge*> edges_by_type(LinkType t) const;

  // Throws std::logic_error if an edge endpoint is missing, an edge is a
  // self-loop, or a link type disagrees with its endpoint categories.
  void check_invariants() const;

  bool operator==(const BioGraph&) const = default;
};

// Every unordered pair of distinct terms mentioned in one record is an
// observation at distance min |pos_a - pos_b| over their mentions; mentions
// at the same token position never pair. Observations aggregate across
// records by minimum distance and record count. Throws ValidationError when
// the sets carry mixed source tags or reference ids absent from the index.
BioGraph build_graph(const CorpusMatches& matches, const ChunkIndex& index,
                     const GraphOptions& options = {});

std::string graph_config_digest(const GraphOptions& options);

std::string to_json(const BioGraph& graph);
BioGraph parse_graph_json(std::string_view text);

// term_a,term_b,link_type,weight,support
std::string to_edge_csv(const BioGraph& graph);

}  // namespace biofact
