#include "biofact/types.hpp"

namespace biofact {

std::string_view to_string(Category c) {
  return c == Category::Disease ? "disease" : "gene";
}

std::string_view to_string(Source s) {
  return s == Source::Literature ? "literature" : "generated";
}

std::string_view to_string(LinkType t) {
  switch (t) {
    case LinkType::DiseaseGene:
      return "disease-gene";
    case LinkType::GeneGene:
      return "gene-gene";
    case LinkType::DiseaseDisease:
      return "disease-disease";
  }
  return "";
}

std::string_view short_label(LinkType t) {
  switch (t) {
    case LinkType::DiseaseGene:
      return "DG";
    case LinkType::GeneGene:
      return "GG";
    case LinkType::DiseaseDisease:
      return "DD";
  }
  return "";
}

std::optional<Category> parse_category(std::string_view s) {
  if (s == "disease") return Category::Disease;
  if (s == "gene") return Category::Gene;
  return std::nullopt;
}

std::optional<Source> parse_source(std::string_view s) {
  if (s == "literature") return Source::Literature;
  if (s == "generated") return Source::Generated;
  return std::nullopt;
}

std::optional<LinkType> parse_link_type(std::string_view s) {
  for (LinkType t : kLinkTypes)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

LinkType link_type_of(Category a, Category b) {
  if (a != b) return LinkType::DiseaseGene;
  return a == Category::Gene ? LinkType::GeneGene : LinkType::DiseaseDisease;
}

}  // namespace biofact
