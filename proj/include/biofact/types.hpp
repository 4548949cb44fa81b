#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace biofact {

enum class Category { Disease, Gene };

enum class Source { Literature, Generated };

enum class LinkType { DiseaseGene, GeneGene, DiseaseDisease };

inline constexpr LinkType kLinkTypes[] = {LinkType::DiseaseGene, LinkType::GeneGene,
                                          LinkType::DiseaseDisease};

std::string_view to_string(Category c);
std::string_view to_string(Source s);
std::string_view to_string(LinkType t);

std::optional<Category> parse_category(std::string_view s);
std::optional<Source> parse_source(std::string_view s);
std::optional<LinkType> parse_link_type(std::string_view s);

// Short label used in report columns: "DG", "GG", "DD".
std::string_view short_label(LinkType t);

LinkType link_type_of(Category a, Category b);

}  // namespace biofact
