#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biofact/corpus.hpp"
#include "biofact/ontology.hpp"
#include "biofact/text.hpp"
#include "biofact/types.hpp"

namespace biofact {

enum class MatchKind { FullTerm, Bigram, Unigram };

std::string_view to_string(MatchKind k);
std::optional<MatchKind> parse_match_kind(std::string_view s);

struct TermMatch {
  std::string record_id;
  std::size_t token_position = 0;
  std::size_t token_length = 1;
  std::string surface;  // matched tokens joined by single spaces
  MatchKind kind = MatchKind::Unigram;
  std::vector<std::string> term_ids;  // sorted, non-empty, one category
  Category category = Category::Disease;

  bool operator==(const TermMatch&) const = default;
};

struct MatchSet {
  std::string record_id;
  Source source = Source::Literature;
  std::vector<TermMatch> matches;  // non-decreasing token_position

  bool operator==(const MatchSet&) const = default;
};

enum class ScanFields { Abstract, TitleAndAbstract };

std::optional<ScanFields> parse_scan_fields(std::string_view s);
std::string_view to_string(ScanFields f);

struct MatchOptions {
  ScanFields fields = ScanFields::TitleAndAbstract;
};

// Placed between title and body tokens. Normalization never yields '|', so
// no indexed surface can contain it.
inline constexpr std::string_view kFieldBoundary = "|";

// Normalized tokens the scanner sees: title tokens, the boundary token (only
// when the title has tokens), then body tokens.
TokenSeq record_tokens(const Record& record, ScanFields fields);

// Single left-to-right pass. At each position and for each category the
// longest multi-token full term wins, then the bigram, then the unigram;
// a candidate lying entirely inside an earlier same-category match is
// suppressed. One-token terms are reported as Unigram matches.
MatchSet extract_matches(const Record& record, const ChunkIndex& index,
                         const MatchOptions& options = {});

struct ExtractionStats {
  std::size_t records = 0;
  std::size_t matches = 0;
  std::size_t disease_matches = 0;
  std::size_t gene_matches = 0;
};

struct CorpusMatches {
  Source source = Source::Literature;
  std::string corpus_digest;
  std::vector<MatchSet> sets;  // collection order
  ExtractionStats stats;
};

// One MatchSet per record in collection order. Output is independent of
// the worker count (0 = machine parallelism).
CorpusMatches extract_corpus(const RecordCollection& collection, const ChunkIndex& index,
                             const MatchOptions& options = {}, std::size_t threads = 0);

// JSON-lines dump: a header line {"corpus_digest","source"} followed by one
// MatchSet per line.
std::string to_jsonl(const CorpusMatches& matches);
CorpusMatches parse_matches_jsonl(std::string_view text);

}  // namespace biofact
