#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "biofact/types.hpp"

namespace biofact {

struct Record {
  std::string record_id;
  std::string title;
  std::string body;
  Source source = Source::Literature;
};

// Homogeneous, ordered, id-unique set of abstracts.
class RecordCollection {
 public:
  explicit RecordCollection(Source source) : source_(source) {}

  // Throws ValidationError on empty id, empty body, duplicate id or a
  // source mismatch.
  void add(Record r);
  bool contains(std::string_view record_id) const;

  Source source() const { return source_; }
  const std::vector<Record>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  auto begin() const { return records_.begin(); }
  auto end() const { return records_.end(); }

 private:
  Source source_;
  std::vector<Record> records_;
  std::unordered_set<std::string> ids_;
};

enum class CorpusFormat { JsonArray, JsonLines };

std::optional<CorpusFormat> parse_corpus_format(std::string_view s);

struct FieldMap {
  std::string id;
  std::string title;
  std::string abstract;

  // "GPT-ID"/"Title"/"Abstract" for generated, "pmid"/"title"/"abstract"
  // for literature.
  static FieldMap defaults(Source source);
};

struct LoadOptions {
  CorpusFormat format = CorpusFormat::JsonArray;
  FieldMap fields;  // empty names mean the source defaults
  bool lenient = false;
};

struct LoadResult {
  RecordCollection collection;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

// Strict mode throws ValidationError naming the offending record index;
// lenient mode skips bad records and counts them.
LoadResult parse_collection(std::string_view text, Source source, const LoadOptions& options);
LoadResult load_collection(const std::filesystem::path& path, Source source,
                           const LoadOptions& options);

// JSON array of {id, title, abstract} objects under the given field names.
std::string to_json_array(const RecordCollection& collection, const FieldMap& fields);

// Identifier of the pinned sampling procedure; recorded in reports.
inline constexpr std::string_view kSamplerId = "mt19937_64+fisher-yates-partial+rejection-modulo";

// Deterministic draw of k distinct indices from [0, n): Fisher-Yates partial
// shuffle driven by std::mt19937_64 (whose output sequence is fixed by the
// C++ standard) with rejection sampling for unbiased bounded draws.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed);

// Uniform sample without replacement in draw order. Throws ValidationError
// unless 0 < sample_size <= collection.size().
RecordCollection sample(const RecordCollection& collection, std::size_t sample_size,
                        std::uint64_t seed);

// SHA-256 over the ordered (id, title, body) triples and the source tag.
std::string collection_digest(const RecordCollection& collection);

}  // namespace biofact
