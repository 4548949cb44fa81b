#include "biofact/corpus.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "biofact/digest.hpp"
#include "biofact/error.hpp"
#include "biofact/text.hpp"

namespace biofact {

using nlohmann::json;

void RecordCollection::add(Record r) {
  if (r.source != source_) throw ValidationError("record " + r.record_id + " has the wrong source tag");
  if (r.record_id.empty()) throw ValidationError("record with empty id");
  if (r.body.empty()) throw ValidationError("record " + r.record_id + " has an empty abstract");
  if (!ids_.insert(r.record_id).second)
    throw ValidationError("duplicate record id " + r.record_id);
  records_.push_back(std::move(r));
}

bool RecordCollection::contains(std::string_view record_id) const {
  return ids_.count(std::string(record_id)) > 0;
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view s) {
  if (s == "json" || s == "json-array" || s == "array") return CorpusFormat::JsonArray;
  if (s == "jsonl" || s == "json-lines" || s == "lines") return CorpusFormat::JsonLines;
  return std::nullopt;
}

FieldMap FieldMap::defaults(Source source) {
  if (source == Source::Generated) return {"GPT-ID", "Title", "Abstract"};
  return {"pmid", "title", "abstract"};
}

namespace {

// Returns false if the field is missing or not a string/number.
bool field_text(const json& obj, const std::string& name, std::string& out) {
  auto it = obj.find(name);
  if (it == obj.end()) return false;
  if (it->is_string()) {
    out = trim(it->get_ref<const std::string&>());
    return true;
  }
  if (it->is_number_integer() || it->is_number_unsigned()) {
    out = it->dump();
    return true;
  }
  return false;
}

}  // namespace

LoadResult parse_collection(std::string_view text, Source source, const LoadOptions& options) {
  LoadResult result{RecordCollection(source), 0, {}};
  std::vector<json> items;
  if (options.format == CorpusFormat::JsonArray) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ValidationError("corpus is not valid JSON");
    if (!doc.is_array()) throw ValidationError("corpus is not a JSON array");
    items = std::move(doc.get_ref<json::array_t&>());
  } else {
    std::size_t pos = 0, line_no = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      std::string line = trim(text.substr(pos, end - pos));
      pos = end + 1;
      if (line.empty()) continue;
      json obj = json::parse(line, nullptr, false);
      if (obj.is_discarded()) {
        if (!options.lenient) throw ParseError("invalid JSON line", line_no);
        ++result.skipped;
        result.warnings.push_back("line " + std::to_string(line_no) + ": invalid JSON");
        continue;
      }
      items.push_back(std::move(obj));
    }
  }

  auto reject = [&](std::size_t index, const std::string& why) {
    std::string msg = "record " + std::to_string(index) + ": " + why;
    if (!options.lenient) throw ValidationError(msg);
    ++result.skipped;
    result.warnings.push_back(msg);
  };

  // Unset field names fall back to the source's defaults.
  FieldMap f = FieldMap::defaults(source);
  if (!options.fields.id.empty()) f.id = options.fields.id;
  if (!options.fields.title.empty()) f.title = options.fields.title;
  if (!options.fields.abstract.empty()) f.abstract = options.fields.abstract;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const json& obj = items[i];
    if (!obj.is_object()) {
      reject(i, "not a JSON object");
      continue;
    }
    Record r;
    r.source = source;
    if (!field_text(obj, f.id, r.record_id)) {
      reject(i, "missing field \"" + f.id + "\"");
      continue;
    }
    if (!field_text(obj, f.title, r.title)) {
      reject(i, "missing field \"" + f.title + "\"");
      continue;
    }
    if (!field_text(obj, f.abstract, r.body)) {
      reject(i, "missing field \"" + f.abstract + "\"");
      continue;
    }
    if (r.record_id.empty()) {
      reject(i, "empty \"" + f.id + "\"");
      continue;
    }
    if (r.body.empty()) {
      reject(i, "empty \"" + f.abstract + "\"");
      continue;
    }
    if (result.collection.contains(r.record_id)) {
      reject(i, "duplicate record id " + r.record_id);
      continue;
    }
    result.collection.add(std::move(r));
  }
  return result;
}

LoadResult load_collection(const std::filesystem::path& path, Source source,
                           const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open corpus " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_collection(ss.str(), source, options);
}

std::string to_json_array(const RecordCollection& collection, const FieldMap& fields) {
  json arr = json::array();
  for (const auto& r : collection)
    arr.push_back({{fields.id, r.record_id}, {fields.title, r.title}, {fields.abstract, r.body}});
  return arr.dump(2) + "\n";
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k > n)
    throw ValidationError("sample size " + std::to_string(k) + " not in [1, " +
                          std::to_string(n) + "]");
  std::mt19937_64 rng(seed);
  auto bounded = [&](std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t x = rng();
      if (x >= threshold) return x % bound;
    }
  };
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(bounded(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

RecordCollection sample(const RecordCollection& collection, std::size_t sample_size,
                        std::uint64_t seed) {
  RecordCollection out(collection.source());
  for (std::size_t i : sample_indices(collection.size(), sample_size, seed))
    out.add(collection.records()[i]);
  return out;
}

std::string collection_digest(const RecordCollection& collection) {
  Sha256 h;
  h.add_field("biofact-collection-v1");
  h.add_field(to_string(collection.source()));
  h.add_field(std::to_string(collection.size()));
  for (const auto& r : collection) {
    h.add_field(r.record_id);
    h.add_field(r.title);
    h.add_field(r.body);
  }
  return h.hex_digest();
}

}  // namespace biofact
