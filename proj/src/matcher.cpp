#include "biofact/matcher.hpp"

#include "json.hpp"

#include "biofact/error.hpp"
#include "biofact/parallel.hpp"

namespace biofact {

using ojson = nlohmann::ordered_json;

std::string_view to_string(MatchKind k) {
  switch (k) {
    case MatchKind::FullTerm:
      return "full";
    case MatchKind::Bigram:
      return "bigram";
    case MatchKind::Unigram:
      return "unigram";
  }
  return "";
}

std::optional<MatchKind> parse_match_kind(std::string_view s) {
  if (s == "full") return MatchKind::FullTerm;
  if (s == "bigram") return MatchKind::Bigram;
  if (s == "unigram") return MatchKind::Unigram;
  return std::nullopt;
}

std::optional<ScanFields> parse_scan_fields(std::string_view s) {
  if (s == "abstract") return ScanFields::Abstract;
  if (s == "title+abstract") return ScanFields::TitleAndAbstract;
  return std::nullopt;
}

std::string_view to_string(ScanFields f) {
  return f == ScanFields::Abstract ? "abstract" : "title+abstract";
}

TokenSeq record_tokens(const Record& record, ScanFields fields) {
  TokenSeq tokens;
  if (fields == ScanFields::TitleAndAbstract) {
    tokens = normalize(record.title);
    if (!tokens.empty()) tokens.emplace_back(kFieldBoundary);
  }
  TokenSeq body = normalize(record.body);
  tokens.insert(tokens.end(), std::make_move_iterator(body.begin()),
                std::make_move_iterator(body.end()));
  return tokens;
}

namespace {

struct Candidate {
  const ChunkEntry* entry = nullptr;
  std::size_t length = 0;
  MatchKind kind = MatchKind::Unigram;
};

}  // namespace

MatchSet extract_matches(const Record& record, const ChunkIndex& index,
                         const MatchOptions& options) {
  MatchSet out;
  out.record_id = record.record_id;
  out.source = record.source;
  if (index.empty()) return out;

  const TokenSeq tokens = record_tokens(record, options.fields);
  const std::size_t n = tokens.size();
  constexpr Category kCats[] = {Category::Disease, Category::Gene};
  std::size_t covered_end[2] = {0, 0};
  std::string key;
  std::vector<std::pair<const ChunkEntry*, std::size_t>> fulls;

  for (std::size_t p = 0; p < n; ++p) {
    // Multi-token full terms starting at p, shortest first.
    fulls.clear();
    key = tokens[p];
    for (std::size_t end = p + 1; end < n && index.is_full_prefix(key); ++end) {
      key += ' ';
      key += tokens[end];
      if (const ChunkEntry* e = index.full(key)) fulls.emplace_back(e, end - p + 1);
    }
    const ChunkEntry* bigram = nullptr;
    if (p + 1 < n) {
      key = tokens[p];
      key += ' ';
      key += tokens[p + 1];
      bigram = index.bigram(key);
    }
    const ChunkEntry* unigram = index.unigram(tokens[p]);

    for (int ci = 0; ci < 2; ++ci) {
      const Category cat = kCats[ci];
      Candidate best;
      for (auto it = fulls.rbegin(); it != fulls.rend(); ++it)
        if (!it->first->ids(cat).empty()) {
          best = {it->first, it->second, MatchKind::FullTerm};
          break;
        }
      if (!best.entry && bigram && !bigram->ids(cat).empty())
        best = {bigram, 2, MatchKind::Bigram};
      if (!best.entry && unigram && !unigram->ids(cat).empty())
        best = {unigram, 1, MatchKind::Unigram};
      if (!best.entry) continue;
      if (p + best.length <= covered_end[ci]) continue;
      covered_end[ci] = p + best.length;

      TermMatch m;
      m.record_id = record.record_id;
      m.token_position = p;
      m.token_length = best.length;
      m.surface = tokens[p];
      for (std::size_t i = 1; i < best.length; ++i) {
        m.surface += ' ';
        m.surface += tokens[p + i];
      }
      m.kind = best.kind;
      m.term_ids = best.entry->ids(cat);
      m.category = cat;
      out.matches.push_back(std::move(m));
    }
  }
  return out;
}

CorpusMatches extract_corpus(const RecordCollection& collection, const ChunkIndex& index,
                             const MatchOptions& options, std::size_t threads) {
  CorpusMatches out;
  out.source = collection.source();
  out.corpus_digest = collection_digest(collection);
  out.sets.resize(collection.size());
  parallel_for(collection.size(), threads, [&](std::size_t i) {
    out.sets[i] = extract_matches(collection.records()[i], index, options);
  });
  out.stats.records = collection.size();
  for (const auto& set : out.sets)
    for (const auto& m : set.matches) {
      ++out.stats.matches;
      if (m.category == Category::Disease)
        ++out.stats.disease_matches;
      else
        ++out.stats.gene_matches;
    }
  return out;
}

std::string to_jsonl(const CorpusMatches& matches) {
  std::string out;
  ojson header = {{"corpus_digest", matches.corpus_digest},
                  {"source", to_string(matches.source)}};
  out += header.dump() + "\n";
  for (const auto& set : matches.sets) {
    ojson line;
    line["record_id"] = set.record_id;
    line["source"] = to_string(set.source);
    ojson arr = ojson::array();
    for (const auto& m : set.matches)
      arr.push_back({{"pos", m.token_position},
                     {"len", m.token_length},
                     {"surface", m.surface},
                     {"kind", to_string(m.kind)},
                     {"category", to_string(m.category)},
                     {"term_ids", m.term_ids}});
    line["matches"] = std::move(arr);
    out += line.dump() + "\n";
  }
  return out;
}

CorpusMatches parse_matches_jsonl(std::string_view text) {
  CorpusMatches out;
  std::size_t pos = 0, line_no = 0;
  bool have_header = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (trim(line).empty()) continue;
    try {
      ojson j = ojson::parse(line);
      if (!have_header) {
        auto src = parse_source(j.at("source").get<std::string>());
        if (!src) throw ParseError("bad source tag in match dump header", line_no);
        out.source = *src;
        out.corpus_digest = j.at("corpus_digest").get<std::string>();
        have_header = true;
        continue;
      }
      MatchSet set;
      set.record_id = j.at("record_id").get<std::string>();
      auto src = parse_source(j.at("source").get<std::string>());
      if (!src) throw ParseError("bad source tag", line_no);
      set.source = *src;
      for (const auto& jm : j.at("matches")) {
        TermMatch m;
        m.record_id = set.record_id;
        m.token_position = jm.at("pos").get<std::size_t>();
        m.token_length = jm.at("len").get<std::size_t>();
        m.surface = jm.at("surface").get<std::string>();
        auto kind = parse_match_kind(jm.at("kind").get<std::string>());
        auto cat = parse_category(jm.at("category").get<std::string>());
        if (!kind || !cat) throw ParseError("bad match kind or category", line_no);
        m.kind = *kind;
        m.category = *cat;
        m.term_ids = jm.at("term_ids").get<std::vector<std::string>>();
        if (m.term_ids.empty()) throw ParseError("match without term ids", line_no);
        set.matches.push_back(std::move(m));
      }
      for (const auto& m : set.matches) {
        ++out.stats.matches;
        (m.category == Category::Disease ? out.stats.disease_matches : out.stats.gene_matches)++;
      }
      out.sets.push_back(std::move(set));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed match dump: ") + e.what(), line_no);
    }
  }
  if (!have_header) throw ValidationError("empty match dump");
  out.stats.records = out.sets.size();
  return out;
}

}  // namespace biofact
