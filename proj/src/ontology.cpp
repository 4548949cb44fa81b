#include "biofact/ontology.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "biofact/digest.hpp"
#include "biofact/error.hpp"

namespace biofact {

void TermCatalog::add(OntologyTerm term) {
  if (term.term_id.empty()) throw ValidationError("term with empty id");
  if (normalize(term.name).empty())
    throw ValidationError("term " + term.term_id + " has an empty name");
  if (term.category != category_)
    throw ValidationError("term " + term.term_id + " is a " +
                          std::string(to_string(term.category)) + " term in a " +
                          std::string(to_string(category_)) + " catalog");
  if (by_id_.count(term.term_id))
    throw ValidationError("duplicate term id " + term.term_id);
  by_id_.emplace(term.term_id, terms_.size());
  terms_.push_back(std::move(term));
}

const OntologyTerm* TermCatalog::find(std::string_view term_id) const {
  auto it = by_id_.find(term_id);
  return it == by_id_.end() ? nullptr : &terms_[it->second];
}

void TermCatalog::merge_synonyms(std::string_view term_id,
                                 const std::vector<std::string>& synonyms) {
  auto it = by_id_.find(term_id);
  if (it == by_id_.end()) throw ValidationError("unknown term id " + std::string(term_id));
  OntologyTerm& t = terms_[it->second];
  for (const auto& s : synonyms) {
    if (s.empty() || s == t.name) continue;
    if (std::find(t.synonyms.begin(), t.synonyms.end(), s) == t.synonyms.end())
      t.synonyms.push_back(s);
  }
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t end = s.find(sep, pos);
    if (end == std::string_view::npos) {
      out.emplace_back(s.substr(pos));
      return out;
    }
    out.emplace_back(s.substr(pos, end - pos));
    pos = end + 1;
  }
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

// Quoted text of an OBO synonym value: "text" SCOPE [xrefs].
std::string obo_quoted(std::string_view value, std::size_t line_no) {
  std::size_t open = value.find('"');
  if (open == std::string_view::npos) throw ParseError("synonym without quoted text", line_no);
  std::string out;
  for (std::size_t i = open + 1; i < value.size(); ++i) {
    char c = value[i];
    if (c == '\\' && i + 1 < value.size()) {
      out += value[++i];
    } else if (c == '"') {
      return out;
    } else {
      out += c;
    }
  }
  throw ParseError("unterminated synonym quote", line_no);
}

// Drops a trailing " ! comment" from an OBO id value.
std::string obo_strip_comment(std::string_view value) {
  std::size_t bang = value.find(" !");
  if (bang != std::string_view::npos) value = value.substr(0, bang);
  return trim(value);
}

}  // namespace

TermCatalog parse_disease_obo(std::istream& in) {
  TermCatalog catalog(Category::Disease);
  std::string line;
  std::size_t line_no = 0;
  bool any_content = false;
  bool in_term = false;
  std::size_t stanza_line = 0;
  OntologyTerm cur;

  auto finish = [&] {
    if (!in_term) return;
    if (cur.term_id.empty()) throw ParseError("[Term] stanza without id", stanza_line);
    if (cur.name.empty())
      throw ParseError("[Term] stanza " + cur.term_id + " without name", stanza_line);
    if (catalog.find(cur.term_id))
      throw ParseError("duplicate term id " + cur.term_id, stanza_line);
    catalog.add(std::move(cur));
    cur = OntologyTerm{};
    in_term = false;
  };

  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    std::string t = trim(line);
    if (t.empty()) continue;
    any_content = true;
    if (t.front() == '[') {
      finish();
      if (t == "[Term]") {
        in_term = true;
        stanza_line = line_no;
        cur.category = Category::Disease;
      }
      continue;
    }
    if (!in_term || t.front() == '!') continue;
    std::size_t colon = t.find(':');
    if (colon == std::string::npos) throw ParseError("malformed tag line", line_no);
    std::string tag = t.substr(0, colon);
    std::string_view value = std::string_view(t).substr(colon + 1);
    if (tag == "id") {
      if (!cur.term_id.empty()) throw ParseError("stanza has two ids", line_no);
      cur.term_id = obo_strip_comment(value);
    } else if (tag == "name") {
      cur.name = trim(value);
    } else if (tag == "synonym") {
      std::string syn = obo_quoted(value, line_no);
      if (!syn.empty()) cur.synonyms.push_back(std::move(syn));
    } else if (tag == "is_obsolete") {
      cur.obsolete = obo_strip_comment(value) == "true";
    }
  }
  finish();
  if (!any_content) throw ValidationError("empty OBO file");
  if (catalog.size() == 0) throw ValidationError("OBO file has no [Term] stanzas");
  return catalog;
}

TermCatalog parse_gene_gaf(std::istream& in, std::size_t* skipped_rows) {
  TermCatalog catalog(Category::Gene);
  std::unordered_map<std::string, std::string> id_by_symbol;
  std::size_t skipped = 0;
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty() || line.front() == '!') continue;
    auto cols = split(line, '\t');
    if (cols.size() < 15) {
      ++skipped;
      continue;
    }
    std::string id = trim(cols[0]) + ":" + trim(cols[1]);
    std::string symbol = trim(cols[2]);
    if (symbol.empty() || trim(cols[0]).empty() || trim(cols[1]).empty() ||
        normalize(symbol).empty()) {
      ++skipped;
      continue;
    }
    std::vector<std::string> syns;
    for (auto& s : split(cols[10], '|')) {
      std::string v = trim(s);
      if (!v.empty()) syns.push_back(std::move(v));
    }
    auto known = id_by_symbol.find(symbol);
    if (known != id_by_symbol.end()) {
      catalog.merge_synonyms(known->second, syns);
      continue;
    }
    if (catalog.find(id)) {
      // Second symbol for an already-seen object id: keep it as a synonym.
      syns.insert(syns.begin(), symbol);
      catalog.merge_synonyms(id, syns);
      id_by_symbol.emplace(symbol, id);
      continue;
    }
    OntologyTerm term;
    term.term_id = id;
    term.name = symbol;
    term.category = Category::Gene;
    catalog.add(std::move(term));
    catalog.merge_synonyms(id, syns);
    id_by_symbol.emplace(symbol, id);
  }
  if (skipped_rows) *skipped_rows = skipped;
  if (catalog.size() == 0) throw ValidationError("GAF file has no usable annotation rows");
  return catalog;
}

TermCatalog parse_lexicon_tsv(std::istream& in, Category category) {
  TermCatalog catalog(category);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (trim(line).empty() || line.front() == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() < 2) throw ParseError("lexicon row needs term_id and name", line_no);
    OntologyTerm term;
    term.term_id = trim(cols[0]);
    term.name = trim(cols[1]);
    term.category = category;
    if (term.term_id.empty() || normalize(term.name).empty())
      throw ParseError("lexicon row with empty id or name", line_no);
    if (catalog.find(term.term_id)) throw ParseError("duplicate term id " + term.term_id, line_no);
    if (cols.size() >= 3)
      for (auto& s : split(cols[2], '|')) {
        std::string v = trim(s);
        if (!v.empty()) term.synonyms.push_back(std::move(v));
      }
    catalog.add(std::move(term));
  }
  if (catalog.size() == 0) throw ValidationError("lexicon has no terms");
  return catalog;
}

namespace {

void insert_id(ChunkMap& m, const std::string& key, const std::string& id, Category c) {
  auto& ids = c == Category::Disease ? m[key].disease : m[key].gene;
  auto pos = std::lower_bound(ids.begin(), ids.end(), id);
  if (pos == ids.end() || *pos != id) ids.insert(pos, id);
}

void hash_map(Sha256& h, std::string_view label, const ChunkMap& m) {
  std::map<std::string_view, const ChunkEntry*> sorted;
  for (const auto& [k, v] : m) sorted.emplace(k, &v);
  h.add_field(label);
  h.add_field(std::to_string(sorted.size()));
  for (const auto& [k, v] : sorted) {
    h.add_field(k);
    for (Category c : {Category::Disease, Category::Gene}) {
      h.add_field(std::to_string(v->ids(c).size()));
      for (const auto& id : v->ids(c)) h.add_field(id);
    }
  }
}

}  // namespace

ChunkIndex ChunkIndex::build(std::span<const TermCatalog> catalogs, const IndexOptions& options) {
  if (catalogs.empty()) throw ValidationError("no catalogs to index");
  ChunkIndex index;
  std::set<std::string_view> seen;
  for (const auto& catalog : catalogs) {
    for (const auto& term : catalog.terms()) {
      if (!seen.insert(term.term_id).second)
        throw ValidationError("term id " + term.term_id + " appears in more than one catalog");
      if (term.obsolete) continue;
      index.terms_.emplace(term.term_id, TermInfo{term.term_id, term.name, term.category});
      std::vector<const std::string*> forms{&term.name};
      if (options.use_synonyms)
        for (const auto& s : term.synonyms) forms.push_back(&s);
      for (const std::string* form : forms) {
        TokenSeq toks = normalize(*form);
        if (toks.empty()) continue;
        insert_id(index.full_map_, join(toks), term.term_id, term.category);
        for (std::size_t n = 1; n < toks.size(); ++n) {
          std::string prefix = toks[0];
          for (std::size_t i = 1; i < n; ++i) prefix += " " + toks[i];
          index.full_prefixes_.insert(std::move(prefix));
        }
        if (toks.size() == 1) {
          insert_id(index.unigram_map_, toks[0], term.term_id, term.category);
          continue;
        }
        for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
          if (options.stopwords.count(toks[i]) && options.stopwords.count(toks[i + 1])) continue;
          insert_id(index.bigram_map_, toks[i] + " " + toks[i + 1], term.term_id, term.category);
        }
      }
    }
  }

  Sha256 h;
  h.add_field("biofact-chunk-index-v1");
  std::map<std::string_view, const TermInfo*> sorted_terms;
  for (const auto& [id, info] : index.terms_) sorted_terms.emplace(id, &info);
  h.add_field(std::to_string(sorted_terms.size()));
  for (const auto& [id, info] : sorted_terms) {
    h.add_field(id);
    h.add_field(info->name);
    h.add_field(to_string(info->category));
  }
  hash_map(h, "full", index.full_map_);
  hash_map(h, "unigram", index.unigram_map_);
  hash_map(h, "bigram", index.bigram_map_);
  index.digest_ = h.hex_digest();
  return index;
}

const TermInfo* ChunkIndex::term(std::string_view term_id) const {
  auto it = terms_.find(term_id);
  return it == terms_.end() ? nullptr : &it->second;
}

}  // namespace biofact
