#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "biofact/text.hpp"
#include "biofact/types.hpp"

namespace biofact {

struct OntologyTerm {
  std::string term_id;
  std::string name;
  std::vector<std::string> synonyms;
  Category category = Category::Disease;
  bool obsolete = false;
};

// A vocabulary of one category with unique term ids, in insertion order.
class TermCatalog {
 public:
  explicit TermCatalog(Category category) : category_(category) {}

  // Throws ValidationError on a duplicate id, an empty id or name, or a
  // category mismatch.
  void add(OntologyTerm term);

  Category category() const { return category_; }
  const std::vector<OntologyTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const OntologyTerm* find(std::string_view term_id) const;

  // Appends synonyms not already present on the term (or equal to its name).
  void merge_synonyms(std::string_view term_id, const std::vector<std::string>& synonyms);

 private:

  Category category_;
  std::vector<OntologyTerm> terms_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> by_id_;
};

// OBO 1.2/1.4 flat file; only [Term] stanzas with id, name, synonym and
// is_obsolete tags are read.
TermCatalog parse_disease_obo(std::istream& in);

// GAF 2.x. One gene term per distinct DB Object Symbol (column 3), id
// "DB:ObjectID" from columns 1-2, synonyms from column 11. Rows with fewer
// than 15 columns are skipped and counted in *skipped_rows.
TermCatalog parse_gene_gaf(std::istream& in, std::size_t* skipped_rows = nullptr);

// Generic lexicon: term_id<TAB>name[<TAB>syn1|syn2...], '#' comments.
TermCatalog parse_lexicon_tsv(std::istream& in, Category category);

struct IndexOptions {
  bool use_synonyms = true;
  // Bigrams made only of stopwords are not indexed.
  StopwordSet stopwords = default_stopwords();
};

struct TermInfo {
  std::string term_id;
  std::string name;
  Category category;
};

// Sorted, duplicate-free term ids split by category.
struct ChunkEntry {
  std::vector<std::string> disease;
  std::vector<std::string> gene;

  const std::vector<std::string>& ids(Category c) const {
    return c == Category::Disease ? disease : gene;
  }
  bool empty() const { return disease.empty() && gene.empty(); }
};

using ChunkMap = std::unordered_map<std::string, ChunkEntry, StringHash, std::equal_to<>>;

// Surface forms of every non-obsolete term, keyed by normalized text:
// whole names and synonyms (full), one-token forms (unigram), and each
// adjacent token pair of multi-token forms (bigram, key "a b").
// Immutable once built; safe for concurrent readers.
class ChunkIndex {
 public:
  // Throws ValidationError if catalogs is empty or a term id appears in
  // more than one catalog.
  static ChunkIndex build(std::span<const TermCatalog> catalogs,
                          const IndexOptions& options = {});

  const ChunkEntry* full(std::string_view key) const { return find(full_map_, key); }
  const ChunkEntry* unigram(std::string_view token) const { return find(unigram_map_, token); }
  const ChunkEntry* bigram(std::string_view key) const { return find(bigram_map_, key); }

  const ChunkMap& full_map() const { return full_map_; }
  const ChunkMap& unigram_map() const { return unigram_map_; }
  const ChunkMap& bigram_map() const { return bigram_map_; }

  const TermInfo* term(std::string_view term_id) const;
  std::size_t term_count() const { return terms_.size(); }

  // True if key is a proper token prefix of some multi-token full_map key;
  // lets a scanner extend a window only while a longer match is possible.
  bool is_full_prefix(std::string_view key) const {
    return full_prefixes_.find(key) != full_prefixes_.end();
  }

  // SHA-256 over a canonical rendering of the term table and all maps.
  // Graphs built against indexes with equal digests share an id namespace.
  const std::string& digest() const { return digest_; }

  bool empty() const { return full_map_.empty(); }

 private:
  static const ChunkEntry* find(const ChunkMap& m, std::string_view key) {
    auto it = m.find(key);
    return it == m.end() ? nullptr : &it->second;
  }

  ChunkMap full_map_;
  ChunkMap unigram_map_;
  ChunkMap bigram_map_;
  std::unordered_map<std::string, TermInfo, StringHash, std::equal_to<>> terms_;
  std::unordered_set<std::string, StringHash, std::equal_to<>> full_prefixes_;
  std::string digest_;
};

}  // namespace biofact
