#include <gtest/gtest.h>

#include <random>

#include "biofact/matcher.hpp"
#include "oracles.hpp"
#include "synth.hpp"

namespace biofact {
namespace {

std::vector<TermCatalog> small_catalogs() {
  TermCatalog d(Category::Disease), g(Category::Gene);
  d.add({"D:bc", "breast cancer", {}, Category::Disease, false});
  d.add({"D:fbc", "female breast cancer", {}, Category::Disease, false});
  d.add({"D:lc", "lung cancer", {"lung carcinoma"}, Category::Disease, false});
  g.add({"G:brca1", "BRCA1", {"RNF53"}, Category::Gene, false});
  // A gene whose symbol is also a disease bigram token.
  g.add({"G:lung", "LUNG", {}, Category::Gene, false});
  return {d, g};
}

Record rec(std::string body, std::string title = "") {
  return {"r1", std::move(title), std::move(body), Source::Literature};
}

TEST(Extract, TwoTermsInAShortText) {
  auto cats = small_catalogs();
  ChunkIndex idx = ChunkIndex::build(cats);
  MatchSet s = extract_matches(rec("breast cancer involves brca1"), idx);
  ASSERT_EQ(s.matches.size(), 2u);
  EXPECT_EQ(s.matches[0].token_position, 0u);
  EXPECT_EQ(s.matches[0].kind, MatchKind::FullTerm);
  EXPECT_EQ(s.matches[0].term_ids, (std::vector<std::string>{"D:bc"}));
  EXPECT_EQ(s.matches[1].token_position, 3u);
  EXPECT_EQ(s.matches[1].kind, MatchKind::Unigram);
  EXPECT_EQ(s.matches[1].category, Category::Gene);
}

TEST(Extract, LongestFullTermSuppressesInteriorBigram) {
  auto cats = small_catalogs();
  ChunkIndex idx = ChunkIndex::build(cats);
  MatchSet s = extract_matches(rec("female breast cancer"), idx);
  ASSERT_EQ(s.matches.size(), 1u);
  EXPECT_EQ(s.matches[0].kind, MatchKind::FullTerm);
  EXPECT_EQ(s.matches[0].surface, "female breast cancer");
  EXPECT_EQ(s.matches[0].token_length, 3u);
  EXPECT_EQ(s.matches[0].term_ids, (std::vector<std::string>{"D:fbc"}));
}

TEST(Extract, AbbreviatedMentionResolvesThroughBigram) {
  auto cats = small_catalogs();
  ChunkIndex idx = ChunkIndex::build(cats);
  MatchSet s = extract_matches(rec("in female breast tissue"), idx);
  ASSERT_EQ(s.matches.size(), 1u);
  EXPECT_EQ(s.matches[0].kind, MatchKind::Bigram);
  EXPECT_EQ(s.matches[0].surface, "female breast");
  EXPECT_EQ(s.matches[0].term_ids, (std::vector<std::string>{"D:fbc"}));
}

TEST(Extract, CategoriesMatchIndependentlyAtOnePosition) {
  auto cats = small_catalogs();
  ChunkIndex idx = ChunkIndex::build(cats);
  MatchSet s = extract_matches(rec("Lung carcinoma"), idx);
  ASSERT_EQ(s.matches.size(), 2u);
  EXPECT_EQ(s.matches[0].category, Category::Disease);
  EXPECT_EQ(s.matches[0].token_length, 2u);
  EXPECT_EQ(s.matches[1].category, Category::Gene);
  EXPECT_EQ(s.matches[1].surface, "lung");
}

TEST(Extract, TitleIsScannedBeforeBodyWithABoundary) {
  auto cats = small_catalogs();
  ChunkIndex idx = ChunkIndex::build(cats);
  // "breast" ends the title and "cancer" opens the body: no match across.
  MatchSet s = extract_matches(rec("cancer risk in RNF53 carriers", "On breast"), idx);
  ASSERT_EQ(s.matches.size(), 1u);
  EXPECT_EQ(s.matches[0].token_position, 6u);
  EXPECT_EQ(s.matches[0].term_ids, (std::vector<std::string>{"G:brca1"}));
  MatchOptions body_only;
  body_only.fields = ScanFields::Abstract;
  EXPECT_EQ(extract_matches(rec("cancer risk in RNF53 carriers", "On breast"), idx, body_only)
                .matches[0]
                .token_position,
            3u);
}

TEST(Extract, AmbiguousBigramKeepsAllIds) {
  TermCatalog d(Category::Disease);
  d.add({"D:a", "acute lung injury", {}, Category::Disease, false});
  d.add({"D:c", "chronic lung injury", {}, Category::Disease, false});
  std::vector<TermCatalog> cats{d};
  ChunkIndex idx = ChunkIndex::build(cats);
  MatchSet s = extract_matches(rec("severe lung injury"), idx);
  ASSERT_EQ(s.matches.size(), 1u);
  EXPECT_EQ(s.matches[0].kind, MatchKind::Bigram);
  EXPECT_EQ(s.matches[0].term_ids, (std::vector<std::string>{"D:a", "D:c"}));
  // The whole name still wins when present.
  EXPECT_EQ(extract_matches(rec("acute lung injury"), idx).matches[0].term_ids,
            (std::vector<std::string>{"D:a"}));
}

TEST(Extract, EmptyIndexOrNoMentions) {
  TermCatalog d(Category::Disease);
  d.add({"D:x", "zzz", {}, Category::Disease, false});
  std::vector<TermCatalog> cats{d};
  ChunkIndex idx = ChunkIndex::build(cats);
  EXPECT_TRUE(extract_matches(rec("nothing here"), idx).matches.empty());
}

TEST(Extract, MatchInvariantsHold) {
  std::mt19937_64 rng(7);
  auto vocab = synth::random_vocabulary(rng, 80);
  ChunkIndex idx = ChunkIndex::build(vocab.catalogs);
  auto corpus = synth::random_corpus(rng, vocab, 60, Source::Literature);
  for (const auto& r : corpus) {
    TokenSeq toks = record_tokens(r, ScanFields::TitleAndAbstract);
    MatchSet s = extract_matches(r, idx);
    std::size_t last = 0;
    for (const auto& m : s.matches) {
      EXPECT_GE(m.token_position, last);
      last = m.token_position;
      ASSERT_LE(m.token_position + m.token_length, toks.size());
      TokenSeq window(toks.begin() + m.token_position, toks.begin() + m.token_position + m.token_length);
      EXPECT_EQ(join(window), m.surface);
      EXPECT_EQ(m.surface.find('|'), std::string::npos);
      const ChunkEntry* e = m.kind == MatchKind::FullTerm ? idx.full(m.surface)
                            : m.kind == MatchKind::Bigram ? idx.bigram(m.surface)
                                                          : idx.unigram(m.surface);
      ASSERT_TRUE(e);
      EXPECT_EQ(e->ids(m.category), m.term_ids);
    }
  }
}

TEST(Extract, EqualsNaiveOracle) {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    std::mt19937_64 rng(seed);
    auto vocab = synth::random_vocabulary(rng, 1 + rng() % 200);
    ChunkIndex idx = ChunkIndex::build(vocab.catalogs);
    auto forms = oracle::surface_forms(vocab.catalogs, true);
    auto corpus = synth::random_corpus(rng, vocab, 1 + rng() % 100, Source::Generated);
    for (const auto& r : corpus)
      ASSERT_EQ(extract_matches(r, idx),
                oracle::naive_matches(r, forms, default_stopwords(), ScanFields::TitleAndAbstract))
          << "seed " << seed << " record " << r.record_id;
  }
}

TEST(Corpus, OneSetPerRecordIndependentOfThreads) {
  std::mt19937_64 rng(3);
  auto vocab = synth::random_vocabulary(rng, 100);
  ChunkIndex idx = ChunkIndex::build(vocab.catalogs);
  auto corpus = synth::random_corpus(rng, vocab, 200, Source::Literature);
  CorpusMatches a = extract_corpus(corpus, idx, {}, 1);
  CorpusMatches b = extract_corpus(corpus, idx, {}, 8);
  ASSERT_EQ(a.sets.size(), corpus.size());
  EXPECT_EQ(a.sets, b.sets);
  EXPECT_EQ(to_jsonl(a), to_jsonl(b));
  for (std::size_t i = 0; i < corpus.size(); ++i)
    EXPECT_EQ(a.sets[i].record_id, corpus.records()[i].record_id);
  EXPECT_EQ(a.stats.records, 200u);
  EXPECT_EQ(a.stats.matches, a.stats.disease_matches + a.stats.gene_matches);
}

TEST(Corpus, NoMentionsGivesEmptySets) {
  auto cats = small_catalogs();
  ChunkIndex idx = ChunkIndex::build(cats);
  RecordCollection c(Source::Literature);
  for (int i = 0; i < 3; ++i) c.add({"r" + std::to_string(i), "", "plain words only", Source::Literature});
  CorpusMatches m = extract_corpus(c, idx);
  ASSERT_EQ(m.sets.size(), 3u);
  EXPECT_EQ(m.stats.matches, 0u);
}

TEST(Corpus, JsonLinesRoundTrip) {
  std::mt19937_64 rng(11);
  auto vocab = synth::random_vocabulary(rng, 50);
  ChunkIndex idx = ChunkIndex::build(vocab.catalogs);
  auto corpus = synth::random_corpus(rng, vocab, 30, Source::Generated);
  CorpusMatches m = extract_corpus(corpus, idx);
  CorpusMatches back = parse_matches_jsonl(to_jsonl(m));
  EXPECT_EQ(back.sets, m.sets);
  EXPECT_EQ(back.source, Source::Generated);
  EXPECT_EQ(back.corpus_digest, m.corpus_digest);
}

}  // namespace
}  // namespace biofact
