#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "biofact/corpus.hpp"
#include "biofact/error.hpp"

namespace biofact {
namespace {

LoadResult parse(const std::string& text, Source src, bool lenient = false,
                 CorpusFormat fmt = CorpusFormat::JsonArray) {
  LoadOptions o;
  o.format = fmt;
  o.lenient = lenient;
  return parse_collection(text, src, o);
}

RecordCollection numbered(std::size_t n, Source src = Source::Literature) {
  RecordCollection c(src);
  for (std::size_t i = 0; i < n; ++i) c.add({"id" + std::to_string(i), "t", "body " + std::to_string(i), src});
  return c;
}

TEST(Load, GeneratedDefaults) {
  auto r = parse(R"([{"GPT-ID":"A3X9Z","Title":" T ","Abstract":"BRCA1 text"},
                     {"GPT-ID":"B1","Title":"","Abstract":"more"}])",
                 Source::Generated);
  ASSERT_EQ(r.collection.size(), 2u);
  EXPECT_EQ(r.collection.records()[0].record_id, "A3X9Z");
  EXPECT_EQ(r.collection.records()[0].title, "T");
  EXPECT_EQ(r.collection.records()[0].source, Source::Generated);
  EXPECT_EQ(r.skipped, 0u);
}

TEST(Load, LiteratureNumericIdsAndJsonLines) {
  auto r = parse("{\"pmid\": 12345, \"title\": \"a\", \"abstract\": \"b\"}\n\n"
                 "{\"pmid\": \"777\", \"title\": \"c\", \"abstract\": \"d\"}\n",
                 Source::Literature, false, CorpusFormat::JsonLines);
  ASSERT_EQ(r.collection.size(), 2u);
  EXPECT_EQ(r.collection.records()[0].record_id, "12345");
}

TEST(Load, StrictNamesTheRecordAndField) {
  try {
    parse(R"([{"pmid":"1","title":"a","abstract":"b"},{"pmid":"2","title":"a"}])", Source::Literature);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "record 1: missing field \"abstract\"");
  }
}

TEST(Load, LenientSkipsAndCounts) {
  auto r = parse(R"([{"pmid":"1","title":"a","abstract":"b"},{"pmid":"2","title":"a"},
                     {"pmid":"1","title":"dup","abstract":"x"},{"pmid":"3","title":"","abstract":"  "},
                     7])",
                 Source::Literature, true);
  EXPECT_EQ(r.collection.size(), 1u);
  EXPECT_EQ(r.skipped, 4u);
  EXPECT_EQ(r.warnings.size(), 4u);
}

TEST(Load, DuplicateIdIsAnErrorInStrictMode) {
  EXPECT_THROW(parse(R"([{"pmid":"1","title":"a","abstract":"b"},{"pmid":"1","title":"a","abstract":"c"}])",
                     Source::Literature),
               ValidationError);
}

TEST(Load, NotJsonOrNotArray) {
  EXPECT_THROW(parse("{oops", Source::Literature), ValidationError);
  EXPECT_THROW(parse("{}", Source::Literature), ValidationError);
  EXPECT_THROW(parse("{\n", Source::Literature, false, CorpusFormat::JsonLines), ParseError);
}

TEST(Load, CustomFieldNames) {
  LoadOptions o;
  o.fields = {"id", "heading", "text"};
  auto r = parse_collection(R"([{"id":"x","heading":"h","text":"t"}])", Source::Literature, o);
  EXPECT_EQ(r.collection.size(), 1u);
}

TEST(Load, MissingFileIsAValidationError) {
  EXPECT_THROW(load_collection("/nonexistent/corpus.json", Source::Literature, {}), ValidationError);
}

TEST(Load, WrittenArrayRoundTrips) {
  RecordCollection c = numbered(5, Source::Generated);
  auto fields = FieldMap::defaults(Source::Generated);
  auto r = parse(to_json_array(c, fields), Source::Generated);
  EXPECT_EQ(collection_digest(r.collection), collection_digest(c));
}

TEST(Collection, AddValidates) {
  RecordCollection c(Source::Literature);
  EXPECT_THROW(c.add({"", "t", "b", Source::Literature}), ValidationError);
  EXPECT_THROW(c.add({"x", "t", "", Source::Literature}), ValidationError);
  EXPECT_THROW(c.add({"x", "t", "b", Source::Generated}), ValidationError);
  c.add({"x", "t", "b", Source::Literature});
  EXPECT_THROW(c.add({"x", "t", "b", Source::Literature}), ValidationError);
  EXPECT_TRUE(c.contains("x"));
}

TEST(Sample, SameSeedSameDraw) {
  RecordCollection c = numbered(1000);
  auto a = sample(c, 250, 42), b = sample(c, 250, 42);
  EXPECT_EQ(collection_digest(a), collection_digest(b));
  EXPECT_NE(collection_digest(a), collection_digest(sample(c, 250, 43)));
}

TEST(Sample, DistinctMembersFromTheCollection) {
  RecordCollection c = numbered(300);
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    auto s = sample(c, 100, seed);
    std::set<std::string> ids;
    for (const auto& r : s) ids.insert(r.record_id);
    EXPECT_EQ(ids.size(), 100u);
    for (const auto& id : ids) EXPECT_TRUE(c.contains(id));
  }
  EXPECT_EQ(sample(c, 300, 5).size(), 300u);
}

TEST(Sample, BoundsAreChecked) {
  RecordCollection c = numbered(10);
  EXPECT_THROW(sample(c, 0, 1), ValidationError);
  EXPECT_THROW(sample(c, 11, 1), ValidationError);
}

// Frozen values computed with an independent MT19937-64 implementation.
TEST(Sample, FrozenIndices) {
  auto idx = sample_indices(1000, 5, 1);
  auto again = sample_indices(1000, 5, 1);
  EXPECT_EQ(idx, again);
  EXPECT_EQ(idx, (std::vector<std::size_t>{528, 70, 950, 314, 772}));
}

TEST(Digest, SensitiveToContentAndOrder) {
  RecordCollection a(Source::Literature), b(Source::Literature);
  a.add({"1", "t", "x", Source::Literature});
  a.add({"2", "t", "y", Source::Literature});
  b.add({"2", "t", "y", Source::Literature});
  b.add({"1", "t", "x", Source::Literature});
  EXPECT_NE(collection_digest(a), collection_digest(b));
  EXPECT_EQ(collection_digest(a).size(), 64u);
}

}  // namespace
}  // namespace biofact
