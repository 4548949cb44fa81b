#include <gtest/gtest.h>

#include <random>

#include "biofact/error.hpp"
#include "biofact/factcheck.hpp"
#include "oracles.hpp"
#include "synth.hpp"

namespace biofact {
namespace {

ChunkIndex hand_index() {
  TermCatalog d(Category::Disease), g(Category::Gene);
  for (std::string n : {"argonosis", "blemitis", "corvalgia", "dravitis", "esmoria"})
    d.add({"D:" + n, n, {}, Category::Disease, false});
  for (int i = 1; i <= 6; ++i)
    g.add({"G:" + std::to_string(i), "GN" + std::to_string(i), {}, Category::Gene, false});
  std::vector<TermCatalog> cats{d, g};
  return ChunkIndex::build(cats);
}

BioGraph graph_of(const std::vector<std::string>& bodies, Source src, const ChunkIndex& idx) {
  RecordCollection c(src);
  for (std::size_t i = 0; i < bodies.size(); ++i) c.add({"r" + std::to_string(i), "", bodies[i], src});
  return build_graph(extract_corpus(c, idx), idx);
}

// Ten candidate disease-gene links, seven of which the literature records
// also contain.
TEST(FactCheck, HandWrittenTwelveRecordFixture) {
  ChunkIndex idx = hand_index();
  BioGraph cand = graph_of({"argonosis with GN1 and GN2", "blemitis in GN3 GN4 carriers",
                            "corvalgia, GN1; GN5", "dravitis GN2 GN6", "esmoria GN3 GN5", "argonosis alone"},
                           Source::Generated, idx);
  BioGraph ref = graph_of({"argonosis GN1 GN2", "blemitis GN3", "corvalgia and GN1", "dravitis GN2 then GN6",
                           "esmoria GN5", "GN4 binds GN6"},
                          Source::Literature, idx);
  FactCheckReport r = fact_check(cand, ref);
  const LinkCheck& dg = r.for_type(LinkType::DiseaseGene);
  EXPECT_EQ(dg.candidate_links, 10u);
  EXPECT_EQ(dg.overlapping_links, 7u);
  EXPECT_DOUBLE_EQ(*dg.precision(), 0.70);
  EXPECT_EQ(r.for_type(LinkType::GeneGene).candidate_links, 5u);
  EXPECT_EQ(r.for_type(LinkType::GeneGene).overlapping_links, 2u);
  EXPECT_FALSE(r.for_type(LinkType::DiseaseDisease).precision());
  EXPECT_EQ(r.novel_links.size(), r.candidate_total - r.overlap_total);
  auto brute = oracle::naive_overlap(cand, ref, 1);
  EXPECT_EQ(brute[0], 7u);
  EXPECT_EQ(brute[1], 2u);
  EXPECT_EQ(brute[2], 0u);
  // The unverified disease-gene links are exactly the three left out.
  std::vector<EdgeKey> novel_dg;
  for (const auto& e : r.novel_links)
    if (e.link_type == LinkType::DiseaseGene) novel_dg.push_back(e.endpoints);
  EXPECT_EQ(novel_dg, (std::vector<EdgeKey>{make_edge_key("D:blemitis", "G:4"),
                                            make_edge_key("D:corvalgia", "G:5"),
                                            make_edge_key("D:esmoria", "G:3")}));
}

TEST(FactCheck, SelfComparisonIsPerfect) {
  std::mt19937_64 rng(1);
  auto [g, unused] = synth::random_graph_pair(rng, 200);
  FactCheckReport r = fact_check(g, g);
  for (LinkType t : kLinkTypes) {
    const LinkCheck& c = r.for_type(t);
    if (c.candidate_links > 0) EXPECT_DOUBLE_EQ(*c.precision(), 1.0);
  }
  EXPECT_TRUE(r.novel_links.empty());
}

TEST(FactCheck, EmptyCandidateHasUndefinedPrecision) {
  std::mt19937_64 rng(2);
  auto [unused, ref] = synth::random_graph_pair(rng, 50);
  BioGraph empty;
  empty.provenance.ontology_digest = ref.provenance.ontology_digest;
  FactCheckReport r = fact_check(empty, ref);
  EXPECT_EQ(r.overlap_total, 0u);
  EXPECT_FALSE(r.overall_precision());
  for (LinkType t : kLinkTypes) EXPECT_FALSE(r.for_type(t).precision());
}

TEST(FactCheck, DifferentOntologiesAreRejected) {
  BioGraph a, b;
  a.provenance.ontology_digest = "x";
  b.provenance.ontology_digest = "y";
  EXPECT_THROW(fact_check(a, b), ValidationError);
}

TEST(FactCheck, CountsMatchBruteForceAndPartition) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    auto [cand, ref] = synth::random_graph_pair(rng, 300);
    for (std::size_t s : {1u, 2u, 3u}) {
      FactCheckOptions o;
      o.min_support = s;
      FactCheckReport r = fact_check(cand, ref, o);
      auto brute = oracle::naive_overlap(cand, ref, s);
      std::size_t cand_sum = 0, over_sum = 0;
      for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(r.by_type[k].overlapping_links, brute[k]);
        EXPECT_LE(r.by_type[k].overlapping_links, r.by_type[k].candidate_links);
        cand_sum += r.by_type[k].candidate_links;
        over_sum += r.by_type[k].overlapping_links;
      }
      EXPECT_EQ(cand_sum, r.candidate_total);
      EXPECT_EQ(over_sum, r.overlap_total);
      EXPECT_EQ(r.candidate_total, cand.edge_count());
      EXPECT_EQ(r.novel_links.size(), r.candidate_total - r.overlap_total);
    }
  }
}

TEST(FactCheck, OverlapIsSymmetricAndMonotone) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    auto [a, b] = synth::random_graph_pair(rng, 200);
    EXPECT_EQ(fact_check(a, b).overlap_total, fact_check(b, a).overlap_total);
    FactCheckReport before = fact_check(a, b);
    BioGraph bigger = b;
    for (const auto& [k, e] : a.edges) {
      if (rng() % 3) continue;
      bigger.nodes.emplace(k.first, a.nodes.at(k.first));
      bigger.nodes.emplace(k.second, a.nodes.at(k.second));
      bigger.edges.emplace(k, e);
    }
    FactCheckReport after = fact_check(a, bigger);
    for (std::size_t t = 0; t < 3; ++t)
      EXPECT_GE(after.by_type[t].overlapping_links, before.by_type[t].overlapping_links);
  }
}

TEST(FactCheck, MinSupportFiltersReferenceEdges) {
  ChunkIndex idx = hand_index();
  BioGraph cand = graph_of({"argonosis GN1", "blemitis GN2"}, Source::Generated, idx);
  BioGraph ref = graph_of({"argonosis GN1", "argonosis GN1 again", "blemitis GN2"}, Source::Literature, idx);
  FactCheckOptions strict;
  strict.min_support = 2;
  EXPECT_EQ(fact_check(cand, ref).overlap_total, 2u);
  EXPECT_EQ(fact_check(cand, ref, strict).overlap_total, 1u);
}

TEST(Summarize, MinMeanMax) {
  SeriesStats s = summarize({0.7, std::nullopt, 0.86, 0.8});
  EXPECT_EQ(s.samples, 3u);
  EXPECT_DOUBLE_EQ(*s.min, 0.7);
  EXPECT_DOUBLE_EQ(*s.max, 0.86);
  EXPECT_LE(*s.min, *s.mean);
  EXPECT_LE(*s.mean, *s.max);
  EXPECT_FALSE(summarize({std::nullopt}).mean);
}

RecordCollection small_corpus(Source src, std::size_t n, std::uint64_t seed, const synth::Vocabulary& v) {
  std::mt19937_64 rng(seed);
  return synth::random_corpus(rng, v, n, src);
}

TEST(Experiment, DeterministicAcrossRunsAndThreads) {
  std::mt19937_64 rng(9);
  auto vocab = synth::random_vocabulary(rng, 60);
  ChunkIndex idx = ChunkIndex::build(vocab.catalogs);
  auto gen = small_corpus(Source::Generated, 80, 1, vocab);
  auto lit = small_corpus(Source::Literature, 120, 2, vocab);
  ExperimentOptions o;
  o.sample_size = 20;
  o.sample_count = 4;
  o.threads = 1;
  ExperimentReport a = run_experiment(gen, lit, idx, o);
  o.threads = 8;
  ExperimentReport b = run_experiment(gen, lit, idx, o);
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_EQ(a.pipeline_hash, b.pipeline_hash);
  EXPECT_EQ(a.seeds, (std::vector<std::uint64_t>{1, 2, 3, 4}));
  ASSERT_EQ(a.samples.size(), 4u);
  for (const auto& s : a.samples) EXPECT_EQ(s.check.candidate_total, s.generated.edge_count);
  o.seeds = {5, 6, 7, 8};
  EXPECT_NE(run_experiment(gen, lit, idx, o).pipeline_hash, a.pipeline_hash);
}

TEST(Experiment, FullReferenceUsesWholeLiteratureCorpus) {
  std::mt19937_64 rng(10);
  auto vocab = synth::random_vocabulary(rng, 40);
  ChunkIndex idx = ChunkIndex::build(vocab.catalogs);
  auto gen = small_corpus(Source::Generated, 50, 3, vocab);
  auto lit = small_corpus(Source::Literature, 50, 4, vocab);
  ExperimentOptions o;
  o.sample_size = 10;
  o.sample_count = 3;
  ExperimentReport per = run_experiment(gen, lit, idx, o);
  o.reference = ReferenceMode::Full;
  ExperimentReport full = run_experiment(gen, lit, idx, o);
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_GE(full.samples[i].check.overlap_total, per.samples[i].check.overlap_total);
  EXPECT_NE(full.pipeline_hash, per.pipeline_hash);
}

TEST(Experiment, BadSizesAndSeedListsAreRejected) {
  std::mt19937_64 rng(11);
  auto vocab = synth::random_vocabulary(rng, 20);
  ChunkIndex idx = ChunkIndex::build(vocab.catalogs);
  auto gen = small_corpus(Source::Generated, 50, 3, vocab);
  auto lit = small_corpus(Source::Literature, 5, 4, vocab);
  ExperimentOptions o;
  o.sample_size = 10;
  o.sample_count = 2;
  try {
    run_experiment(gen, lit, idx, o);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("literature corpus size 5"), std::string::npos) << e.what();
  }
  o.sample_size = 5;
  o.seeds = {1};
  EXPECT_THROW(run_experiment(gen, lit, idx, o), ValidationError);
  EXPECT_THROW(run_experiment(lit, gen, idx, {}), ValidationError);
}

}  // namespace
}  // namespace biofact
