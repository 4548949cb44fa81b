#include <gtest/gtest.h>

#include "biofact/error.hpp"
#include "biofact/metrics.hpp"
#include "table1.hpp"

namespace biofact {
namespace {

// A graph with the given node and edge counts per category and type.
BioGraph shaped(std::size_t diseases, std::size_t genes, std::size_t gg, std::size_t dg, std::size_t dd) {
  BioGraph g;
  std::vector<std::string> d, ge;
  for (std::size_t i = 0; i < diseases; ++i) {
    d.push_back("D" + std::to_string(1000 + i));
    g.nodes[d.back()] = {d.back(), Category::Disease, "", 1};
  }
  for (std::size_t i = 0; i < genes; ++i) {
    ge.push_back("G" + std::to_string(1000 + i));
    g.nodes[ge.back()] = {ge.back(), Category::Gene, "", 1};
  }
  auto add = [&](const std::vector<std::string>& a, const std::vector<std::string>& b, std::size_t want,
                 LinkType t) {
    std::size_t made = 0;
    for (std::size_t i = 0; i < a.size() && made < want; ++i)
      for (std::size_t j = 0; j < b.size() && made < want; ++j) {
        if (a[i] == b[j]) continue;
        EdgeKey k = make_edge_key(a[i], b[j]);
        if (g.edges.emplace(k, BioEdge{k, t, 1, 1}).second) ++made;
      }
    if (made != want) throw std::runtime_error("shape not realizable");
  };
  add(ge, ge, gg, LinkType::GeneGene);
  add(d, ge, dg, LinkType::DiseaseGene);
  add(d, d, dd, LinkType::DiseaseDisease);
  return g;
}

TEST(Ratio, HalfUpHundredths) {
  EXPECT_EQ(ne_ratio_hundredths(70, 110), 64);
  EXPECT_EQ(ne_ratio_hundredths(137, 297), 46);
  EXPECT_EQ(ne_ratio_hundredths(154, 393), 39);
  EXPECT_EQ(ne_ratio_hundredths(1, 8), 13);  // 0.125 rounds up
  EXPECT_EQ(ne_ratio_hundredths(5, 0), std::nullopt);
  EXPECT_EQ(format_hundredths(64), "0.64");
  EXPECT_EQ(format_hundredths(105), "1.05");
}

TEST(Ratio, EveryPrintedRatioReproduces) {
  for (const auto& c : testdata::kTable1)
    EXPECT_EQ(ne_ratio_hundredths(c.nodes, c.edges), c.ratio_centi) << c.source << " G" << c.sample;
}

TEST(Compute, CountsFromAShapedGraph) {
  GraphMetrics m = compute_metrics(shaped(54, 16, 46, 54, 10));
  EXPECT_EQ(m.node_count, 70u);
  EXPECT_EQ(m.edge_count, 110u);
  EXPECT_EQ(m.ne_ratio_centi, 64);
  EXPECT_EQ(m.disease_count, 54u);
  EXPECT_EQ(m.gene_count, 16u);
  EXPECT_EQ(m.gg_links, 46u);
  EXPECT_EQ(m.dg_links, 54u);
  EXPECT_EQ(m.dd_links, 10u);
  EXPECT_FALSE(m.degree);
}

TEST(Compute, EmptyGraphHasNoRatio) {
  GraphMetrics m = compute_metrics(BioGraph{});
  EXPECT_EQ(m.node_count, 0u);
  EXPECT_FALSE(m.ne_ratio());
  EXPECT_NE(to_json(m).find("\"ne_ratio\": null"), std::string::npos);
}

TEST(Compute, ExtendedDegreeStats) {
  GraphMetrics m = compute_metrics(shaped(1, 3, 0, 3, 0), true);
  ASSERT_TRUE(m.degree);
  EXPECT_EQ(m.degree->min, 1u);
  EXPECT_EQ(m.degree->max, 3u);
  EXPECT_DOUBLE_EQ(m.degree->mean, 1.5);
}

TEST(Compare, ShapeAndErrors) {
  std::vector<GraphMetrics> gen{compute_metrics(shaped(2, 2, 1, 1, 1)), compute_metrics(BioGraph{})};
  std::vector<GraphMetrics> lit{compute_metrics(shaped(3, 1, 0, 2, 1)), compute_metrics(shaped(1, 1, 0, 1, 0))};
  ComparisonTable t = compare(gen, lit);
  EXPECT_EQ(t.sample_count, 2u);
  ASSERT_EQ(t.rows.size(), 8u);
  EXPECT_EQ(t.rows[2].metric, "N/E Ratio");
  EXPECT_FALSE(t.rows[2].generated[1]);
  EXPECT_THROW(compare({}, {}), ValidationError);
  EXPECT_THROW(compare(gen, {lit[0]}), ValidationError);
}

TEST(Compare, CsvLayoutAndRoundTrip) {
  std::vector<GraphMetrics> gen{compute_metrics(shaped(54, 16, 46, 54, 10)), compute_metrics(BioGraph{})};
  std::vector<GraphMetrics> lit{compute_metrics(shaped(117, 20, 0, 57, 11)), compute_metrics(shaped(1, 1, 0, 1, 0))};
  ComparisonTable t = compare(gen, lit);
  std::string csv = to_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "Source,Metric,G1,G2");
  EXPECT_NE(csv.find("Generated,No of Nodes,70,0\nLiterature,,137,2\n"), std::string::npos);
  EXPECT_NE(csv.find("Generated,N/E Ratio,0.64,\n"), std::string::npos);
  ComparisonTable back = parse_comparison_csv(csv);
  EXPECT_EQ(back, t);
  EXPECT_THROW(parse_comparison_csv("nope\n"), ValidationError);
}

TEST(Compare, PlotDataAndSlugs) {
  std::vector<GraphMetrics> gen{compute_metrics(shaped(1, 1, 0, 1, 0))};
  ComparisonTable t = compare(gen, gen);
  EXPECT_EQ(plot_data_csv(t.rows[0]), "sample,generated,literature\n1,2,2\n");
  EXPECT_EQ(metric_slug("No. of Edges"), "no_of_edges");
  EXPECT_EQ(metric_slug("Gene-Gene Link No."), "gene_gene_link_no");
  EXPECT_EQ(metric_slug("N/E Ratio"), "n_e_ratio");
}

}  // namespace
}  // namespace biofact
