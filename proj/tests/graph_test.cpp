#include <gtest/gtest.h>

#include <sstream>

#include "eidolon/graph.hpp"
#include "test_support.hpp"

using namespace eidolon;

TEST(Graph, NormalizesEdgeList) {
  Graph g(4, {{2, 1}, {0, 3}, {1, 2}, {0, 1}});
  ASSERT_EQ(g.m(), 3u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(g.edges()[1], (Edge{0, 3}));
  EXPECT_EQ(g.edges()[2], (Edge{1, 2}));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(2, 3));
  EXPECT_EQ(g.degree(1), 2u);
}

TEST(Graph, RejectsSelfLoopsAndOutOfRange) {
  EXPECT_THROW(Graph(3, {{1, 1}}), Error);
  EXPECT_THROW(Graph(3, {{0, 3}}), Error);
}

TEST(Coloring, RejectsColorOutsidePalette) { EXPECT_THROW(Coloring({0, 3}, 3), Error); }

TEST(Coloring, ValidityReportsConflicts) {
  Graph g = oracle::cycle_graph(4);
  auto check = is_valid_coloring(g, Coloring({0, 1, 0, 0}, 2));
  EXPECT_FALSE(check.valid);
  EXPECT_EQ(check.conflicts.size(), 2u);
  EXPECT_TRUE(is_valid_coloring(g, Coloring({0, 1, 0, 1}, 2)).valid);
  try {
    is_valid_coloring(g, Coloring({0, 1}, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::length_mismatch);
  }
}

TEST(Partition, BalancedSizes) {
  auto spec = PartitionSpec::balanced(10, 4);
  EXPECT_EQ(spec.sizes, (std::vector<std::uint32_t>{3, 3, 2, 2}));
  EXPECT_EQ(spec.total(), 10u);
}

TEST(Planted, AdjustedProbabilityClosedForm) {
  // Four classes of three on twelve vertices: 66 pairs, 12 forbidden.
  const auto spec = PartitionSpec::balanced(12, 4);
  EXPECT_NEAR(adjusted_edge_probability(12, spec, 0.5), 0.5 * 66.0 / 54.0, 1e-15);
  // Two classes of two: 6 pairs, 2 forbidden, so s = 2/3 gives exactly 1.
  EXPECT_DOUBLE_EQ(adjusted_edge_probability(4, PartitionSpec::balanced(4, 2), 4.0 / 6.0), 1.0);
}

TEST(Planted, InfeasibleDensityIsRejected) {
  try {
    adjusted_edge_probability(4, PartitionSpec::balanced(4, 2), 0.9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::density_infeasible);
  }
  EXPECT_THROW(adjusted_edge_probability(3, PartitionSpec{{3}}, 0.5), Error);
  EXPECT_THROW(adjusted_edge_probability(4, PartitionSpec::balanced(4, 2), 1.5), Error);
}

TEST(Planted, PlantedColoringIsProper) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = generate_planted(PartitionSpec::balanced(40, 5), 0.5, rng);
    EXPECT_TRUE(is_valid_coloring(inst.graph, inst.coloring).valid);
    EXPECT_EQ(inst.coloring.k, 5u);
  }
}

TEST(Planted, SameSeedSameGraph) {
  Rng a(99), b(99);
  EXPECT_EQ(generate_planted(PartitionSpec::balanced(30, 4), 0.4, a).graph,
            generate_planted(PartitionSpec::balanced(30, 4), 0.4, b).graph);
}

TEST(ErdosRenyi, ExtremeProbabilities) {
  Rng rng(1);
  EXPECT_EQ(generate_er(10, 0.0, rng).m(), 0u);
  EXPECT_EQ(generate_er(10, 1.0, rng).m(), 45u);
  EXPECT_THROW(generate_er(10, -0.1, rng), Error);
}

TEST(GraphText, RoundTrip) {
  Rng rng(3);
  auto inst = generate_planted(PartitionSpec::balanced(20, 3), 0.5, rng);
  std::stringstream ss;
  write_graph_text(ss, inst.graph, 3);
  auto file = read_graph_text(ss);
  EXPECT_EQ(file.graph, inst.graph);
  EXPECT_EQ(file.k, 3u);
}

TEST(GraphText, RejectsUnsortedOrMalformed) {
  std::istringstream unsorted("3 2 2\n1 2\n0 1\n");
  EXPECT_THROW(read_graph_text(unsorted), Error);
  std::istringstream reversed("3 1 2\n2 1\n");
  EXPECT_THROW(read_graph_text(reversed), Error);
  std::istringstream short_list("3 2 2\n0 1\n");
  EXPECT_THROW(read_graph_text(short_list), Error);
  std::istringstream garbage("x y z\n");
  EXPECT_THROW(read_graph_text(garbage), Error);
}

TEST(ColoringText, RoundTrip) {
  Coloring c({0, 2, 1, 2}, 3);
  std::stringstream ss;
  write_coloring_text(ss, c);
  auto back = read_coloring_text(ss);
  EXPECT_EQ(back.colors, c.colors);
  EXPECT_EQ(back.k, 3u);
}

TEST(Examples, AdjustedProbabilityHandValues) {
  EXPECT_DOUBLE_EQ(adjusted_edge_probability(4, PartitionSpec{{1, 1, 1, 1}}, 0.3), 0.3);
  // S = 3 + 3 = 6 forbidden pairs of 15.
  EXPECT_DOUBLE_EQ(adjusted_edge_probability(6, PartitionSpec{{3, 3}}, 0.6), 1.0);
  EXPECT_NEAR(adjusted_edge_probability(16, PartitionSpec{{6, 5, 5}}, 0.5), 12.0 / 17.0, 1e-15);
}

TEST(Examples, ErdosRenyiMeanEdgeCount) {
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    sum += static_cast<double>(generate_er(40, 0.5, rng).m());
  }
  const double sigma = std::sqrt(780.0 * 0.25 / 1000.0);
  EXPECT_LT(std::abs(sum / 1000.0 - 390.0), 3 * sigma);
}

TEST(Examples, PlantedMeanEdgeCount) {
  const PartitionSpec spec{{6, 5, 5}};
  const double p = 12.0 / 17.0;
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed + 10'000);
    sum += static_cast<double>(generate_planted(spec, 0.5, rng).graph.m());
  }
  EXPECT_LT(std::abs(sum / 1000.0 - 60.0), 3 * std::sqrt(85.0 * p * (1 - p) / 1000.0));
}

TEST(Examples, TinyPlantedInstances) {
  Rng rng(2);
  const auto pair = generate_planted(PartitionSpec{{1, 1}}, 1.0, rng);
  ASSERT_EQ(pair.graph.m(), 1u);
  EXPECT_EQ(pair.graph.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(pair.coloring.colors, (std::vector<Color>{0, 1}));
  for (int i = 0; i < 200; ++i) {
    const auto inst = generate_planted(PartitionSpec{{2, 2}}, rng.uniform01() * 4.0 / 6.0, rng);
    EXPECT_FALSE(inst.graph.has_edge(0, 1));
    EXPECT_FALSE(inst.graph.has_edge(2, 3));
  }
}

TEST(Examples, TriangleColorings) {
  const Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  EXPECT_TRUE(is_valid_coloring(k3, Coloring({0, 1, 2}, 3)).valid);
  const auto bad = is_valid_coloring(k3, Coloring({0, 0, 1}, 3));
  EXPECT_FALSE(bad.valid);
  EXPECT_EQ(bad.conflicts, (std::vector<Edge>{{0, 1}}));
}
