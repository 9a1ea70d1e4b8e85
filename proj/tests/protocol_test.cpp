#include <gtest/gtest.h>

#include <map>

#include "eidolon/protocol.hpp"
#include "test_support.hpp"

using namespace eidolon;

namespace {

struct Fixture {
  Graph graph;
  Coloring coloring;
};

Fixture planted(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
  Rng rng(seed);
  auto inst = generate_planted(PartitionSpec::balanced(n, k), 0.5, rng);
  return {std::move(inst.graph), std::move(inst.coloring)};
}

}  // namespace

TEST(Permutation, FisherYatesIsUniformOnThreeColors) {
  Rng rng(12);
  std::map<Permutation, std::uint64_t> counts;
  for (int i = 0; i < 60000; ++i) ++counts[random_permutation(3, rng)];
  ASSERT_EQ(counts.size(), 6u);
  std::vector<std::uint64_t> v;
  for (const auto& [perm, c] : counts) {
    EXPECT_TRUE(is_permutation_of_k(perm));
    v.push_back(c);
  }
  EXPECT_GT(oracle::chi_square_uniform_p(v), 0.001);
}

TEST(Round, HonestProverAlwaysAccepted) {
  const auto f = planted(24, 4, 1);
  Rng rng(2);
  for (const auto& e : f.graph.edges()) {
    auto [state, commitments] = prove_round(f.graph, f.coloring, rng);
    const auto response = respond(state, f.graph, e);
    EXPECT_TRUE(verify_round(f.graph, 4, commitments, e, response).accepted());
  }
}

TEST(Round, PermutedColoringStaysProper) {
  const auto f = planted(20, 5, 3);
  Rng rng(4);
  auto [state, commitments] = prove_round(f.graph, f.coloring, rng);
  EXPECT_TRUE(is_permutation_of_k(state.permutation()));
  EXPECT_TRUE(is_valid_coloring(f.graph, Coloring(state.permuted_colors(), 5)).valid);
}

TEST(Round, StateIsSingleUse) {
  const auto f = planted(12, 3, 5);
  Rng rng(6);
  auto [state, commitments] = prove_round(f.graph, f.coloring, rng);
  const Edge e = f.graph.edges().front();
  respond(state, f.graph, e);
  EXPECT_TRUE(state.consumed());
  try {
    respond(state, f.graph, e);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::state_reused);
  }
}

TEST(Round, ProverRefusesNonEdgesAndBadColorings) {
  const Graph g = oracle::cycle_graph(6);
  Rng rng(7);
  auto [state, commitments] = prove_round(g, Coloring({0, 1, 0, 1, 0, 1}, 3), rng);
  try {
    respond(state, g, {0, 3});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::edge_not_in_graph);
  }
  EXPECT_FALSE(state.consumed());
  EXPECT_THROW(prove_round(g, Coloring({0, 0, 1, 0, 1, 2}, 3), rng), Error);
}

TEST(Round, VerifierReasons) {
  const Graph g = oracle::cycle_graph(6);
  Rng rng(8);
  auto [state, commitments] = prove_round(g, Coloring({0, 1, 0, 1, 2, 1}, 3), rng);
  const Edge e{0, 1};
  const auto good = respond(state, g, e);
  EXPECT_EQ(verify_round(g, 3, commitments, {0, 3}, good).reason, RoundReason::bad_edge);
  auto bad = good;
  bad.u.alpha ^= 1;
  EXPECT_EQ(verify_round(g, 3, commitments, e, bad).reason, RoundReason::bad_opening);
  bad = good;
  bad.v.randomness[3] ^= 4;
  EXPECT_EQ(verify_round(g, 3, commitments, e, bad).reason, RoundReason::bad_opening);
  // Openings that commit to an out-of-range or repeated color.
  RoundCommitmentSet forged = commitments;
  RoundResponse same{Opening{1, Bytes(16, 1)}, Opening{1, Bytes(16, 2)}};
  forged.digests[0] = commit(1, same.u.randomness);
  forged.digests[1] = commit(1, same.v.randomness);
  EXPECT_EQ(verify_round(g, 3, forged, e, same).reason, RoundReason::monochromatic);
  RoundResponse wide{Opening{7, Bytes(16, 1)}, Opening{1, Bytes(16, 2)}};
  forged.digests[0] = commit(7, wide.u.randomness);
  EXPECT_EQ(verify_round(g, 3, forged, e, wide).reason, RoundReason::color_range);
}

TEST(Soundness, ResultDoesNotDependOnThreadCount) {
  const Graph g = oracle::cycle_graph(6);
  const Coloring bad({0, 1, 0, 1, 2, 2}, 3);
  const Rng master(42);
  const auto one = simulate_soundness(g, bad, 3, 4000, master, 1);
  const auto four = simulate_soundness(g, bad, 3, 4000, master, 4);
  EXPECT_EQ(one.escapes, four.escapes);
  EXPECT_EQ(one.conflicts, 1u);
  EXPECT_EQ(one.edges, 6u);
}

TEST(Soundness, SingleRoundEscapeRateMatchesOneMinusFraction) {
  const Graph g = oracle::cycle_graph(6);
  const Coloring bad({0, 1, 0, 1, 2, 2}, 3);
  const auto r = simulate_soundness(g, bad, 1, 60000, Rng(43));
  EXPECT_NEAR(r.analytic(), 5.0 / 6.0, 1e-15);
  EXPECT_LT(std::abs(r.rate() - r.analytic()), 4 * r.sigma());
}

TEST(Soundness, ValidColoringIsRejected) {
  const Graph g = oracle::cycle_graph(6);
  try {
    simulate_soundness(g, Coloring({0, 1, 0, 1, 0, 1}, 3), 1, 10, Rng(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::coloring_actually_valid);
  }
}

TEST(Examples, SingleColorRoundUsesIdentity) {
  const Graph g(3, {});
  Rng rng(30);
  auto [state, commitments] = prove_round(g, Coloring({0, 0, 0}, 1), rng);
  EXPECT_EQ(state.permutation(), (Permutation{0}));
  for (Vertex v = 0; v < 3; ++v) {
    EXPECT_TRUE(verify_opening(commitments.digests[v], {0, state.randomness()[v]}));
  }
}

TEST(Examples, IndependentRoundsRarelyShareAPermutation) {
  // Two independent rounds over k = 3 use the same permutation with probability 1/6.
  const auto f = planted(9, 3, 31);
  Rng rng(32);
  const int pairs = 12000;
  int same = 0;
  for (int i = 0; i < pairs; ++i) {
    const auto a = prove_round(f.graph, f.coloring, rng).first.permutation();
    const auto b = prove_round(f.graph, f.coloring, rng).first.permutation();
    same += a == b;
  }
  const double sigma = std::sqrt((1.0 / 6.0) * (5.0 / 6.0) / pairs);
  EXPECT_LT(std::abs(same / static_cast<double>(pairs) - 1.0 / 6.0), 4 * sigma);
}

TEST(Examples, RevealedColorPairIsUniform) {
  // Zero-knowledge sanity: the opened pair on a fixed edge is uniform over ordered distinct pairs.
  const auto f = planted(12, 4, 33);
  const Edge e = f.graph.edges().front();
  Rng rng(34);
  std::map<std::pair<Color, Color>, std::uint64_t> counts;
  for (int i = 0; i < 24000; ++i) {
    auto [state, commitments] = prove_round(f.graph, f.coloring, rng);
    const auto r = respond(state, f.graph, e);
    ++counts[{r.u.alpha, r.v.alpha}];
  }
  ASSERT_EQ(counts.size(), 12u);
  std::vector<std::uint64_t> v;
  for (const auto& [pair, c] : counts) {
    EXPECT_NE(pair.first, pair.second);
    v.push_back(c);
  }
  EXPECT_GT(oracle::chi_square_uniform_p(v), 0.001);
}

TEST(Examples, SwappedRandomnessIsABadOpening) {
  const auto f = planted(12, 3, 35);
  Rng rng(36);
  auto [state, commitments] = prove_round(f.graph, f.coloring, rng);
  const Edge e = f.graph.edges().back();
  auto r = respond(state, f.graph, e);
  std::swap(r.u.randomness, r.v.randomness);
  EXPECT_EQ(verify_round(f.graph, 3, commitments, e, r).reason, RoundReason::bad_opening);
}

TEST(Examples, EveryEdgeConflictedNeverEscapes) {
  const Graph g = oracle::cycle_graph(5);
  const auto r = simulate_soundness(g, Coloring({0, 0, 0, 0, 0}, 3), 1, 2000, Rng(37));
  EXPECT_EQ(r.conflicts, r.edges);
  EXPECT_EQ(r.escapes, 0u);
  EXPECT_EQ(r.analytic(), 0.0);
}
