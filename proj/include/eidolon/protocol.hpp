#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "eidolon/commitment.hpp"
#include "eidolon/graph.hpp"
#include "eidolon/rng.hpp"

namespace eidolon {

/// perm[c] is the image of color c.
using Permutation = std::vector<Color>;

/// Fisher-Yates over the caller's stream.
inline Permutation random_permutation(std::uint32_t k, Rng& rng) {
  Permutation perm(k);
  for (std::uint32_t c = 0; c < k; ++c) perm[c] = c;
  for (std::uint32_t i = k; i-- > 1;) std::swap(perm[i], perm[rng.uniform_below(i + 1)]);
  return perm;
}

inline bool is_permutation_of_k(const Permutation& perm) {
  std::vector<bool> seen(perm.size(), false);
  for (auto c : perm) {
    if (c >= perm.size() || seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

struct RoundCommitmentSet {
  std::vector<Digest> digests;
};

struct RoundResponse {
  Opening u;
  Opening v;
};

/// Prover secrets for a single round. Responding consumes the state.
class RoundState {
 public:
  const Permutation& permutation() const { return permutation_; }
  const std::vector<Color>& permuted_colors() const { return permuted_; }
  const std::vector<Bytes>& randomness() const { return randomness_; }
  bool consumed() const { return consumed_; }

 private:
  friend std::pair<RoundState, RoundCommitmentSet> commit_round(const Graph&, const Coloring&, Permutation, Rng&,
                                                                const CommitmentParams&);
  friend RoundResponse respond(RoundState&, const Graph&, Edge);

  Permutation permutation_;
  std::vector<Color> permuted_;
  std::vector<Bytes> randomness_;
  bool consumed_ = false;
};

/// Commits to perm(coloring[v]) for every vertex without checking the coloring.
/// Honest provers go through prove_round; the soundness simulator uses this directly.
inline std::pair<RoundState, RoundCommitmentSet> commit_round(const Graph& g, const Coloring& coloring,
                                                              Permutation perm, Rng& rng,
                                                              const CommitmentParams& params = {}) {
  if (coloring.size() != g.n()) throw Error(ErrorCode::length_mismatch, "coloring length differs from n");
  RoundState state;
  RoundCommitmentSet commitments;
  state.permutation_ = std::move(perm);
  state.permuted_.resize(g.n());
  state.randomness_.assign(g.n(), Bytes(params.r_bytes()));
  commitments.digests.resize(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    state.permuted_[v] = state.permutation_.at(coloring[v]);
    rng.fill(state.randomness_[v]);
    commitments.digests[v] = commit(state.permuted_[v], state.randomness_[v], params);
  }
  return {std::move(state), std::move(commitments)};
}

inline std::pair<RoundState, RoundCommitmentSet> prove_round(const Graph& g, const Coloring& coloring, Rng& rng,
                                                             const CommitmentParams& params = {}) {
  params.validate();
  if (!is_valid_coloring(g, coloring).valid) {
    throw Error(ErrorCode::invalid_coloring, "prover coloring has monochromatic edges");
  }
  return commit_round(g, coloring, random_permutation(coloring.k, rng), rng, params);
}

inline RoundResponse respond(RoundState& state, const Graph& g, Edge edge) {
  if (state.consumed_) throw Error(ErrorCode::state_reused, "round state already answered a challenge");
  if (edge.u > edge.v) std::swap(edge.u, edge.v);
  if (!g.has_edge(edge.u, edge.v)) throw Error(ErrorCode::edge_not_in_graph, "challenged pair is not an edge");
  state.consumed_ = true;
  return {Opening{state.permuted_[edge.u], state.randomness_[edge.u]},
          Opening{state.permuted_[edge.v], state.randomness_[edge.v]}};
}

enum class RoundReason { accepted, bad_edge, bad_opening, color_range, monochromatic };

constexpr std::string_view to_string(RoundReason r) {
  switch (r) {
    case RoundReason::accepted: return "accepted";
    case RoundReason::bad_edge: return "bad-edge";
    case RoundReason::bad_opening: return "bad-opening";
    case RoundReason::color_range: return "color-range";
    case RoundReason::monochromatic: return "monochromatic";
  }
  return "unknown";
}

struct RoundVerdict {
  RoundReason reason = RoundReason::accepted;
  bool accepted() const { return reason == RoundReason::accepted; }
};

/// Checks are applied in order: edge membership, both openings, color range, distinctness.
inline RoundVerdict verify_round(const Graph& g, std::uint32_t k, const RoundCommitmentSet& commitments, Edge edge,
                                 const RoundResponse& response, const CommitmentParams& params = {}) {
  if (!g.has_edge(edge.u, edge.v)) return {RoundReason::bad_edge};
  if (edge.u > edge.v) std::swap(edge.u, edge.v);
  if (commitments.digests.size() != g.n()) return {RoundReason::bad_opening};
  if (!verify_opening(commitments.digests[edge.u], response.u, params) ||
      !verify_opening(commitments.digests[edge.v], response.v, params)) {
    return {RoundReason::bad_opening};
  }
  if (response.u.alpha >= k || response.v.alpha >= k) return {RoundReason::color_range};
  if (response.u.alpha == response.v.alpha) return {RoundReason::monochromatic};
  return {};
}

struct SoundnessResult {
  std::uint64_t trials = 0;
  std::uint64_t escapes = 0;
  std::size_t conflicts = 0;  // monochromatic edges of the cheating coloring
  std::size_t edges = 0;
  std::uint64_t rounds = 0;

  double rate() const { return trials == 0 ? 0.0 : static_cast<double>(escapes) / static_cast<double>(trials); }
  /// (1 - t_bad/m)^T
  double analytic() const {
    return std::pow(1.0 - static_cast<double>(conflicts) / static_cast<double>(edges), static_cast<double>(rounds));
  }
  /// Binomial standard error of rate() under the analytic escape probability.
  double sigma() const {
    const double p = analytic();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
};

/// Runs `trials` independent T-round interactions with a prover that commits
/// honestly to a conflicted coloring; the verifier challenges uniformly.
/// Trial j draws all coins from master.split(j), so the result does not depend on `jobs`.
inline SoundnessResult simulate_soundness(const Graph& g, const Coloring& bad, std::uint64_t rounds,
                                          std::uint64_t trials, const Rng& master, unsigned jobs = 1) {
  const auto check = is_valid_coloring(g, bad);
  if (check.valid) throw Error(ErrorCode::coloring_actually_valid, "cheating coloring has no conflicts");
  if (rounds == 0) throw Error(ErrorCode::parameter_range, "need at least one round");

  auto run = [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t escapes = 0;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      Rng rng = master.split(trial);
      bool caught = false;
      for (std::uint64_t round = 0; round < rounds && !caught; ++round) {
        auto [state, commitments] = commit_round(g, bad, random_permutation(bad.k, rng), rng);
        const Edge edge = g.edges()[rng.uniform_below(g.m())];
        const RoundResponse response = respond(state, g, edge);
        caught = !verify_round(g, bad.k, commitments, edge, response).accepted();
      }
      if (!caught) ++escapes;
    }
    return escapes;
  };

  SoundnessResult result;
  result.trials = trials;
  result.conflicts = check.conflicts.size();
  result.edges = g.m();
  result.rounds = rounds;

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::uint64_t>(trials, 1))));
  if (jobs == 1) {
    result.escapes = run(0, trials);
    return result;
  }
  std::vector<std::uint64_t> partial(jobs, 0);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    const std::uint64_t begin = trials * w / jobs;
    const std::uint64_t end = trials * (w + 1) / jobs;
    workers.emplace_back([&, w, begin, end] { partial[w] = run(begin, end); });
  }
  for (auto& t : workers) t.join();
  for (auto p : partial) result.escapes += p;
  return result;
}

}  // namespace eidolon
