#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "eidolon/graph.hpp"
#include "eidolon/rng.hpp"

namespace eidolon {

/// Brelaz DSatur. Next vertex: max saturation, then max degree into the
/// uncolored subgraph, then lowest index; it takes the smallest free color.
inline Coloring dsatur(const Graph& g) {
  const std::uint32_t n = g.n();
  constexpr Color kUncolored = std::numeric_limits<Color>::max();
  std::vector<Color> color(n, kUncolored);
  std::vector<std::vector<bool>> seen(n);  // seen[v][c]: a neighbor of v has color c
  std::vector<std::uint32_t> saturation(n, 0);
  std::vector<std::uint32_t> free_degree(n);
  for (Vertex v = 0; v < n; ++v) free_degree[v] = static_cast<std::uint32_t>(g.degree(v));
  Color used = 0;

  for (std::uint32_t step = 0; step < n; ++step) {
    Vertex best = 0;
    bool have = false;
    for (Vertex v = 0; v < n; ++v) {
      if (color[v] != kUncolored) continue;
      if (!have || saturation[v] > saturation[best] ||
          (saturation[v] == saturation[best] && free_degree[v] > free_degree[best])) {
        best = v;
        have = true;
      }
    }
    Color c = 0;
    while (c < seen[best].size() && seen[best][c]) ++c;
    color[best] = c;
    used = std::max(used, c + 1);
    for (Vertex w : g.neighbors(best)) {
      if (color[w] != kUncolored) continue;
      --free_degree[w];
      if (seen[w].size() <= c) seen[w].resize(c + 1, false);
      if (!seen[w][c]) {
        seen[w][c] = true;
        ++saturation[w];
      }
    }
  }
  return Coloring(std::move(color), used);
}

/// Largest clique found by greedy growth from every start vertex.
inline std::vector<Vertex> greedy_clique(const Graph& g) {
  std::vector<Vertex> best;
  for (Vertex start = 0; start < g.n(); ++start) {
    std::vector<Vertex> clique{start};
    std::vector<Vertex> candidates = g.neighbors(start);
    while (!candidates.empty()) {
      Vertex pick = *std::max_element(candidates.begin(), candidates.end(), [&](Vertex a, Vertex b) {
        return g.degree(a) < g.degree(b) || (g.degree(a) == g.degree(b) && a > b);
      });
      clique.push_back(pick);
      std::vector<Vertex> next;
      for (Vertex c : candidates) {
        if (c != pick && g.has_edge(c, pick)) next.push_back(c);
      }
      candidates = std::move(next);
    }
    if (clique.size() > best.size()) best = std::move(clique);
  }
  return best;
}

enum class SearchStatus { found, impossible, timeout };

constexpr std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::impossible: return "impossible";
    case SearchStatus::timeout: return "timeout";
  }
  return "unknown";
}

struct KColoringResult {
  SearchStatus status = SearchStatus::timeout;
  std::optional<Coloring> coloring;
  std::uint64_t nodes = 0;  // search-tree nodes expanded
};

using TimeLimit = std::optional<std::chrono::milliseconds>;

namespace detail {

/// Backtracking k-coloring with forward checking. Vertex order is dynamic
/// (smallest remaining domain, then largest uncolored degree, then lowest
/// index); unused colors are interchangeable so only one of them is tried.
class KColorSearch {
 public:
  KColorSearch(const Graph& g, std::uint32_t k, TimeLimit limit)
      : g_(g), k_(k), forbid_(std::size_t{g.n()} * k, 0), domain_(g.n(), k), free_degree_(g.n()),
        color_(g.n(), kNone) {
    for (Vertex v = 0; v < g.n(); ++v) free_degree_[v] = static_cast<std::uint32_t>(g.degree(v));
    if (limit) deadline_ = std::chrono::steady_clock::now() + *limit;
  }

  KColoringResult run() {
    const auto clique = greedy_clique(g_);
    if (clique.size() > k_) return {SearchStatus::impossible, std::nullopt, 0};
    for (std::size_t i = 0; i < clique.size(); ++i) {
      if (!assign(clique[i], static_cast<Color>(i))) return {SearchStatus::impossible, std::nullopt, 0};
    }
    const std::uint32_t remaining = g_.n() - static_cast<std::uint32_t>(clique.size());
    const Color max_used = clique.empty() ? 0 : static_cast<Color>(clique.size());
    const bool ok = search(remaining, max_used);
    if (timed_out_) return {SearchStatus::timeout, std::nullopt, nodes_};
    if (!ok) return {SearchStatus::impossible, std::nullopt, nodes_};
    return {SearchStatus::found, Coloring(color_, k_), nodes_};
  }

 private:
  static constexpr Color kNone = std::numeric_limits<Color>::max();

  std::uint16_t& forbid(Vertex v, Color c) { return forbid_[std::size_t{v} * k_ + c]; }

  /// Colors v and propagates; false on a domain wipe-out (state is still updated).
  bool assign(Vertex v, Color c) {
    color_[v] = c;
    bool ok = true;
    for (Vertex w : g_.neighbors(v)) {
      if (color_[w] != kNone) continue;
      --free_degree_[w];
      if (forbid(w, c)++ == 0 && --domain_[w] == 0) ok = false;
    }
    return ok;
  }

  void unassign(Vertex v) {
    const Color c = color_[v];
    color_[v] = kNone;
    for (Vertex w : g_.neighbors(v)) {
      if (color_[w] != kNone) continue;
      ++free_degree_[w];
      if (--forbid(w, c) == 0) ++domain_[w];
    }
  }

  bool out_of_time() {
    if (timed_out_) return true;
    if (deadline_ && (nodes_ & 1023) == 0 && std::chrono::steady_clock::now() >= *deadline_) timed_out_ = true;
    return timed_out_;
  }

  /// max_used: number of colors opened so far (colors >= max_used are interchangeable).
  bool search(std::uint32_t remaining, Color max_used) {
    if (remaining == 0) return true;
    ++nodes_;
    if (out_of_time()) return false;

    Vertex v = kNone;
    for (Vertex w = 0; w < g_.n(); ++w) {
      if (color_[w] != kNone) continue;
      if (v == kNone || domain_[w] < domain_[v] || (domain_[w] == domain_[v] && free_degree_[w] > free_degree_[v])) {
        v = w;
      }
    }
    const Color limit = std::min<Color>(k_, max_used + 1);
    for (Color c = 0; c < limit; ++c) {
      if (forbid(v, c) != 0) continue;
      const bool ok = assign(v, c);
      if (ok && search(remaining - 1, std::max(max_used, c + 1))) return true;
      unassign(v);
      if (timed_out_) return false;
    }
    return false;
  }

  const Graph& g_;
  std::uint32_t k_;
  std::vector<std::uint16_t> forbid_;
  std::vector<std::uint32_t> domain_;
  std::vector<std::uint32_t> free_degree_;
  std::vector<Color> color_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace detail

/// Finds a coloring with at most k colors, proves none exists, or times out.
inline KColoringResult exact_k_coloring(const Graph& g, std::uint32_t k, TimeLimit limit = std::nullopt) {
  if (k == 0) throw Error(ErrorCode::parameter_range, "k must be positive");
  if (k >= g.n()) {
    std::vector<Color> colors(g.n());
    for (Vertex v = 0; v < g.n(); ++v) colors[v] = v;
    return {SearchStatus::found, Coloring(std::move(colors), k), 0};
  }
  if (g.n() > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::parameter_range, "exact search supports at most 65535 vertices");
  }
  return detail::KColorSearch(g, k, limit).run();
}

struct ChromaticResult {
  SearchStatus status = SearchStatus::timeout;  // found or timeout
  std::uint32_t chi = 0;                        // exact when found, best upper bound on timeout
  Coloring witness;
};

/// Walks k down from the DSatur bound until the search proves infeasibility.
inline ChromaticResult exact_chromatic(const Graph& g, TimeLimit limit = std::nullopt) {
  const auto start = std::chrono::steady_clock::now();
  ChromaticResult result;
  result.witness = dsatur(g);
  result.chi = result.witness.colors_used();
  const auto lower = static_cast<std::uint32_t>(std::max<std::size_t>(1, greedy_clique(g).size()));
  while (result.chi > lower) {
    TimeLimit remaining;
    if (limit) {
      const auto spent = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
      if (spent >= *limit) return result;
      remaining = *limit - spent;
    }
    const auto attempt = exact_k_coloring(g, result.chi - 1, remaining);
    if (attempt.status == SearchStatus::timeout) return result;
    if (attempt.status == SearchStatus::impossible) break;
    // Compact labels so the witness uses exactly 0..used-1.
    std::vector<Color> colors = attempt.coloring->colors;
    std::vector<Color> relabel(attempt.coloring->k, std::numeric_limits<Color>::max());
    Color used = 0;
    for (auto& c : colors) {
      if (relabel[c] == std::numeric_limits<Color>::max()) relabel[c] = used++;
      c = relabel[c];
    }
    result.witness = Coloring(std::move(colors), used);
    result.chi = used;
  }
  result.status = SearchStatus::found;
  return result;
}

struct ChromaticBand {
  double lower = 0.0;
  double upper = 0.0;
};

/// Asymptotic band n/r .. n/r (1 + 3 ln ln n / ln n) for G(n,p), with
/// r = 2 log_d n - log_d log_d n + 2 log_d(e/2) + 1 and d = 1/(1-p).
inline ChromaticBand bollobas_bounds(double n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::domain_error, "p must lie in (0,1)");
  const double d = 1.0 / (1.0 - p);
  if (!(n > d && n > std::exp(1.0))) throw Error(ErrorCode::domain_error, "n too small for the iterated logarithm");
  const double ln_d = std::log(d);
  auto log_d = [ln_d](double x) { return std::log(x) / ln_d; };
  const double r = 2.0 * log_d(n) - log_d(log_d(n)) + 2.0 * log_d(std::exp(1.0) / 2.0) + 1.0;
  if (!(r > 0.0)) throw Error(ErrorCode::domain_error, "non-positive r");
  const double lower = n / r;
  const double eps = 3.0 * std::log(std::log(n)) / std::log(n);
  return {lower, lower * (1.0 + eps)};
}

/// Empirical fit chi(n, 1/2) ~ 1.13 n^0.54, rounded.
inline std::uint32_t chi_power_law(std::uint32_t n) {
  return static_cast<std::uint32_t>(std::lround(1.13 * std::pow(static_cast<double>(n), 0.54)));
}

enum class Solver { dsatur, exact };

constexpr std::string_view to_string(Solver s) { return s == Solver::dsatur ? "dsatur" : "exact"; }

struct AttackReport {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  std::string instance_kind;  // "planted" or "er"
  std::string solver;
  std::uint32_t colors_used = 0;
  std::size_t conflicts = 0;
  bool recovered = false;  // valid coloring with <= k colors
  double wall_ms = 0.0;
  bool timeout = false;
};

/// Runs one solver against (g, k). The exact solver reports colors_used = 0 when it finds nothing.
inline AttackReport run_attack(const Graph& g, std::uint32_t k, Solver solver, TimeLimit limit = std::nullopt) {
  AttackReport report;
  report.n = g.n();
  report.k = k;
  report.solver = std::string(to_string(solver));
  const auto start = std::chrono::steady_clock::now();
  std::optional<Coloring> coloring;
  if (solver == Solver::dsatur) {
    coloring = dsatur(g);
  } else {
    auto result = exact_k_coloring(g, k, limit);
    report.timeout = result.status == SearchStatus::timeout;
    coloring = std::move(result.coloring);
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (coloring) {
    report.colors_used = coloring->colors_used();
    report.conflicts = is_valid_coloring(g, *coloring).conflicts.size();
    report.recovered = report.conflicts == 0 && report.colors_used <= k;
  }
  return report;
}

struct ExperimentConfig {
  std::vector<std::uint32_t> sizes;
  double density = 0.5;
  std::uint32_t trials = 1;
  std::vector<Solver> solvers{Solver::dsatur, Solver::exact};
  TimeLimit time_limit = std::chrono::milliseconds(60'000);
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

/// Seed of trial `trial` at size n, derived from the master seed.
inline std::uint64_t instance_seed(std::uint64_t master, std::uint32_t n, std::uint32_t trial) {
  return Rng(master).split(n).split(trial).next_u64();
}

/// For each n: k = chi_power_law(n), planted instance plus an ER baseline of
/// matching density, every solver on both. Rows come back in a fixed order
/// (n, trial, planted before er, solver order) whatever `jobs` is.
inline std::vector<AttackReport> recovery_experiment(const ExperimentConfig& config) {
  struct Job {
    std::uint32_t n;
    std::uint32_t trial;
  };
  std::vector<Job> jobs;
  for (auto n : config.sizes) {
    for (std::uint32_t trial = 0; trial < config.trials; ++trial) jobs.push_back({n, trial});
  }
  const std::size_t per_job = 2 * config.solvers.size();
  std::vector<AttackReport> reports(jobs.size() * per_job);

  auto run_job = [&](std::size_t index) {
    const auto [n, trial] = jobs[index];
    const std::uint32_t k = std::clamp<std::uint32_t>(chi_power_law(n), 1, n);
    const std::uint64_t seed = instance_seed(config.seed, n, trial);
    Rng planted_rng(seed);
    Rng er_rng = Rng(seed).split(1);
    const Graph planted = generate_planted(PartitionSpec::balanced(n, k), config.density, planted_rng).graph;
    const Graph er = generate_er(n, config.density, er_rng);
    std::size_t slot = index * per_job;
    for (const auto* g : {&planted, &er}) {
      for (auto solver : config.solvers) {
        AttackReport r = run_attack(*g, k, solver, config.time_limit);
        r.density = config.density;
        r.seed = seed;
        r.instance_kind = g == &planted ? "planted" : "er";
        reports[slot++] = std::move(r);
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(jobs.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
    return reports;
  }
  std::mutex mutex;
  std::size_t next = 0;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t index = 0;
        {
          std::lock_guard lock(mutex);
          if (next == jobs.size()) return;
          index = next++;
        }
        run_job(index);
      }
    });
  }
  for (auto& t : pool) t.join();
  return reports;
}

inline constexpr std::string_view kCsvHeader =
    "n,k,density,seed,instance_kind,solver,colors_used,conflicts,recovered,wall_ms,timeout";

/// With include_timing=false wall_ms is written as 0 so that seeded runs are byte-identical.
inline void write_csv(std::ostream& os, const std::vector<AttackReport>& reports, bool include_timing = true) {
  os << kCsvHeader << '\n';
  for (const auto& r : reports) {
    std::ostringstream density;
    density << r.density;
    os << r.n << ',' << r.k << ',' << density.str() << ',' << r.seed << ',' << r.instance_kind << ',' << r.solver
       << ',' << r.colors_used << ',' << r.conflicts << ',' << (r.recovered ? 1 : 0) << ',' << std::fixed
       << std::setprecision(3) << (include_timing ? r.wall_ms : 0.0) << std::defaultfloat << ','
       << (r.timeout ? 1 : 0) << '\n';
  }
}

}  // namespace eidolon
