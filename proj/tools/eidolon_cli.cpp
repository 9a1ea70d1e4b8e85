// eidolon: key generation, signing, verification, size accounting and attack
// experiments for the k-colorability signature scheme.
//
// Exit codes: 0 success/accept, 1 reject or no coloring found, 2 usage or malformed input.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eidolon/eidolon.hpp"

namespace {

using namespace eidolon;

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;

/// --seed, else EIDOLON_SEED, else a fresh value that is echoed so the run can be replayed.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("EIDOLON_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const std::uint64_t value = std::stoull(env, &used, 0);
      if (used == std::strlen(env)) return value;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::parameter_range, "EIDOLON_SEED is not an unsigned integer");
  }
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) | rd();
}

Bytes read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    const std::string s = ss.str();
    return Bytes(s.begin(), s.end());
  }
  return read_file(path);
}

/// Writes through a callback to a file, or to standard output for "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io_error, "cannot open " + path + " for writing");
  fn(out);
  if (!out) throw Error(ErrorCode::io_error, "write to " + path + " failed");
}

Variant parse_variant(const std::string& name) {
  if (name == "plain") return Variant::plain;
  if (name == "merkle") return Variant::merkle;
  return Variant::merkle_shared;
}

Solver parse_solver(const std::string& name) { return name == "dsatur" ? Solver::dsatur : Solver::exact; }

/// 1.57 MiB, 144.5 KiB, 4.27 KiB: two decimals below 100, one above.
std::string human_size(double bytes) {
  const char* unit = "B";
  if (bytes >= 1024.0 * 1024.0) {
    bytes /= 1024.0 * 1024.0;
    unit = "MiB";
  } else if (bytes >= 1024.0) {
    bytes /= 1024.0;
    unit = "KiB";
  }
  std::ostringstream os;
  os << std::fixed << std::setprecision(bytes < 100.0 ? 2 : 1) << bytes << ' ' << unit;
  return os.str();
}

std::string join_sizes(const PartitionSpec& spec) {
  std::string out = "[";
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) out += (i ? "," : "") + std::to_string(spec.sizes[i]);
  return out + "]";
}

PublicKey load_public_key(const std::string& path) { return deserialize_public_key(read_input(path)); }

// keygen ---------------------------------------------------------------------

struct KeygenArgs {
  std::uint32_t n = 0, k = 0;
  double density = 0.5;
  std::optional<std::uint64_t> seed;
  std::string out_pk, out_sk;
};

int cmd_keygen(const KeygenArgs& a) {
  const std::uint64_t seed = resolve_seed(a.seed);
  Rng rng(seed);
  const KeyPair kp = keygen(a.n, a.k, a.density, rng);
  write_file(a.out_pk, serialize(kp.pk));
  write_file(a.out_sk, serialize(kp.sk), true);
  std::cout << "n=" << kp.pk.graph.n() << "\nk=" << kp.pk.k << "\nm=" << kp.pk.graph.m() << "\ndensity=" << a.density
            << "\np_adj=" << adjusted_edge_probability(a.n, kp.spec, a.density) << "\nsizes=" << join_sizes(kp.spec)
            << "\nseed=" << seed << '\n';
  return kExitOk;
}

// sign / verify --------------------------------------------------------------

struct SignArgs {
  std::string pk, sk, msg_file, variant = "merkle", out;
  std::uint32_t t = 0;
  std::optional<std::uint64_t> seed;
};

int cmd_sign(const SignArgs& a) {
  const PublicKey pk = load_public_key(a.pk);
  const SecretKey sk = deserialize_secret_key(read_file(a.sk));
  if (sk.coloring.size() != pk.graph.n()) throw Error(ErrorCode::malformed_input, "secret key does not match public key");
  const Bytes message = read_input(a.msg_file);
  const std::uint64_t seed = resolve_seed(a.seed);
  Rng rng(seed);
  const Variant variant = parse_variant(a.variant);
  const Signature sig = variant == Variant::plain
                            ? Signature(sign_plain(pk, sk, message, a.t, rng))
                            : Signature(sign_merkle(pk, sk, message, a.t, rng, variant == Variant::merkle_shared));
  const Bytes data = serialize(sig);
  write_file(a.out, data);
  std::cout << "variant=" << to_string(variant) << "\nt=" << a.t << "\nbytes=" << data.size()
            << "\nsoundness_error=" << std::pow(1.0 - 1.0 / static_cast<double>(pk.graph.m()), a.t)
            << "\nseed=" << seed << '\n';
  return kExitOk;
}

struct VerifyArgs {
  std::string pk, msg_file, sig;
};

int cmd_verify(const VerifyArgs& a) {
  const PublicKey pk = load_public_key(a.pk);
  const Signature sig = deserialize_signature(read_file(a.sig));
  const Bytes message = read_input(a.msg_file);
  const Verdict verdict = verify(pk, message, sig);
  if (verdict.accepted()) {
    std::cout << "result=accept\n";
    return kExitOk;
  }
  std::cout << "result=reject\n";
  std::cerr << "eidolon: signature rejected: " << to_string(verdict.reason);
  if (verdict.round) std::cerr << " (round " << *verdict.round << ")";
  std::cerr << '\n';
  return kExitReject;
}

// sizes ----------------------------------------------------------------------

struct SizesArgs {
  std::uint32_t n = 0, t = 0;
  std::string variant;  // empty: all
  std::optional<double> s_bar;
  bool measure = false;
  std::uint32_t k = 3;
  std::optional<std::uint64_t> seed;
};

void print_size_row(const std::string& name, std::uint64_t bits) {
  std::cout << std::left << std::setw(15) << name << std::right << std::setw(12) << bits / 8 << " B  " << std::setw(10)
            << human_size(static_cast<double>(bits) / 8.0) << '\n';
}

int cmd_sizes(const SizesArgs& a) {
  if (a.n < 2 || a.t == 0) throw Error(ErrorCode::parameter_range, "need n >= 2 and t >= 1");
  const std::uint64_t depth = ceil_log2(a.n);
  if (a.s_bar && (*a.s_bar < 0.0 || *a.s_bar > static_cast<double>(depth))) {
    throw Error(ErrorCode::parameter_range, "s-bar must lie in [0, ceil(log2 n)]");
  }
  auto wanted = [&](Variant v) { return a.variant.empty() || parse_variant(a.variant) == v; };
  std::cout << "# body sizes for n=" << a.n << " t=" << a.t << " (formula)\n";
  if (wanted(Variant::plain)) print_size_row("plain", signature_size_bits(a.n, a.t, Variant::plain));
  if (wanted(Variant::merkle)) print_size_row("merkle", signature_size_bits(a.n, a.t, Variant::merkle));
  if (wanted(Variant::merkle_shared) && a.s_bar) {
    print_size_row("merkle-shared", signature_size_bits(a.n, a.t, Variant::merkle_shared, *a.s_bar));
  }
  if (!a.measure) return kExitOk;

  const std::uint64_t seed = resolve_seed(a.seed);
  Rng rng(seed);
  const KeyPair kp = keygen(a.n, a.k, 0.5, rng);
  const Bytes message{'m'};
  const std::size_t framing = kSignatureHeaderBytes + SchemeParams::nonce_bytes;
  std::cout << "# measured serialized signatures (header " << framing << " B excluded), seed=" << seed << '\n';
  if (wanted(Variant::plain)) {
    print_size_row("plain", 8 * (serialize(sign_plain(kp.pk, kp.sk, message, a.t, rng)).size() - framing));
  }
  if (wanted(Variant::merkle)) {
    print_size_row("merkle", 8 * (serialize(sign_merkle(kp.pk, kp.sk, message, a.t, rng)).size() - framing));
  }
  if (wanted(Variant::merkle_shared)) {
    const SignatureMerkle sig = sign_merkle(kp.pk, kp.sk, message, a.t, rng, true);
    print_size_row("merkle-shared", 8 * (serialize(sig).size() - framing));
    const double shared = static_cast<double>(total_shared_hashes(sig, kp.pk, message));
    // Union convention counts siblings strictly above the LCA; the other counts the LCA level too.
    std::cout << "s_bar_union=" << shared / a.t << "\ns_bar_with_lca=" << (shared + a.t) / a.t << '\n';
  }
  return kExitOk;
}

// soundness ------------------------------------------------------------------

struct SoundnessArgs {
  std::uint32_t n = 0, k = 3, t_bad = 1;
  double density = 0.5;
  std::vector<std::uint64_t> rounds{1};
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
};

/// Planted graph plus `t_bad` random intra-class edges. The planted coloring
/// then has exactly t_bad monochromatic edges and plays the cheating prover.
struct CheatingInstance {
  Graph graph;
  Coloring coloring;
};

CheatingInstance cheating_instance(const SoundnessArgs& a, Rng& rng) {
  if (a.k < 2 || a.k > a.n) throw Error(ErrorCode::parameter_range, "need 2 <= k <= n");
  PlantedInstance inst = generate_planted(PartitionSpec::balanced(a.n, a.k), a.density, rng);
  std::vector<Edge> intra;
  for (Vertex u = 0; u < a.n; ++u)
    for (Vertex v = u + 1; v < a.n; ++v)
      if (inst.coloring[u] == inst.coloring[v]) intra.push_back({u, v});
  if (intra.size() < a.t_bad) throw Error(ErrorCode::parameter_range, "t-bad exceeds the intra-class pair count");
  std::vector<Edge> edges = inst.graph.edges();
  for (std::uint32_t i = 0; i < a.t_bad; ++i) {
    const auto j = i + rng.uniform_below(intra.size() - i);
    std::swap(intra[i], intra[j]);
    edges.push_back(intra[i]);
  }
  return {Graph(a.n, std::move(edges)), std::move(inst.coloring)};
}

int cmd_soundness(const SoundnessArgs& a) {
  const std::uint64_t seed = resolve_seed(a.seed);
  Rng rng(seed);
  const CheatingInstance inst = cheating_instance(a, rng);
  std::cout << "n=" << a.n << "\nk=" << a.k << "\nm=" << inst.graph.m()
            << "\nt_bad=" << is_valid_coloring(inst.graph, inst.coloring).conflicts.size() << "\nseed=" << seed << '\n';
  std::cout << std::setw(8) << "rounds" << std::setw(12) << "trials" << std::setw(12) << "escapes" << std::setw(14)
            << "empirical" << std::setw(14) << "analytic" << std::setw(10) << "z" << '\n';
  for (std::size_t i = 0; i < a.rounds.size(); ++i) {
    const auto r = simulate_soundness(inst.graph, inst.coloring, a.rounds[i], a.trials, rng.split(i), a.jobs);
    const double z = r.sigma() > 0 ? (r.rate() - r.analytic()) / r.sigma() : 0.0;
    std::cout << std::setw(8) << r.rounds << std::setw(12) << r.trials << std::setw(12) << r.escapes
              << std::setw(14) << std::setprecision(6) << r.rate() << std::setw(14) << r.analytic() << std::setw(10)
              << std::setprecision(3) << z << '\n';
  }
  return kExitOk;
}

// attack / experiment --------------------------------------------------------

struct AttackArgs {
  std::string graph, pk, csv = "-", coloring_out;
  std::optional<std::uint32_t> k;
  std::vector<std::string> solvers{"dsatur", "exact"};
  double time_limit = 60.0;
  bool no_timing = false;
};

TimeLimit to_limit(double seconds) {
  if (seconds <= 0.0) return std::nullopt;
  return std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(seconds * 1000.0)));
}

int cmd_attack(const AttackArgs& a) {
  std::optional<Graph> loaded;
  std::uint32_t k = 0;
  if (!a.pk.empty()) {
    PublicKey pk = load_public_key(a.pk);
    k = pk.k;
    loaded.emplace(std::move(pk.graph));
  } else {
    const Bytes text = read_input(a.graph);
    std::istringstream is(std::string(text.begin(), text.end()));
    GraphFile file = read_graph_text(is);
    k = file.k;
    loaded.emplace(std::move(file.graph));
  }
  const Graph& g = *loaded;
  if (a.k) k = *a.k;
  if (k == 0) throw Error(ErrorCode::parameter_range, "k must be positive");

  std::vector<AttackReport> reports;
  std::optional<Coloring> best;
  for (const auto& name : a.solvers) {
    const Solver solver = parse_solver(name);
    AttackReport report = run_attack(g, k, solver, to_limit(a.time_limit));
    report.instance_kind = a.pk.empty() ? "graph" : "public-key";
    if (report.recovered && !best) best = solver == Solver::dsatur ? dsatur(g) : exact_k_coloring(g, k).coloring;
    reports.push_back(std::move(report));
  }
  with_output(a.csv, [&](std::ostream& os) { write_csv(os, reports, !a.no_timing); });
  if (best && !a.coloring_out.empty()) with_output(a.coloring_out, [&](std::ostream& os) { write_coloring_text(os, *best); });
  return best ? kExitOk : kExitReject;
}

struct ExperimentArgs {
  std::uint32_t n_min = 10, n_max = 16, n_step = 2, trials = 5;
  double density = 0.5;
  std::vector<std::string> solvers{"dsatur", "exact"};
  double time_limit = 60.0;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::string csv = "-";
  bool no_timing = false;
};

int cmd_experiment(const ExperimentArgs& a) {
  if (a.n_min < 2 || a.n_max < a.n_min || a.n_step == 0) throw Error(ErrorCode::parameter_range, "bad size range");
  ExperimentConfig config;
  for (std::uint32_t n = a.n_min; n <= a.n_max; n += a.n_step) config.sizes.push_back(n);
  config.density = a.density;
  config.trials = a.trials;
  config.solvers.clear();
  for (const auto& s : a.solvers) config.solvers.push_back(parse_solver(s));
  config.time_limit = to_limit(a.time_limit);
  config.seed = resolve_seed(a.seed);
  config.jobs = a.jobs;
  const auto reports = recovery_experiment(config);
  with_output(a.csv, [&](std::ostream& os) { write_csv(os, reports, !a.no_timing); });
  std::cerr << "eidolon: seed=" << config.seed << " rows=" << reports.size() << '\n';
  return kExitOk;
}

// export-graph / generate ----------------------------------------------------

int cmd_export_graph(const std::string& pk_path, const std::string& out) {
  const PublicKey pk = load_public_key(pk_path);
  with_output(out, [&](std::ostream& os) { write_graph_text(os, pk.graph, pk.k); });
  return kExitOk;
}

struct GenerateArgs {
  std::uint32_t n = 0, k = 3;
  double density = 0.5;
  bool er = false;
  std::optional<std::uint64_t> seed;
  std::string out = "-", coloring_out;
};

int cmd_generate(const GenerateArgs& a) {
  if (a.n == 0 || a.k == 0 || a.k > a.n) throw Error(ErrorCode::parameter_range, "need 1 <= k <= n");
  const std::uint64_t seed = resolve_seed(a.seed);
  Rng rng(seed);
  if (a.er) {
    const Graph g = generate_er(a.n, a.density, rng);
    with_output(a.out, [&](std::ostream& os) { write_graph_text(os, g, a.k); });
  } else {
    const PlantedInstance inst = generate_planted(PartitionSpec::balanced(a.n, a.k), a.density, rng);
    with_output(a.out, [&](std::ostream& os) { write_graph_text(os, inst.graph, a.k); });
    if (!a.coloring_out.empty()) {
      with_output(a.coloring_out, [&](std::ostream& os) { write_coloring_text(os, inst.coloring); });
    }
  }
  std::cerr << "eidolon: seed=" << seed << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph k-colorability signatures and coloring attacks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  const auto solver_names = CLI::IsMember({"dsatur", "exact"});
  const auto variant_names = CLI::IsMember({"plain", "merkle", "merkle-shared"});
  std::function<int()> action;

  KeygenArgs kg;
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a planted key pair");
  keygen_cmd->add_option("--n", kg.n, "Vertex count")->required()->check(CLI::PositiveNumber);
  keygen_cmd->add_option("--k", kg.k, "Color count")->required()->check(CLI::PositiveNumber);
  keygen_cmd->add_option("--density", kg.density, "Target edge density s")->capture_default_str();
  keygen_cmd->add_option("--seed", kg.seed, "Deterministic seed (else EIDOLON_SEED, else random)");
  keygen_cmd->add_option("--out-pk", kg.out_pk, "Public key output file")->required();
  keygen_cmd->add_option("--out-sk", kg.out_sk, "Secret key output file (mode 0600)")->required();
  keygen_cmd->callback([&] { action = [&] { return cmd_keygen(kg); }; });

  SignArgs sg;
  auto* sign_cmd = app.add_subcommand("sign", "Sign a message file");
  sign_cmd->add_option("--pk", sg.pk, "Public key file")->required();
  sign_cmd->add_option("--sk", sg.sk, "Secret key file")->required();
  sign_cmd->add_option("--msg-file", sg.msg_file, "Message file, '-' for standard input")->required();
  sign_cmd->add_option("--t", sg.t, "Round count; soundness error is (1-1/m)^t")->required()->check(CLI::PositiveNumber);
  sign_cmd->add_option("--variant", sg.variant, "plain | merkle | merkle-shared")->check(variant_names)->capture_default_str();
  sign_cmd->add_option("--seed", sg.seed, "Deterministic seed (else EIDOLON_SEED, else random)");
  sign_cmd->add_option("--out", sg.out, "Signature output file")->required();
  sign_cmd->callback([&] { action = [&] { return cmd_sign(sg); }; });

  VerifyArgs vf;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a signature; exit 0 accept, 1 reject");
  verify_cmd->add_option("--pk", vf.pk, "Public key file")->required();
  verify_cmd->add_option("--msg-file", vf.msg_file, "Message file, '-' for standard input")->required();
  verify_cmd->add_option("--sig", vf.sig, "Signature file")->required();
  verify_cmd->callback([&] { action = [&] { return cmd_verify(vf); }; });

  SizesArgs sz;
  auto* sizes_cmd = app.add_subcommand("sizes", "Signature size table");
  sizes_cmd->add_option("--n", sz.n, "Vertex count")->required();
  sizes_cmd->add_option("--t", sz.t, "Round count")->required();
  sizes_cmd->add_option("--variant", sz.variant, "Restrict to one variant")->check(variant_names);
  sizes_cmd->add_option("--s-bar", sz.s_bar, "Mean shared sibling hashes per round");
  sizes_cmd->add_flag("--measure", sz.measure, "Also sign with a fresh key and report serialized sizes");
  sizes_cmd->add_option("--k", sz.k, "Color count for --measure")->capture_default_str();
  sizes_cmd->add_option("--seed", sz.seed, "Seed for --measure");
  sizes_cmd->callback([&] { action = [&] { return cmd_sizes(sz); }; });

  SoundnessArgs sd;
  auto* sound_cmd = app.add_subcommand("soundness", "Empirical escape rate of a cheating prover");
  sound_cmd->add_option("--n", sd.n, "Vertex count")->required();
  sound_cmd->add_option("--k", sd.k, "Color count")->capture_default_str();
  sound_cmd->add_option("--density", sd.density, "Edge density")->capture_default_str();
  sound_cmd->add_option("--t-bad", sd.t_bad, "Monochromatic edges in the cheating coloring")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sound_cmd->add_option("--rounds", sd.rounds, "Round counts T, comma separated")->delimiter(',')->capture_default_str();
  sound_cmd->add_option("--trials", sd.trials, "Trials per row")->capture_default_str()->check(CLI::PositiveNumber);
  sound_cmd->add_option("--seed", sd.seed, "Deterministic seed");
  sound_cmd->add_option("--jobs", sd.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sound_cmd->callback([&] { action = [&] { return cmd_soundness(sd); }; });

  AttackArgs at;
  auto* attack_cmd = app.add_subcommand("attack", "Try to recover a k-coloring; exit 1 if none found");
  auto* graph_opt = attack_cmd->add_option("--graph", at.graph, "Graph text file, '-' for standard input");
  auto* pk_opt = attack_cmd->add_option("--pk", at.pk, "Public key file");
  graph_opt->excludes(pk_opt);
  attack_cmd->add_option("--k", at.k, "Override the target color count");
  attack_cmd->add_option("--solvers", at.solvers, "dsatur,exact")->delimiter(',')->check(solver_names)->capture_default_str();
  attack_cmd->add_option("--time-limit", at.time_limit, "Seconds per exact search, 0 for none")->capture_default_str();
  attack_cmd->add_option("--csv", at.csv, "CSV output, '-' for standard output")->capture_default_str();
  attack_cmd->add_option("--coloring-out", at.coloring_out, "Write the recovered coloring here");
  attack_cmd->add_flag("--no-timing", at.no_timing, "Write wall_ms as 0 for byte-identical output");
  attack_cmd->callback([&] {
    if (at.graph.empty() && at.pk.empty()) throw CLI::RequiredError("--graph or --pk");
    action = [&] { return cmd_attack(at); };
  });

  ExperimentArgs ex;
  auto* exp_cmd = app.add_subcommand("experiment", "Planted vs random recovery sweep, CSV out");
  exp_cmd->add_option("--n-min", ex.n_min, "Smallest n")->capture_default_str();
  exp_cmd->add_option("--n-max", ex.n_max, "Largest n")->capture_default_str();
  exp_cmd->add_option("--n-step", ex.n_step, "Step in n")->capture_default_str();
  exp_cmd->add_option("--trials", ex.trials, "Trials per n")->capture_default_str();
  exp_cmd->add_option("--density", ex.density, "Edge density")->capture_default_str();
  exp_cmd->add_option("--solvers", ex.solvers, "dsatur,exact")->delimiter(',')->check(solver_names)->capture_default_str();
  exp_cmd->add_option("--time-limit", ex.time_limit, "Seconds per exact search, 0 for none")->capture_default_str();
  exp_cmd->add_option("--seed", ex.seed, "Master seed");
  exp_cmd->add_option("--jobs", ex.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  exp_cmd->add_option("--csv", ex.csv, "CSV output, '-' for standard output")->capture_default_str();
  exp_cmd->add_flag("--no-timing", ex.no_timing, "Write wall_ms as 0 for byte-identical output");
  exp_cmd->callback([&] { action = [&] { return cmd_experiment(ex); }; });

  std::string export_pk, export_out = "-";
  auto* export_cmd = app.add_subcommand("export-graph", "Write a public key's graph in text form");
  export_cmd->add_option("--pk", export_pk, "Public key file")->required();
  export_cmd->add_option("--out", export_out, "Output file, '-' for standard output")->capture_default_str();
  export_cmd->callback([&] { action = [&] { return cmd_export_graph(export_pk, export_out); }; });

  GenerateArgs gn;
  auto* gen_cmd = app.add_subcommand("generate", "Write a planted (or G(n,p)) instance in text form");
  gen_cmd->add_option("--n", gn.n, "Vertex count")->required();
  gen_cmd->add_option("--k", gn.k, "Color count")->capture_default_str();
  gen_cmd->add_option("--density", gn.density, "Edge density")->capture_default_str();
  gen_cmd->add_flag("--er", gn.er, "Plain G(n, density) instead of a planted instance");
  gen_cmd->add_option("--seed", gn.seed, "Deterministic seed");
  gen_cmd->add_option("--out", gn.out, "Graph output, '-' for standard output")->capture_default_str();
  gen_cmd->add_option("--coloring-out", gn.coloring_out, "Planted coloring output");
  gen_cmd->callback([&] { action = [&] { return cmd_generate(gn); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "eidolon: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "eidolon: " << e.what() << '\n';
    return kExitUsage;
  }
}
