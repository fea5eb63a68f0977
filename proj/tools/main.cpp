#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "graph_spec.hpp"
#include "wlgnn/construction.hpp"
#include "wlgnn/errors.hpp"
#include "wlgnn/experiments.hpp"
#include "wlgnn/gadgets.hpp"
#include "wlgnn/graph_io.hpp"
#include "wlgnn/lowerbound.hpp"
#include "wlgnn/net_json.hpp"
#include "wlgnn/primes.hpp"
#include "wlgnn/simulation.hpp"
#include "wlgnn/wl.hpp"

using namespace wlgnn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int ceil_log2(std::int64_t n) {
  int k = 0;
  while ((std::int64_t{1} << k) < n) ++k;
  return k;
}

// t = 3 * ceil(log2 n) unless given.
int default_t(NodeId n) { return std::max(1, 3 * ceil_log2(n)); }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
}

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string stats_line(const ReluNet& net) {
  const NetStats s = net.stats();
  std::ostringstream os;
  os << "units=" << s.units << " depth=" << s.depth << " width=" << s.width << " max_weight_bits=" << s.max_weight_bits;
  return os.str();
}

BiasMode parse_bias(const std::string& s) { return s == "aghp" ? BiasMode::Aghp : BiasMode::UniformTable; }

std::vector<std::int64_t> parse_vector(const std::string& s) { return cli::parse_int_list(s); }

// ---- wl ---------------------------------------------------------------

struct WlArgs {
  std::string graph;
  int max_iters = 0;
  bool dump = false;
  std::uint64_t seed = 0;
};

int run_wl(const WlArgs& a) {
  Graph g = cli::load_graph(a.graph, a.seed);
  WlTrace tr = wl_run(g, a.max_iters > 0 ? a.max_iters : g.num_nodes() + 1);
  for (std::size_t k = 0; k < tr.partitions.size(); ++k) {
    std::cout << k << ' ' << tr.partitions[k].num_classes;
    if (a.dump) {
      std::cout << " :";
      for (auto c : tr.partitions[k].class_of) std::cout << ' ' << c;
    }
    std::cout << '\n';
  }
  if (tr.converged) std::cout << "k0 = " << tr.k0 << '\n';
  else std::cout << "not converged after " << tr.partitions.size() - 1 << " iterations\n";
  return kExitOk;
}

// ---- simulate ---------------------------------------------------------

struct SimArgs {
  std::string graph;
  std::string variant = "c2";
  int t = 0;
  int prime_exponent = kDefaultPrimeExponent;
  std::int64_t F = 0;
  std::string bias = "uniform";
  std::string epsilon = "1/4";
  std::uint64_t seed = 0;
  int max_iters = 0;
};

int run_simulate(const SimArgs& a) {
  Graph g = cli::load_graph(a.graph, a.seed);
  ConstructionConfig cfg;
  cfg.variant = a.variant == "c1" ? Variant::C1 : Variant::C2;
  cfg.n = g.num_nodes();
  cfg.F = a.F > 0 ? a.F : choose_prime(g.num_nodes(), a.prime_exponent);
  cfg.t = a.t > 0 ? a.t : default_t(g.num_nodes());
  cfg.bias_mode = parse_bias(a.bias);
  cfg.epsilon = parse_rational(a.epsilon);
  cfg.master_seed = a.seed;
  cfg.max_iters = a.max_iters;
  SimulationResult r = run_simulation(g, cfg);
  std::cout << "# variant=" << a.variant << " n=" << cfg.n << " F=" << cfg.F;
  if (cfg.variant == Variant::C2) std::cout << " t=" << cfg.t << " bias=" << a.bias;
  std::cout << " seed=" << cfg.master_seed << '\n';
  std::cout << "k classes_ref classes_gnn equal\n";
  for (std::size_t k = 0; k < r.construction.size(); ++k) {
    std::cout << k << ' ' << r.reference[k].num_classes << ' ' << r.construction[k].num_classes << ' '
              << (partitions_equal(r.reference[k], r.construction[k]) ? 1 : 0) << '\n';
  }
  std::cout << "k0 = " << r.k0 << (r.converged ? "" : " (reference not converged)") << '\n';
  std::cout << "success = " << (r.success ? "true" : "false") << '\n';
  return kExitOk;
}

// ---- experiment -------------------------------------------------------

struct ExpArgs {
  std::string n_list = "128,256,512,1024";
  std::string t_list = "1,5,10,15,20,25,30,35,40";
  int graphs = 5;
  int trials = 0;  // 10 for families, 30 for cora
  double threshold = 0.7;
  int t_max = 0;
  double deg = 20;
  int prime_exponent = kDefaultPrimeExponent;
  std::string bias = "uniform";
  std::string epsilon = "1/4";
  std::uint64_t seed = 0;
  std::string out;
  std::string summary;
  std::string data;
  unsigned threads = 0;
};

SearchOptions search_options(const ExpArgs& a, int default_trials) {
  SearchOptions o;
  o.trials = a.trials > 0 ? a.trials : default_trials;
  o.threshold = a.threshold;
  o.t_max = a.t_max;
  o.prime_exponent = a.prime_exponent;
  o.bias_mode = parse_bias(a.bias);
  o.epsilon = parse_rational(a.epsilon);
  return o;
}

int run_family(Family family, const ExpArgs& a) {
  FamilyOptions o;
  o.search = search_options(a, 10);
  o.graphs_per_n = a.graphs;
  o.avg_degree = a.deg;
  o.threads = a.threads;
  std::vector<NodeId> ns;
  for (auto v : cli::parse_int_list(a.n_list)) {
    if (v < 1 || v > 10'000'000) throw ParameterError("n-list entries must lie in [1, 10^7]");
    ns.push_back(static_cast<NodeId>(v));
  }
  ExperimentResult r = run_family_experiment(family, ns, o, a.seed);
  if (!a.summary.empty()) write_output(a.summary, family_summary_csv(r));
  if (a.out.empty()) {
    std::cout << family_csv(r);
    return kExitOk;
  }
  write_output(a.out, family_csv(r));
  std::cout << "family=" << family_name(family) << " graphs_per_n=" << o.graphs_per_n << " trials=" << o.search.trials
            << " threshold=" << o.search.threshold << " prime_exponent=" << o.search.prime_exponent << '\n';
  std::cout << "n found mean_minimal_t stddev 2log2n 4log2n max_k0\n";
  for (const auto& agg : r.aggregates) {
    int max_k0 = 0;
    for (const auto& g : r.graphs)
      if (g.n == agg.n) max_k0 = std::max(max_k0, g.search.k0);
    const double l = std::log2(static_cast<double>(agg.n));
    std::cout << agg.n << ' ' << agg.found << '/' << o.graphs_per_n << ' ' << fmt(agg.mean_minimal_t, 2) << ' '
              << fmt(agg.stddev, 2) << ' ' << fmt(2 * l, 1) << ' ' << fmt(4 * l, 1) << ' ' << max_k0 << '\n';
  }
  return kExitOk;
}

int run_cora(const ExpArgs& a) {
  Graph g = cli::load_graph(a.data.empty() ? std::string("cora") : "cora:path=" + a.data, a.seed);
  std::vector<int> ts;
  for (auto v : cli::parse_int_list(a.t_list)) {
    if (v < 1 || v > 4096) throw ParameterError("t-list entries must lie in [1, 4096]");
    ts.push_back(static_cast<int>(v));
  }
  const SearchOptions o = search_options(a, 30);
  CoraResult r = run_cora_experiment(g, ts, o.trials, a.seed, o, a.threads);
  if (a.out.empty()) {
    std::cout << cora_csv(r);
    return kExitOk;
  }
  write_output(a.out, cora_csv(r));
  std::cout << "cora n=" << g.num_nodes() << " edges=" << g.num_edges() << " k0=" << r.k0
            << " wl_classes=" << r.num_classes << '\n';
  for (const auto& row : r.rows) std::cout << "t=" << row.t << ' ' << row.successes << '/' << row.trials << '\n';
  return kExitOk;
}

// ---- compile-net ------------------------------------------------------

struct CompileArgs {
  std::int64_t F = 0;
  std::int64_t n = 0;
  std::int64_t i = 0;
  std::string half_period = "5";
  std::int64_t domain = 0;
  int t = 0;
  int iteration = 1;
  int prime_exponent = kDefaultPrimeExponent;
  std::string bias = "uniform";
  std::string epsilon = "1/4";
  std::int64_t max_field = CompileOptions{}.max_field;
  std::uint64_t seed = 0;
  std::string out;
};

int run_compile(const std::string& kind, const CompileArgs& a) {
  ReluNet net;
  if (kind == "mod") {
    const std::int64_t F = a.F > 0 ? a.F : 31;
    const std::int64_t n = a.n > 0 ? a.n : 20;
    net = build_mod(F, n * F);
  } else if (kind == "indicator") {
    net = build_indicator(a.i);
  } else if (kind == "tw") {
    const Rational P = parse_rational(a.half_period);
    net = build_triangular_wave(P, a.domain > 0 ? a.domain : BigInt(ceil_of(4 * P)).get_si());
  } else {
    ConstructionConfig cfg;
    cfg.variant = kind == "phi-c1" ? Variant::C1 : Variant::C2;
    cfg.n = static_cast<NodeId>(a.n > 0 ? a.n : 10);
    cfg.F = a.F > 0 ? a.F : choose_prime(cfg.n, a.prime_exponent);
    cfg.t = a.t > 0 ? a.t : default_t(cfg.n);
    cfg.bias_mode = parse_bias(a.bias);
    cfg.epsilon = parse_rational(a.epsilon);
    cfg.master_seed = a.seed;
    cfg.validate();
    const IterationWeights w = IterationWeights::derive(cfg, a.iteration);
    const CompileOptions opts{a.max_field};
    net = cfg.variant == Variant::C1 ? compile_phi_c1(w, cfg.F, cfg.n, opts) : compile_phi_c2(w, cfg.F, cfg.n, cfg.t, opts);
  }
  const std::string json = serialize_net(net) + "\n";
  if (a.out.empty()) {
    std::cerr << stats_line(net) << '\n';
    std::cout << json;
  } else {
    write_output(a.out, json);
    std::cout << kind << ' ' << stats_line(net) << '\n';
  }
  return kExitOk;
}

// ---- verify -----------------------------------------------------------

struct VerifyArgs {
  std::string gadget = "all";
  std::int64_t F = 0;
  std::int64_t n = 0;
  std::string net_path;
};

struct Tally {
  std::int64_t exact = 0;
  std::int64_t total = 0;
  void add(bool ok) {
    ++total;
    exact += ok;
  }
};

Tally verify_mod(const ReluNet& net, std::int64_t F, std::int64_t n) {
  Tally t;
  for (std::int64_t z = 0; z <= n * F; ++z) t.add(net.evaluate_scalar(Rational(static_cast<long>(z))) == z % F);
  return t;
}

Tally verify_tw(const ReluNet& net, const Rational& P, std::int64_t D) {
  Tally t;
  for (std::int64_t x = 0; x <= D; ++x) {
    const Rational q(static_cast<long>(x));
    t.add(net.evaluate_scalar(q) == triangular_wave_value(P, q));
  }
  return t;
}

Tally verify_indicator(std::int64_t i, std::int64_t lo, std::int64_t hi) {
  const ReluNet net = build_indicator(i);
  Tally t;
  for (std::int64_t z = lo; z <= hi; ++z) t.add(net.evaluate_scalar(Rational(static_cast<long>(z))) == (z == i ? 1 : 0));
  return t;
}

Tally verify_threshold(std::int64_t lo, std::int64_t hi) {
  Tally t;
  const std::vector<std::int64_t> one{1};
  for (std::int64_t theta : {-7, 0, 1, 5}) {
    const ReluNet net = build_threshold(one, theta, 8);
    for (std::int64_t z = lo; z <= hi; ++z) t.add(net.evaluate_scalar(Rational(static_cast<long>(z))) == (z >= theta ? 1 : 0));
  }
  return t;
}

Tally verify_bits(std::int64_t F, std::int64_t n) {
  Tally t;
  for (int j = 0; j <= ceil_log2(F); ++j) {
    const ReluNet net = build_bit_extract(j, F, n);
    for (std::int64_t z = 0; z <= n * F; ++z) t.add(net.evaluate_scalar(Rational(static_cast<long>(z))) == ((z >> j) & 1));
  }
  return t;
}

bool report(const std::string& label, const Tally& t) {
  std::cout << label << ": " << t.exact << '/' << t.total << " exact\n";
  return t.exact == t.total;
}

int run_verify(const VerifyArgs& a) {
  bool ok = true;
  const std::string& g = a.gadget;
  if (!a.net_path.empty()) {
    if (g != "mod") throw ParameterError("--net currently verifies mod nets; pass --gadget mod --F --n");
    if (a.F <= 0 || a.n <= 0) throw ParameterError("--net needs --F and --n");
    const ReluNet net = deserialize_net(read_text_file(a.net_path));
    ok &= report("mod F=" + std::to_string(a.F) + " n=" + std::to_string(a.n), verify_mod(net, a.F, a.n));
  } else {
    if (g == "mod" || g == "all") {
      std::vector<std::pair<std::int64_t, std::int64_t>> cases;
      if (a.F > 0) cases.push_back({a.F, a.n > 0 ? a.n : std::max<std::int64_t>(1, 100000 / a.F)});
      else
        for (std::int64_t F : {3, 5, 31, 101, 10007}) cases.push_back({F, std::max<std::int64_t>(1, 100000 / F)});
      for (auto [F, n] : cases)
        ok &= report("mod F=" + std::to_string(F) + " n=" + std::to_string(n), verify_mod(build_mod(F, n * F), F, n));
    }
    if (g == "tw" || g == "all") {
      for (long P2 : {2L, 5L, 10L, 31L}) {
        const Rational P = make_rational(P2, 2);
        const std::int64_t D = 40 * P2;
        ok &= report("tw P=" + format_rational(P) + " D=" + std::to_string(D), verify_tw(build_triangular_wave(P, D), P, D));
      }
    }
    if (g == "indicator" || g == "all")
      for (std::int64_t i : {0, 3, -7, 1000}) ok &= report("indicator i=" + std::to_string(i), verify_indicator(i, -1000, 1000));
    if (g == "threshold" || g == "all") ok &= report("threshold a=(1)", verify_threshold(-1000, 1000));
    if (g == "bit" || g == "all") {
      const std::int64_t F = a.F > 0 ? a.F : 31;
      ok &= report("bit-extract F=" + std::to_string(F), verify_bits(F, a.n > 0 ? a.n : 4));
    }
  }
  if (!ok) throw VerificationFailure("gadget verification found mismatches");
  return kExitOk;
}

// ---- lowerbound -------------------------------------------------------

struct LbArgs {
  std::string x = "2,1";
  std::string y = "1,2";
  std::int64_t F = 0;
  std::int64_t samples = 0;
  std::string epsilon = "1/4";
  int n0 = 8;
  int H = 3;
  int trials = 1000;
  int t = 2;
  int m = 8;
  std::int64_t n = 2;
  std::uint64_t seed = 0;
  std::string out;
};

int run_lowerbound(const std::string& kind, const LbArgs& a) {
  std::ostringstream csv;
  bool ok = true;
  if (kind == "hash") {
    const std::int64_t F = a.F > 0 ? a.F : 5;
    const auto x = parse_vector(a.x), y = parse_vector(a.y);
    const CollisionReport r = a.samples > 0 ? hash_collision_rate(x, y, F, a.samples, a.seed) : hash_collision_enum(x, y, F);
    std::cout << r.context << "\ncollisions " << r.collisions << '/' << r.trials << " rate " << format_rational(r.rate())
              << " (" << fmt(r.rate().get_d(), 6) << ") reference 1/F = " << format_rational(r.bound) << '\n';
    csv << "trials,collisions,rate,bound\n" << r.trials << ',' << r.collisions << ',' << format_rational(r.rate()) << ','
        << format_rational(r.bound) << '\n';
  } else if (kind == "eps") {
    const auto x = parse_vector(a.x), y = parse_vector(a.y);
    const Rational p = inner_product_collision_enum(static_cast<int>(x.size()), x, y);
    std::cout << "Pr[<a,x> = <a,y>] over a in {0,1}^" << x.size() << " = " << format_rational(p) << " ("
              << fmt(p.get_d(), 6) << "), bound 1/2\n";
    csv << "m,probability\n" << x.size() << ',' << format_rational(p) << '\n';
    ok = p <= make_rational(1, 2);
  } else if (kind == "aghp") {
    const int F = static_cast<int>(a.F > 0 ? a.F : 8);
    const Rational eps = parse_rational(a.epsilon);
    const BiasReport r = aghp_bias_check(F, eps);
    std::cout << "aghp F=" << F << " epsilon=" << format_rational(eps) << " k=" << r.k << " seeds=" << r.seeds
              << "\nmax bias " << format_rational(r.max_bias) << ", singleton " << format_rational(r.max_singleton_bias)
              << ", (F-1)/2^k = " << format_rational(r.analytic_bound) << '\n';
    csv << "F,epsilon,k,seeds,max_bias,max_singleton_bias,analytic_bound\n"
        << F << ',' << format_rational(eps) << ',' << r.k << ',' << r.seeds << ',' << format_rational(r.max_bias) << ','
        << format_rational(r.max_singleton_bias) << ',' << format_rational(r.analytic_bound) << '\n';
    ok = r.max_bias <= eps;
  } else if (kind == "paths") {
    const std::int64_t F = a.F > 0 ? a.F : 257;
    const PathPairReport r = path_pair_collision_experiment(a.n0, F, a.H, a.trials, a.seed, a.t);
    std::cout << r.report.context << "\ntrials with a collision " << r.report.collisions << '/' << r.report.trials
              << " (" << fmt(r.report.rate().get_d()) << ")\npairs colliding " << r.pair_collisions << '/' << r.pairs
              << ", per-pair floor 1 - 12*2^H/F = " << fmt(r.report.bound.get_d())
              << "\nmax breakpoints along segments " << r.max_breakpoints << ", regions <= 2^H: "
              << (r.regions_within_bound ? "yes" : "NO") << '\n';
    csv << "n0,F,H,t,trials,trials_with_collision,pairs,pair_collisions,max_breakpoints\n"
        << a.n0 << ',' << F << ',' << a.H << ',' << a.t << ',' << r.report.trials << ',' << r.report.collisions << ','
        << r.pairs << ',' << r.pair_collisions << ',' << r.max_breakpoints << '\n';
    ok = r.regions_within_bound;
  } else if (kind == "stars") {
    const int c = star_forest_distinct_count(a.m);
    std::cout << "star forest m=" << a.m << ": " << c << " distinct top labels, labels need >= " << ceil_log2(c)
              << " bits\n";
    csv << "m,distinct,bits\n" << a.m << ',' << c << ',' << ceil_log2(c) << '\n';
    ok = c == a.m;
  } else {
    const std::int64_t F = a.F > 0 ? a.F : 2;
    const DescriptionBound d = description_lower_bound(a.n, F);
    std::cout << "multisets of size <= " << a.n << " over [" << F << "]: N = " << d.multisets.get_str()
              << "\nlog N / log F = " << fmt(d.value, 6) << " (floor " << d.floor_value << ")\n";
    csv << "n,F,N,floor,value\n" << a.n << ',' << F << ',' << d.multisets.get_str() << ',' << d.floor_value << ','
        << fmt(d.value, 6) << '\n';
  }
  if (!a.out.empty()) write_output(a.out, csv.str());
  if (!ok) throw VerificationFailure("lower-bound check failed");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weisfeiler-Lehman simulation with small ReLU message-passing networks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  WlArgs wl;
  auto* wl_cmd = app.add_subcommand("wl", "Reference color refinement trace: one 'k num_classes' line per round");
  wl_cmd->add_option("--graph", wl.graph, "Edge-list file or generator spec (er:n=,deg=  sf:n=  path:n=  cycle:n=  complete:n=  stars:m=  cora)")->required();
  wl_cmd->add_option("--max-iters", wl.max_iters, "Round cap (0 = n + 1)")->capture_default_str();
  wl_cmd->add_flag("--dump", wl.dump, "Print the full partition for every round");
  wl_cmd->add_option("--seed", wl.seed, "Seed for generated graphs")->capture_default_str();

  SimArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run one construction against the reference and compare partitions");
  sim_cmd->add_option("--graph", sim.graph, "Edge-list file or generator spec")->required();
  sim_cmd->add_option("--variant", sim.variant, "c1 (one-hot labels) or c2 (t-bit labels)")->check(CLI::IsMember({"c1", "c2"}))->capture_default_str();
  sim_cmd->add_option("--t", sim.t, "C2 label width (0 = 3 * ceil(log2 n))")->capture_default_str();
  sim_cmd->add_option("--prime-exponent", sim.prime_exponent, "F = smallest prime >= max(2n + 1, n^e)")->check(CLI::Range(1, 6))->capture_default_str();
  sim_cmd->add_option("--F", sim.F, "Explicit field size (prime > 2n); overrides --prime-exponent");
  sim_cmd->add_option("--bias", sim.bias, "Bit source: uniform (random table) or aghp (powering generator)")->check(CLI::IsMember({"uniform", "aghp"}))->capture_default_str();
  sim_cmd->add_option("--epsilon", sim.epsilon, "Bias target for aghp")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Master seed (also seeds generated graphs)")->capture_default_str();
  sim_cmd->add_option("--max-iters", sim.max_iters, "Reference round cap (0 = n + 1)")->capture_default_str();

  ExpArgs ex;
  auto* ex_cmd = app.add_subcommand("experiment", "Minimal message size on random families, or success rates on Cora");
  std::string family;
  ex_cmd->add_option("family", family, "er, sf or cora")->check(CLI::IsMember({"er", "sf", "cora"}))->required();
  ex_cmd->add_option("--n-list", ex.n_list, "Graph sizes (er/sf)")->capture_default_str();
  ex_cmd->add_option("--t-list", ex.t_list, "Message sizes (cora)")->capture_default_str();
  ex_cmd->add_option("--graphs", ex.graphs, "Graphs per size (er/sf)")->check(CLI::PositiveNumber)->capture_default_str();
  ex_cmd->add_option("--trials", ex.trials, "Trials per t (0 = 10 for er/sf, 30 for cora)")->capture_default_str();
  ex_cmd->add_option("--threshold", ex.threshold, "Success fraction a t must reach")->capture_default_str();
  ex_cmd->add_option("--t-max", ex.t_max, "Largest t tried (0 = 8 * ceil(log2 n))")->capture_default_str();
  ex_cmd->add_option("--deg", ex.deg, "Erdos-Renyi average degree (p = deg / n)")->capture_default_str();
  ex_cmd->add_option("--prime-exponent", ex.prime_exponent, "F = smallest prime >= max(2n + 1, n^e)")->check(CLI::Range(1, 6))->capture_default_str();
  ex_cmd->add_option("--bias", ex.bias, "Bit source: uniform or aghp")->check(CLI::IsMember({"uniform", "aghp"}))->capture_default_str();
  ex_cmd->add_option("--epsilon", ex.epsilon, "Bias target for aghp")->capture_default_str();
  ex_cmd->add_option("--seed", ex.seed, "Experiment seed")->capture_default_str();
  ex_cmd->add_option("--out", ex.out, "CSV output path (default: CSV to stdout)");
  ex_cmd->add_option("--summary", ex.summary, "Per-graph k0 / minimal t CSV (er/sf)");
  ex_cmd->add_option("--data", ex.data, "Cora citation file (default: $WLGNN_DATA_DIR/cora.cites)");
  ex_cmd->add_option("--threads", ex.threads, "Worker threads (0 = all cores)")->capture_default_str();

  CompileArgs cp;
  auto* cp_cmd = app.add_subcommand("compile-net", "Build a network and print it as JSON with its size statistics");
  std::string net_kind;
  cp_cmd->add_option("kind", net_kind, "mod, indicator, tw, phi-c1 or phi-c2")->check(CLI::IsMember({"mod", "indicator", "tw", "phi-c1", "phi-c2"}))->required();
  cp_cmd->add_option("--F", cp.F, "Modulus / field size (mod: 31; phi: prime rule)");
  cp_cmd->add_option("--n", cp.n, "Node count bound (mod: 20, phi: 10); mod domain is [0, nF]");
  cp_cmd->add_option("--i", cp.i, "Indicator target")->capture_default_str();
  cp_cmd->add_option("--half-period", cp.half_period, "Triangular wave half-period (rational)")->capture_default_str();
  cp_cmd->add_option("--domain", cp.domain, "Triangular wave domain [0, D] (0 = 4 * half-period)")->capture_default_str();
  cp_cmd->add_option("--t", cp.t, "phi-c2 label width (0 = 3 * ceil(log2 n))")->capture_default_str();
  cp_cmd->add_option("--iteration", cp.iteration, "Which round's weights to compile")->capture_default_str();
  cp_cmd->add_option("--prime-exponent", cp.prime_exponent, "F rule when --F is not given")->capture_default_str();
  cp_cmd->add_option("--bias", cp.bias, "phi-c2 bit source")->check(CLI::IsMember({"uniform", "aghp"}))->capture_default_str();
  cp_cmd->add_option("--epsilon", cp.epsilon, "Bias target for aghp")->capture_default_str();
  cp_cmd->add_option("--max-field", cp.max_field, "Refuse to compile phi for larger F")->capture_default_str();
  cp_cmd->add_option("--seed", cp.seed, "Master seed for phi weights")->capture_default_str();
  cp_cmd->add_option("--out", cp.out, "JSON output path (default: stdout, stats to stderr)");

  VerifyArgs vf;
  auto* vf_cmd = app.add_subcommand("verify", "Exhaustive exactness checks of the gadget networks");
  vf_cmd->add_option("--gadget", vf.gadget, "mod, tw, indicator, threshold, bit or all")->check(CLI::IsMember({"mod", "tw", "indicator", "threshold", "bit", "all"}))->capture_default_str();
  vf_cmd->add_option("--F", vf.F, "Modulus (default: 3, 5, 31, 101, 10007 with nF <= 10^5)");
  vf_cmd->add_option("--n", vf.n, "Domain multiplier: inputs 0..nF");
  vf_cmd->add_option("--net", vf.net_path, "Verify a serialized mod net instead of building one");

  LbArgs lb;
  auto* lb_cmd = app.add_subcommand("lowerbound", "Collision, bias and counting demonstrations");
  std::string lb_kind;
  lb_cmd->add_option("kind", lb_kind, "hash, eps, aghp, paths, stars or desc")->check(CLI::IsMember({"hash", "eps", "aghp", "paths", "stars", "desc"}))->required();
  lb_cmd->add_option("--x", lb.x, "First vector (hash, eps)")->capture_default_str();
  lb_cmd->add_option("--y", lb.y, "Second vector (hash, eps)")->capture_default_str();
  lb_cmd->add_option("--F", lb.F, "Field size (hash: 5, aghp: 8, paths: 257, desc: 2)");
  lb_cmd->add_option("--samples", lb.samples, "hash: Monte-Carlo samples (0 = full enumeration)")->capture_default_str();
  lb_cmd->add_option("--epsilon", lb.epsilon, "aghp bias target")->capture_default_str();
  lb_cmd->add_option("--n0", lb.n0, "paths: number of path pairs")->capture_default_str();
  lb_cmd->add_option("--H", lb.H, "paths: hidden ReLU units")->capture_default_str();
  lb_cmd->add_option("--trials", lb.trials, "paths: trials")->capture_default_str();
  lb_cmd->add_option("--t", lb.t, "paths: input dimension")->capture_default_str();
  lb_cmd->add_option("--m", lb.m, "stars: number of piece pairs")->capture_default_str();
  lb_cmd->add_option("--n", lb.n, "desc: multiset size bound")->capture_default_str();
  lb_cmd->add_option("--seed", lb.seed, "Seed")->capture_default_str();
  lb_cmd->add_option("--out", lb.out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (wl_cmd->parsed()) return run_wl(wl);
    if (sim_cmd->parsed()) return run_simulate(sim);
    if (ex_cmd->parsed()) {
      if (family == "cora") return run_cora(ex);
      return run_family(family == "er" ? Family::ErdosRenyi : Family::ScaleFree, ex);
    }
    if (cp_cmd->parsed()) return run_compile(net_kind, cp);
    if (vf_cmd->parsed()) return run_verify(vf);
    if (lb_cmd->parsed()) return run_lowerbound(lb_kind, lb);
  } catch (const VerificationFailure& e) {
    std::cerr << "error E_VERIFY: " << e.what() << '\n';
    return kExitFailed;
  } catch (const ParseError& e) {
    std::cerr << "error E_PARSE: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "error E_PARAM: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error E_INTERNAL: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
