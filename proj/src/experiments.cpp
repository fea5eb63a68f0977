#include "wlgnn/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "wlgnn/errors.hpp"
#include "wlgnn/generators.hpp"
#include "wlgnn/primes.hpp"
#include "wlgnn/random.hpp"
#include "wlgnn/simulation.hpp"

namespace wlgnn {
namespace {

enum Role : std::uint64_t { kRoleGraph = 11, kRoleTrials = 12 };

int ceil_log2(std::int64_t n) {
  int k = 0;
  while ((std::int64_t{1} << k) < n) ++k;
  return k;
}

void check_search(const SearchOptions& opts) {
  if (opts.trials < 1) throw ParameterError("trials must be at least 1");
  if (!(opts.threshold > 0 && opts.threshold <= 1)) throw ParameterError("threshold must lie in (0, 1]");
  if (opts.t_max < 0) throw ParameterError("t_max must be nonnegative");
  if (opts.prime_exponent < 1) throw ParameterError("prime exponent must be at least 1");
}

ConstructionConfig c2_config(const Graph& g, const SearchOptions& opts, int t) {
  ConstructionConfig cfg;
  cfg.variant = Variant::C2;
  cfg.n = g.num_nodes();
  cfg.F = choose_prime(g.num_nodes(), opts.prime_exponent);
  cfg.t = t;
  cfg.bias_mode = opts.bias_mode;
  cfg.epsilon = opts.epsilon;
  return cfg;
}

int count_successes(const Graph& g, const WlTrace& trace, const SearchOptions& opts, int t, int trials,
                    std::uint64_t seed) {
  ConstructionConfig cfg = c2_config(g, opts, t);
  int successes = 0;
  for (int trial = 0; trial < trials; ++trial) {
    cfg.master_seed = derive_key(seed, {static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(trial)});
    if (run_simulation(g, cfg, trace, true).success) ++successes;
  }
  return successes;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

int default_t_max(NodeId n) { return 8 * std::max(1, ceil_log2(n)); }

MinimalTResult minimal_t_search(const Graph& g, const SearchOptions& opts, std::uint64_t seed) {
  return minimal_t_search(g, wl_run(g, g.num_nodes() + 1), opts, seed);
}

MinimalTResult minimal_t_search(const Graph& g, const WlTrace& trace, const SearchOptions& opts, std::uint64_t seed) {
  check_search(opts);
  const int t_max = opts.t_max > 0 ? opts.t_max : default_t_max(g.num_nodes());
  MinimalTResult r;
  r.k0 = trace.k0;
  r.num_classes = trace.partitions.back().num_classes;
  for (int t = 1; t <= t_max; ++t) {
    const int s = count_successes(g, trace, opts, t, opts.trials, seed);
    r.rows.push_back({t, opts.trials, s});
    if (static_cast<double>(s) >= opts.threshold * opts.trials - 1e-9) {
      r.minimal_t = t;
      break;
    }
  }
  return r;
}

std::string family_name(Family f) { return f == Family::ErdosRenyi ? "er" : "sf"; }

Graph family_graph(Family family, NodeId n, int graph_index, const FamilyOptions& opts, std::uint64_t seed) {
  const std::uint64_t gseed =
      derive_key(seed, {kRoleGraph, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(graph_index)});
  if (family == Family::ErdosRenyi) return gen_erdos_renyi(n, std::min<double>(opts.avg_degree, n), gseed);
  return gen_scale_free(n, gseed);
}

ExperimentResult run_family_experiment(Family family, const std::vector<NodeId>& n_list, const FamilyOptions& opts,
                                       std::uint64_t seed) {
  check_search(opts.search);
  if (opts.graphs_per_n < 1) throw ParameterError("graphs_per_n must be at least 1");
  ExperimentResult r;
  r.family = family;
  for (NodeId n : n_list) {
    if (n < 1) throw ParameterError("graph sizes must be positive");
    for (int gi = 0; gi < opts.graphs_per_n; ++gi) r.graphs.push_back({n, gi, {}});
  }
  parallel_for(r.graphs.size(), opts.threads, [&](std::size_t i) {
    GraphOutcome& out = r.graphs[i];
    Graph g = family_graph(family, out.n, out.graph_index, opts, seed);
    const std::uint64_t tseed =
        derive_key(seed, {kRoleTrials, static_cast<std::uint64_t>(out.n), static_cast<std::uint64_t>(out.graph_index)});
    out.search = minimal_t_search(g, opts.search, tseed);
  });
  for (std::size_t i = 0; i < r.graphs.size();) {
    FamilyAggregate agg;
    agg.n = r.graphs[i].n;
    std::vector<double> values;
    for (; i < r.graphs.size() && r.graphs[i].n == agg.n; ++i)
      if (r.graphs[i].search.minimal_t) values.push_back(*r.graphs[i].search.minimal_t);
    agg.found = static_cast<int>(values.size());
    if (!values.empty()) {
      double sum = 0;
      for (double v : values) sum += v;
      agg.mean_minimal_t = sum / static_cast<double>(values.size());
      if (values.size() > 1) {
        double ss = 0;
        for (double v : values) ss += (v - agg.mean_minimal_t) * (v - agg.mean_minimal_t);
        agg.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
      }
    }
    r.aggregates.push_back(agg);
  }
  return r;
}

CoraResult run_cora_experiment(const Graph& g, const std::vector<int>& t_list, int trials, std::uint64_t seed,
                               const SearchOptions& opts, unsigned threads) {
  check_search(opts);
  if (trials < 1) throw ParameterError("trials must be at least 1");
  for (int t : t_list)
    if (t < 1) throw ParameterError("message sizes must be positive");
  const WlTrace trace = wl_run(g, g.num_nodes() + 1);
  CoraResult r;
  r.k0 = trace.k0;
  r.num_classes = trace.partitions.back().num_classes;
  r.rows.resize(t_list.size());
  parallel_for(t_list.size(), threads, [&](std::size_t i) {
    r.rows[i] = {t_list[i], count_successes(g, trace, opts, t_list[i], trials, seed), trials};
  });
  return r;
}

std::string family_csv(const ExperimentResult& r) {
  std::ostringstream os;
  os << "family,n,graph_index,t,trials,successes,is_minimal\n";
  for (const auto& g : r.graphs)
    for (const auto& row : g.search.rows)
      os << family_name(r.family) << ',' << g.n << ',' << g.graph_index << ',' << row.t << ',' << row.trials << ','
         << row.successes << ',' << (g.search.minimal_t && *g.search.minimal_t == row.t ? 1 : 0) << '\n';
  return os.str();
}

std::string family_summary_csv(const ExperimentResult& r) {
  std::ostringstream os;
  os << "n,graph_index,k0,wl_classes,minimal_t\n";
  for (const auto& g : r.graphs) {
    os << g.n << ',' << g.graph_index << ',' << g.search.k0 << ',' << g.search.num_classes << ',';
    if (g.search.minimal_t) os << *g.search.minimal_t;
    os << '\n';
  }
  return os.str();
}

std::string family_aggregate_csv(const ExperimentResult& r) {
  std::ostringstream os;
  os << "n,graphs,found,mean_minimal_t,stddev\n";
  for (const auto& a : r.aggregates) {
    int graphs = 0;
    for (const auto& g : r.graphs) graphs += g.n == a.n;
    os << a.n << ',' << graphs << ',' << a.found << ',' << format_double(a.mean_minimal_t) << ','
       << format_double(a.stddev) << '\n';
  }
  return os.str();
}

std::string cora_csv(const CoraResult& r) {
  std::ostringstream os;
  os << "t,successes,trials,fraction\n";
  for (const auto& row : r.rows)
    os << row.t << ',' << row.successes << ',' << row.trials << ',' << format_double(row.fraction()) << '\n';
  return os.str();
}

}  // namespace wlgnn
