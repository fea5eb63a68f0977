#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wlgnn/graph.hpp"
#include "wlgnn/primes.hpp"
#include "wlgnn/small_bias.hpp"
#include "wlgnn/wl.hpp"

namespace wlgnn {

struct SearchOptions {
  int trials = 10;
  double threshold = 0.7;
  int t_max = 0;  // 0 means 8 * ceil(log2 n)
  int prime_exponent = kDefaultPrimeExponent;
  BiasMode bias_mode = BiasMode::UniformTable;
  Rational epsilon = make_rational(1, 4);
};

struct TrialRow {
  int t = 0;
  int trials = 0;
  int successes = 0;
};

struct MinimalTResult {
  std::optional<int> minimal_t;  // empty when no t <= t_max qualifies
  std::vector<TrialRow> rows;    // every t tried, ascending
  int k0 = 0;
  int num_classes = 0;  // WL classes at convergence
};

int default_t_max(NodeId n);

// Tries t = 1, 2, ... and returns the first t whose success fraction over
// `trials` C2 runs reaches the threshold. Trial seeds derive from `seed`.
MinimalTResult minimal_t_search(const Graph& g, const SearchOptions& opts, std::uint64_t seed);
MinimalTResult minimal_t_search(const Graph& g, const WlTrace& trace, const SearchOptions& opts, std::uint64_t seed);

enum class Family { ErdosRenyi, ScaleFree };
std::string family_name(Family f);

struct FamilyOptions {
  SearchOptions search;
  int graphs_per_n = 5;
  double avg_degree = 20;  // Erdos-Renyi only
  unsigned threads = 0;    // 0 means hardware concurrency
};

struct GraphOutcome {
  NodeId n = 0;
  int graph_index = 0;
  MinimalTResult search;
};

struct FamilyAggregate {
  NodeId n = 0;
  int found = 0;  // graphs with a minimal t
  double mean_minimal_t = 0;
  double stddev = 0;  // sample standard deviation over graphs with a minimal t
};

struct ExperimentResult {
  Family family = Family::ErdosRenyi;
  std::vector<GraphOutcome> graphs;  // ordered by (n, graph_index)
  std::vector<FamilyAggregate> aggregates;
};

ExperimentResult run_family_experiment(Family family, const std::vector<NodeId>& n_list, const FamilyOptions& opts,
                                       std::uint64_t seed);

// Graph number `graph_index` of size n as generated by run_family_experiment.
Graph family_graph(Family family, NodeId n, int graph_index, const FamilyOptions& opts, std::uint64_t seed);

struct CoraRow {
  int t = 0;
  int successes = 0;
  int trials = 0;
  double fraction() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

struct CoraResult {
  std::vector<CoraRow> rows;
  int k0 = 0;
  int num_classes = 0;
};

CoraResult run_cora_experiment(const Graph& g, const std::vector<int>& t_list, int trials, std::uint64_t seed,
                               const SearchOptions& opts = {}, unsigned threads = 0);

// family,n,graph_index,t,trials,successes,is_minimal
std::string family_csv(const ExperimentResult& r);
// n,graph_index,k0,wl_classes,minimal_t (empty when not found)
std::string family_summary_csv(const ExperimentResult& r);
// n,graphs,found,mean_minimal_t,stddev
std::string family_aggregate_csv(const ExperimentResult& r);
// t,successes,trials,fraction
std::string cora_csv(const CoraResult& r);

// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace wlgnn
