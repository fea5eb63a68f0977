#pragma once

#include <cstdint>
#include <vector>

#include "wlgnn/graph.hpp"

namespace wlgnn {

// G(n, p) with p = avg_degree / n. Requires 0 <= avg_degree <= n.
Graph gen_erdos_renyi(NodeId n, double avg_degree, std::uint64_t seed);

// Directed preferential-attachment process of Bollobas, Borgs, Chayes and
// Riordan, collapsed to a simple undirected graph.
struct ScaleFreeParams {
  double alpha = 0.41;
  double beta = 0.54;
  double gamma = 0.05;
  double delta_in = 0.2;
  double delta_out = 0.0;
};
Graph gen_scale_free(NodeId n, std::uint64_t seed, const ScaleFreeParams& params = {});

// Forest of pieces G_1, G_1', ..., G_m, G_m'. Piece G_k is a top node joined
// to a middle node which carries k bottom leaves.
struct StarForest {
  Graph graph;
  std::vector<NodeId> top;          // u_1..u_m
  std::vector<NodeId> top_twin;     // u_1'..u_m'
  std::vector<NodeId> middle;       // v_1..v_m
  std::vector<NodeId> middle_twin;  // v_1'..v_m'
  std::vector<std::vector<NodeId>> bottom;       // bottom[k-1] has k ids
  std::vector<std::vector<NodeId>> bottom_twin;
};
StarForest gen_star_forest(int m);

// 2*n0 disjoint 3-node paths grouped in pairs with per-node integer input
// vectors in [F]^t, stored row-major (inputs[v * t + c]). Pair j occupies
// nodes 6j..6j+5: path (6j, 6j+1, 6j+2) and its partner (6j+3, 6j+4, 6j+5).
struct PathPairs {
  Graph graph;
  int t = 0;
  std::vector<std::int64_t> inputs;
  std::vector<std::int64_t> a;  // per pair, first-coordinate block index

  std::span<const std::int64_t> input(NodeId v) const {
    return {inputs.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(t),
            static_cast<std::size_t>(t)};
  }
};

// Input rows for one pair given the block index a and tail b (size t-1):
// (3a, b), 0, (3a+2, b) on the first path and (3a+1, b), 0, (3a+1, b) on the
// second. Returns 6 rows of width 1 + b.size().
std::vector<std::int64_t> path_pair_rows(std::int64_t a, std::span<const std::int64_t> b);

PathPairs gen_path_pairs(int n0, std::int64_t F, int t, std::uint64_t seed);

// Small deterministic families used by tests and the CLI.
Graph make_path(NodeId n);
Graph make_cycle(NodeId n);
Graph make_complete(NodeId n);

}  // namespace wlgnn
