#include "wlgnn/generators.hpp"

#include <cmath>

#include "wlgnn/errors.hpp"
#include "wlgnn/random.hpp"

namespace wlgnn {

Graph gen_erdos_renyi(NodeId n, double avg_degree, std::uint64_t seed) {
  if (n < 1) throw ParameterError("erdos-renyi: n must be >= 1");
  if (!(avg_degree >= 0.0) || avg_degree > static_cast<double>(n))
    throw ParameterError("erdos-renyi: average degree must lie in [0, n]");
  const double p = avg_degree / static_cast<double>(n);
  SplitMix rng(derive_key(seed, {0x45525ULL, static_cast<std::uint64_t>(n)}));
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.unit() < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

namespace {

// Picks a node with probability proportional to (degree + delta).
NodeId choose_node(const std::vector<NodeId>& candidates, NodeId node_count, double delta, SplitMix& rng) {
  if (delta > 0.0) {
    const double bias_sum = static_cast<double>(node_count) * delta;
    const double p_delta = bias_sum / (bias_sum + static_cast<double>(candidates.size()));
    if (rng.unit() < p_delta) return static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(node_count)));
  }
  return candidates[rng.below(candidates.size())];
}

}  // namespace

Graph gen_scale_free(NodeId n, std::uint64_t seed, const ScaleFreeParams& params) {
  if (n < 3) throw ParameterError("scale-free: n must be >= 3");
  if (params.alpha <= 0.0 || params.beta < 0.0 || params.gamma <= 0.0)
    throw ParameterError("scale-free: alpha and gamma must be positive, beta nonnegative");
  if (std::abs(params.alpha + params.beta + params.gamma - 1.0) > 1e-12)
    throw ParameterError("scale-free: alpha + beta + gamma must equal 1");
  if (params.delta_in < 0.0 || params.delta_out < 0.0)
    throw ParameterError("scale-free: deltas must be nonnegative");

  SplitMix rng(derive_key(seed, {0x5346ULL, static_cast<std::uint64_t>(n)}));
  // Seed graph: directed 3-cycle.
  std::vector<std::pair<NodeId, NodeId>> edges = {{0, 1}, {1, 2}, {2, 0}};
  std::vector<NodeId> sources = {0, 1, 2};  // one entry per out-edge
  std::vector<NodeId> targets = {1, 2, 0};  // one entry per in-edge
  NodeId count = 3;
  while (count < n) {
    const double r = rng.unit();
    NodeId v, w;
    if (r < params.alpha) {
      v = count++;
      w = choose_node(targets, count, params.delta_in, rng);
    } else if (r < params.alpha + params.beta) {
      v = choose_node(sources, count, params.delta_out, rng);
      w = choose_node(targets, count, params.delta_in, rng);
    } else {
      v = choose_node(sources, count, params.delta_out, rng);
      w = count++;
    }
    edges.emplace_back(v, w);
    sources.push_back(v);
    targets.push_back(w);
  }
  return Graph::from_edges(n, edges);
}

StarForest gen_star_forest(int m) {
  if (m < 1) throw ParameterError("star forest: m must be >= 1");
  StarForest sf;
  std::vector<std::pair<NodeId, NodeId>> edges;
  NodeId next = 0;
  auto piece = [&](int k, std::vector<NodeId>& top, std::vector<NodeId>& mid,
                   std::vector<std::vector<NodeId>>& bottom) {
    const NodeId u = next++;
    const NodeId v = next++;
    edges.emplace_back(u, v);
    std::vector<NodeId> leaves;
    for (int j = 0; j < k; ++j) {
      leaves.push_back(next);
      edges.emplace_back(v, next++);
    }
    top.push_back(u);
    mid.push_back(v);
    bottom.push_back(std::move(leaves));
  };
  for (int k = 1; k <= m; ++k) {
    piece(k, sf.top, sf.middle, sf.bottom);
    piece(k, sf.top_twin, sf.middle_twin, sf.bottom_twin);
  }
  sf.graph = Graph::from_edges(next, edges);
  return sf;
}

std::vector<std::int64_t> path_pair_rows(std::int64_t a, std::span<const std::int64_t> b) {
  const std::size_t width = 1 + b.size();
  std::vector<std::int64_t> rows(6 * width, 0);
  auto put = [&](std::size_t row, std::int64_t first) {
    rows[row * width] = first;
    for (std::size_t c = 0; c < b.size(); ++c) rows[row * width + 1 + c] = b[c];
  };
  put(0, 3 * a);
  put(2, 3 * a + 2);
  put(3, 3 * a + 1);
  put(5, 3 * a + 1);
  return rows;
}

PathPairs gen_path_pairs(int n0, std::int64_t F, int t, std::uint64_t seed) {
  if (n0 < 1) throw ParameterError("path pairs: n0 must be >= 1");
  if (F < 3) throw ParameterError("path pairs: F must be >= 3");
  if (t < 1) throw ParameterError("path pairs: t must be >= 1");
  PathPairs pp;
  pp.t = t;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int j = 0; j < 2 * n0; ++j) {
    const NodeId base = 3 * j;
    edges.emplace_back(base, base + 1);
    edges.emplace_back(base + 1, base + 2);
  }
  pp.graph = Graph::from_edges(6 * n0, edges);

  const auto blocks = static_cast<std::uint64_t>(F / 3);
  SplitMix rng(derive_key(seed, {0x5050ULL, static_cast<std::uint64_t>(F), static_cast<std::uint64_t>(t)}));
  pp.inputs.reserve(static_cast<std::size_t>(6 * n0 * t));
  std::vector<std::int64_t> b(static_cast<std::size_t>(t - 1));
  for (int j = 0; j < n0; ++j) {
    const auto a = static_cast<std::int64_t>(rng.below(blocks));
    for (auto& x : b) x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(F)));
    auto rows = path_pair_rows(a, b);
    pp.inputs.insert(pp.inputs.end(), rows.begin(), rows.end());
    pp.a.push_back(a);
  }
  return pp;
}

Graph make_path(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

Graph make_cycle(NodeId n) {
  if (n < 3) throw ParameterError("cycle needs at least 3 nodes");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, edges);
}

Graph make_complete(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

}  // namespace wlgnn
