#include "wlgnn/graph.hpp"

#include <algorithm>

#include "wlgnn/errors.hpp"

namespace wlgnn {

Graph Graph::from_edges(NodeId n, std::span<const std::pair<NodeId, NodeId>> edges) {
  if (n < 0) throw ParameterError("node count must be nonnegative");
  Graph g(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParameterError("edge endpoint out of range");
    if (u == v) continue;
    g.adj_[static_cast<std::size_t>(u)].push_back(v);
    g.adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : g.adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return g;
}

std::size_t Graph::num_edges() const noexcept {
  std::size_t total = 0;
  for (const auto& list : adj_) total += list.size();
  return total / 2;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto& list = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<NodeId> Graph::closed_neighborhood(NodeId v) const {
  const auto& list = adj_[static_cast<std::size_t>(v)];
  std::vector<NodeId> out;
  out.reserve(list.size() + 1);
  auto it = std::lower_bound(list.begin(), list.end(), v);
  out.insert(out.end(), list.begin(), it);
  out.push_back(v);
  out.insert(out.end(), it, list.end());
  return out;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u)
    for (NodeId v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph Graph::permuted(std::span<const NodeId> perm) const {
  if (perm.size() != adj_.size()) throw ParameterError("permutation size mismatch");
  auto es = edges();
  for (auto& [u, v] : es) {
    u = perm[static_cast<std::size_t>(u)];
    v = perm[static_cast<std::size_t>(v)];
  }
  return from_edges(num_nodes(), es);
}

bool Graph::is_valid() const {
  const NodeId n = num_nodes();
  for (NodeId v = 0; v < n; ++v) {
    const auto& list = adj_[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < list.size(); ++i) {
      NodeId u = list[i];
      if (u < 0 || u >= n || u == v) return false;
      if (i > 0 && list[i - 1] >= u) return false;
      if (!has_edge(u, v)) return false;
    }
  }
  return true;
}

}  // namespace wlgnn
