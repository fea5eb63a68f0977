#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace wlgnn {

using NodeId = std::int32_t;

// Undirected simple graph. Adjacency lists are sorted, symmetric and free of
// self-loops and duplicates. Closed neighborhoods (v together with its
// neighbors) are produced on demand.
class Graph {
 public:
  Graph() = default;
  explicit Graph(NodeId n) : adj_(static_cast<std::size_t>(n)) {}

  // Builds from an edge list; self-loops and duplicate edges are dropped.
  static Graph from_edges(NodeId n, std::span<const std::pair<NodeId, NodeId>> edges);

  NodeId num_nodes() const noexcept { return static_cast<NodeId>(adj_.size()); }
  std::size_t num_edges() const noexcept;

  std::span<const NodeId> neighbors(NodeId v) const { return adj_[static_cast<std::size_t>(v)]; }
  std::size_t degree(NodeId v) const { return adj_[static_cast<std::size_t>(v)].size(); }
  bool has_edge(NodeId u, NodeId v) const;

  // N(v) including v, sorted ascending.
  std::vector<NodeId> closed_neighborhood(NodeId v) const;

  std::vector<std::pair<NodeId, NodeId>> edges() const;

  // Graph with node v renamed to perm[v].
  Graph permuted(std::span<const NodeId> perm) const;

  // Verifies the simple/symmetric/sorted invariants.
  bool is_valid() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<NodeId>> adj_;
};

}  // namespace wlgnn
