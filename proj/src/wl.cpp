#include "wlgnn/wl.hpp"

#include <algorithm>
#include <map>

#include "wlgnn/errors.hpp"

namespace wlgnn {

std::vector<std::int32_t> wl_step(const Graph& g, std::span<const std::int32_t> labels) {
  const NodeId n = g.num_nodes();
  if (labels.size() != static_cast<std::size_t>(n)) throw ParameterError("wl_step: one label per node required");
  std::map<std::vector<std::int32_t>, std::int32_t> dictionary;
  std::vector<std::int32_t> out(static_cast<std::size_t>(n));
  std::vector<std::int32_t> multiset;
  for (NodeId v = 0; v < n; ++v) {
    multiset.clear();
    multiset.push_back(labels[static_cast<std::size_t>(v)]);
    for (NodeId u : g.neighbors(v)) multiset.push_back(labels[static_cast<std::size_t>(u)]);
    std::sort(multiset.begin(), multiset.end());
    auto [it, inserted] = dictionary.try_emplace(multiset, static_cast<std::int32_t>(dictionary.size()));
    out[static_cast<std::size_t>(v)] = it->second;
  }
  return out;
}

WlTrace wl_run(const Graph& g, int max_iters) {
  if (max_iters < 1) throw ParameterError("wl_run: max_iters must be >= 1");
  WlTrace trace;
  std::vector<std::int32_t> labels(static_cast<std::size_t>(g.num_nodes()), 0);
  trace.partitions.push_back(Partition::canonical(labels));
  for (int k = 1; k <= max_iters; ++k) {
    labels = wl_step(g, labels);
    trace.partitions.push_back(Partition::canonical(labels));
    if (trace.partitions[static_cast<std::size_t>(k)] == trace.partitions[static_cast<std::size_t>(k - 1)]) {
      trace.k0 = k;
      trace.converged = true;
      break;
    }
  }
  if (!trace.converged) trace.k0 = max_iters;
  return trace;
}

}  // namespace wlgnn
