#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wlgnn/graph.hpp"
#include "wlgnn/partition.hpp"

namespace wlgnn {

// One round of color refinement with a perfect hash: nodes receive equal
// output labels iff the multisets of labels over their closed neighborhoods
// are equal. Output ids are assigned by first occurrence.
std::vector<std::int32_t> wl_step(const Graph& g, std::span<const std::int32_t> labels);

struct WlTrace {
  // partitions[k] is the partition after k refinement rounds; partitions[0]
  // is the single-class partition.
  std::vector<Partition> partitions;
  // First k with partitions[k-1] == partitions[k]; only meaningful when
  // converged is true.
  int k0 = 0;
  bool converged = false;
};

WlTrace wl_run(const Graph& g, int max_iters);

}  // namespace wlgnn
