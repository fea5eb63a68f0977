#pragma once

#include <vector>

#include "wlgnn/construction.hpp"
#include "wlgnn/wl.hpp"

namespace wlgnn {

struct SimulationResult {
  std::vector<Partition> reference;     // WL partitions P_0..P_k0
  std::vector<Partition> construction;  // construction partitions, same length unless stopped early
  int k0 = 0;
  bool converged = false;  // reference reached a fixed point within max_iters
  bool success = false;    // partitions agree for every k <= k0
};

// Runs WL and the configured construction from the uniform initial labels and
// compares their partitions round by round. With stop_early the run ends at
// the first disagreement.
SimulationResult run_simulation(const Graph& g, const ConstructionConfig& cfg, bool stop_early = false);
SimulationResult run_simulation(const Graph& g, const ConstructionConfig& cfg, const WlTrace& trace,
                                bool stop_early = false);

}  // namespace wlgnn
