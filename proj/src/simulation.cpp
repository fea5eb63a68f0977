#include "wlgnn/simulation.hpp"

#include "wlgnn/errors.hpp"

namespace wlgnn {

SimulationResult run_simulation(const Graph& g, const ConstructionConfig& cfg, bool stop_early) {
  const int iters = cfg.max_iters > 0 ? cfg.max_iters : g.num_nodes() + 1;
  return run_simulation(g, cfg, wl_run(g, iters), stop_early);
}

SimulationResult run_simulation(const Graph& g, const ConstructionConfig& cfg, const WlTrace& trace, bool stop_early) {
  cfg.validate();
  if (cfg.n != g.num_nodes()) throw ParameterError("config n does not match the graph");
  SimulationResult r;
  r.reference = trace.partitions;
  r.k0 = trace.k0;
  r.converged = trace.converged;
  r.success = true;

  LabelState state = LabelState::initial(cfg);
  for (std::size_t k = 0; k < trace.partitions.size(); ++k) {
    if (k > 0) state = semantic_step(g, state, IterationWeights::derive(cfg, static_cast<int>(k)));
    r.construction.push_back(state.partition());
    if (!partitions_equal(r.construction.back(), trace.partitions[k])) {
      r.success = false;
      if (stop_early) break;
    }
  }
  return r;
}

}  // namespace wlgnn
