#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wlgnn/graph.hpp"
#include "wlgnn/partition.hpp"
#include "wlgnn/relu_net.hpp"
#include "wlgnn/small_bias.hpp"

namespace wlgnn {

// C1: one-hot labels of width F, combined by a random dot product mod F.
// C2: t-bit labels; a random dot product mod F is expanded back into t bits
// through t small-bias bit sources.
enum class Variant { C1, C2 };

struct ConstructionConfig {
  Variant variant = Variant::C2;
  NodeId n = 0;
  std::int64_t F = 0;  // odd prime > 2n
  int t = 1;           // C2 label width; ignored by C1
  BiasMode bias_mode = BiasMode::UniformTable;
  Rational epsilon = make_rational(1, 4);  // aghp only
  std::uint64_t master_seed = 0;
  int max_iters = 0;  // 0 means n + 1

  void validate() const;
};

// Per-iteration randomness, derived from (master_seed, iteration, role,
// index) so any iteration can be regenerated independently.
struct IterationWeights {
  Variant variant = Variant::C2;
  std::int64_t F = 0;
  std::vector<std::int64_t> b;  // C2, length t
  std::vector<BitSource> bits;  // C2, t sources of length F

  // C1 coefficient for label index i. Generated lazily unless a_table is set.
  std::int64_t a(std::int64_t i) const;
  std::uint64_t a_key = 0;
  std::vector<std::int64_t> a_table;

  static IterationWeights derive(const ConstructionConfig& cfg, int iteration);
};

struct LabelState {
  Variant variant = Variant::C2;
  int t = 0;
  int iteration = 0;
  std::vector<std::int64_t> index;  // C1: one-hot position per node
  std::vector<std::uint8_t> bits;   // C2: row-major n x t

  static LabelState initial(const ConstructionConfig& cfg);
  NodeId num_nodes() const;
  std::span<const std::uint8_t> row(NodeId v) const {
    return {bits.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(t), static_cast<std::size_t>(t)};
  }
  Partition partition() const;
};

LabelState semantic_step_c1(const Graph& g, const LabelState& state, const IterationWeights& w);
LabelState semantic_step_c2(const Graph& g, const LabelState& state, const IterationWeights& w);
LabelState semantic_step(const Graph& g, const LabelState& state, const IterationWeights& w);

// z_v = <b, sum of labels over N[v]> mod F for every node (C2).
std::vector<std::int64_t> c2_hash_values(const Graph& g, const LabelState& state, const IterationWeights& w);

struct CompileOptions {
  std::int64_t max_field = 20000;
};

// Input: dense closed-neighborhood sum vector of length F. Output: one-hot
// vector of length F.
ReluNet compile_phi_c1(const IterationWeights& w, std::int64_t F, std::int64_t n, const CompileOptions& opts = {});

// Input: sum vector of length t. Output: the t new label bits.
ReluNet compile_phi_c2(const IterationWeights& w, std::int64_t F, std::int64_t n, int t,
                       const CompileOptions& opts = {});

}  // namespace wlgnn
