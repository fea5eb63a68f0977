#include "wlgnn/construction.hpp"

#include "wlgnn/errors.hpp"
#include "wlgnn/primes.hpp"
#include "wlgnn/random.hpp"

namespace wlgnn {
namespace {

enum Role : std::uint64_t { kRoleA = 1, kRoleB = 2, kRoleBits = 3 };

}  // namespace

void ConstructionConfig::validate() const {
  if (n < 1) throw ParameterError("n must be positive");
  if (F <= 2 * static_cast<std::int64_t>(n)) throw ParameterError("F must exceed 2n");
  if (!is_prime(static_cast<std::uint64_t>(F))) throw ParameterError("F must be prime");
  if (variant == Variant::C2 && t < 1) throw ParameterError("t must be at least 1");
  if (max_iters < 0) throw ParameterError("max_iters must be nonnegative");
  if (variant == Variant::C2 && bias_mode == BiasMode::Aghp) aghp_degree(F, epsilon);
}

std::int64_t IterationWeights::a(std::int64_t i) const {
  if (!a_table.empty()) return a_table.at(static_cast<std::size_t>(i));
  return static_cast<std::int64_t>(
      uniform_at(derive_key(a_key, {static_cast<std::uint64_t>(i)}), static_cast<std::uint64_t>(F)));
}

IterationWeights IterationWeights::derive(const ConstructionConfig& cfg, int iteration) {
  IterationWeights w;
  w.variant = cfg.variant;
  w.F = cfg.F;
  const auto it = static_cast<std::uint64_t>(iteration);
  const auto uF = static_cast<std::uint64_t>(cfg.F);
  if (cfg.variant == Variant::C1) {
    w.a_key = derive_key(cfg.master_seed, {it, kRoleA});
    return w;
  }
  w.b.resize(static_cast<std::size_t>(cfg.t));
  for (int j = 0; j < cfg.t; ++j)
    w.b[static_cast<std::size_t>(j)] =
        static_cast<std::int64_t>(uniform_at(derive_key(cfg.master_seed, {it, kRoleB, static_cast<std::uint64_t>(j)}), uF));
  std::optional<Gf2k> field;
  if (cfg.bias_mode == BiasMode::Aghp) field.emplace(aghp_degree(cfg.F, cfg.epsilon));
  for (int j = 0; j < cfg.t; ++j) {
    const std::uint64_t key = derive_key(cfg.master_seed, {it, kRoleBits, static_cast<std::uint64_t>(j)});
    if (field) {
      SplitMix rng(key);
      const std::uint64_t size = std::uint64_t{1} << field->degree();
      const std::uint64_t x = rng.below(size);
      const std::uint64_t y = rng.below(size);
      w.bits.push_back(BitSource::aghp(*field, x, y, cfg.F));
    } else {
      w.bits.push_back(BitSource::hashed(key, cfg.F));
    }
  }
  return w;
}

LabelState LabelState::initial(const ConstructionConfig& cfg) {
  LabelState s;
  s.variant = cfg.variant;
  const auto n = static_cast<std::size_t>(cfg.n);
  if (cfg.variant == Variant::C1) {
    s.t = 1;
    s.index.assign(n, 0);
  } else {
    s.t = cfg.t;
    s.bits.assign(n * static_cast<std::size_t>(cfg.t), 0);
    for (std::size_t v = 0; v < n; ++v) s.bits[v * static_cast<std::size_t>(cfg.t)] = 1;
  }
  return s;
}

NodeId LabelState::num_nodes() const {
  if (variant == Variant::C1) return static_cast<NodeId>(index.size());
  return static_cast<NodeId>(bits.size() / static_cast<std::size_t>(t));
}

Partition LabelState::partition() const {
  if (variant == Variant::C1) return partition_from_labels<std::int64_t>(index);
  return partition_from_rows(bits, static_cast<std::size_t>(t));
}

LabelState semantic_step_c1(const Graph& g, const LabelState& state, const IterationWeights& w) {
  if (state.variant != Variant::C1 || w.variant != Variant::C1) throw ParameterError("C1 step needs C1 state and weights");
  if (state.num_nodes() != g.num_nodes()) throw ParameterError("label count does not match graph");
  // <x, a> with x the multiset of neighbor indices reduces to summing a over
  // the neighbor indices.
  const NodeId n = g.num_nodes();
  std::vector<std::int64_t> coeff(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    const std::int64_t idx = state.index[static_cast<std::size_t>(v)];
    if (idx < 0 || idx >= w.F) throw ParameterError("C1 label index outside [F]");
    coeff[static_cast<std::size_t>(v)] = w.a(idx);
  }
  LabelState out;
  out.variant = Variant::C1;
  out.t = 1;
  out.iteration = state.iteration + 1;
  out.index.resize(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    std::int64_t s = coeff[static_cast<std::size_t>(v)];
    for (NodeId u : g.neighbors(v)) s = (s + coeff[static_cast<std::size_t>(u)]) % w.F;
    out.index[static_cast<std::size_t>(v)] = s % w.F;
  }
  return out;
}

std::vector<std::int64_t> c2_hash_values(const Graph& g, const LabelState& state, const IterationWeights& w) {
  if (state.variant != Variant::C2 || w.variant != Variant::C2) throw ParameterError("C2 step needs C2 state and weights");
  if (state.num_nodes() != g.num_nodes() || state.bits.size() % static_cast<std::size_t>(state.t) != 0)
    throw ParameterError("label count does not match graph");
  if (w.b.size() != static_cast<std::size_t>(state.t)) throw ParameterError("weight width does not match labels");
  const NodeId n = g.num_nodes();
  // <b, sum_u h_u> = sum_u <b, h_u>
  std::vector<std::int64_t> own(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    std::int64_t s = 0;
    auto row = state.row(v);
    for (int j = 0; j < state.t; ++j)
      if (row[static_cast<std::size_t>(j)]) s = (s + w.b[static_cast<std::size_t>(j)]) % w.F;
    own[static_cast<std::size_t>(v)] = s;
  }
  std::vector<std::int64_t> z(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    std::int64_t s = own[static_cast<std::size_t>(v)];
    for (NodeId u : g.neighbors(v)) s = (s + own[static_cast<std::size_t>(u)]) % w.F;
    z[static_cast<std::size_t>(v)] = s;
  }
  return z;
}

LabelState semantic_step_c2(const Graph& g, const LabelState& state, const IterationWeights& w) {
  const auto z = c2_hash_values(g, state, w);
  const auto t = static_cast<std::size_t>(state.t);
  LabelState out;
  out.variant = Variant::C2;
  out.t = state.t;
  out.iteration = state.iteration + 1;
  out.bits.resize(z.size() * t);
  for (std::size_t v = 0; v < z.size(); ++v)
    for (std::size_t j = 0; j < t; ++j) out.bits[v * t + j] = w.bits[j].bit(z[v]);
  return out;
}

LabelState semantic_step(const Graph& g, const LabelState& state, const IterationWeights& w) {
  return state.variant == Variant::C1 ? semantic_step_c1(g, state, w) : semantic_step_c2(g, state, w);
}

}  // namespace wlgnn
