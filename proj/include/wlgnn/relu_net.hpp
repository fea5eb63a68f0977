#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wlgnn/rational.hpp"

namespace wlgnn {

// Sparse affine map x -> W x + b, optionally followed by an elementwise ReLU.
// Zero weights are never stored.
struct AffineLayer {
  struct Entry {
    std::uint32_t col;
    Rational value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  std::size_t in_dim = 0;
  std::vector<std::vector<Entry>> rows;  // one per output unit, sorted by col
  std::vector<Rational> bias;
  bool apply_relu = false;

  std::size_t out_dim() const noexcept { return rows.size(); }

  static AffineLayer dense(const std::vector<std::vector<Rational>>& weights, std::vector<Rational> bias,
                           bool apply_relu);

  // Applies the layer; `out` is resized to out_dim().
  void apply(std::span<const Rational> x, std::vector<Rational>& out) const;

  friend bool operator==(const AffineLayer&, const AffineLayer&) = default;
};

// Closed integer interval attached to one input coordinate.
struct IntInterval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  friend bool operator==(const IntInterval&, const IntInterval&) = default;
};

struct NetStats {
  std::size_t units = 0;  // ReLU units
  std::size_t depth = 0;  // number of layers
  std::size_t width = 0;  // widest layer
  std::size_t max_weight_bits = 0;  // over numerators and denominators of all weights and biases
  friend bool operator==(const NetStats&, const NetStats&) = default;
};

// Exact piecewise-linear network: a chain of affine layers with per-layer
// activation flags.
class ReluNet {
 public:
  ReluNet() = default;
  explicit ReluNet(std::vector<AffineLayer> layers, std::optional<std::vector<IntInterval>> domain = std::nullopt);

  std::size_t input_dim() const noexcept { return layers_.front().in_dim; }
  std::size_t output_dim() const noexcept { return layers_.back().out_dim(); }
  const std::vector<AffineLayer>& layers() const noexcept { return layers_; }
  const std::optional<std::vector<IntInterval>>& declared_domain() const noexcept { return domain_; }
  void set_declared_domain(std::optional<std::vector<IntInterval>> domain);

  std::vector<Rational> evaluate(std::span<const Rational> x) const;
  Rational evaluate_scalar(const Rational& x) const;

  // Post-activation values of every layer; element 0 is the input itself.
  std::vector<std::vector<Rational>> activations(std::span<const Rational> x) const;

  NetStats stats() const;

  friend bool operator==(const ReluNet&, const ReluNet&) = default;

 private:
  std::vector<AffineLayer> layers_;
  std::optional<std::vector<IntInterval>> domain_;
};

// x -> W x + b with no activation.
ReluNet affine(const std::vector<std::vector<Rational>>& weights, std::vector<Rational> bias);
ReluNet identity(std::size_t dim);

// b after a. Layers are concatenated, so units and depth add.
ReluNet compose(const ReluNet& a, const ReluNet& b);

// All nets read the same input; outputs are stacked in order. Shorter
// branches are padded in front with identity ReLU pairs (ReLU(x) - ReLU(-x)),
// which cost 2 * input_dim units per padded layer.
ReluNet parallel(const std::vector<ReluNet>& nets);

// Folds every activation-free layer into its successor. Same function, same
// units, fewer layers.
ReluNet fuse_linear(const ReluNet& net);

}  // namespace wlgnn
