#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "wlgnn/relu_net.hpp"

namespace wlgnn {

// Layout:
//   {"layers": [{"in_dim": d, "weights": [[[col, "num/den"], ...], ...],
//                "bias": ["num/den", ...], "relu": bool}, ...],
//    "declared_domain": [[lo, hi], ...] | null}
// Weights are stored sparsely, one list of (column, value) pairs per output
// unit. Decoding reproduces the net exactly.
nlohmann::json net_to_json(const ReluNet& net);
ReluNet net_from_json(const nlohmann::json& doc);

std::string serialize_net(const ReluNet& net);
ReluNet deserialize_net(const std::string& text);

}  // namespace wlgnn
