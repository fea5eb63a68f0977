#include "wlgnn/net_json.hpp"

#include "wlgnn/errors.hpp"

namespace wlgnn {

using nlohmann::json;

json net_to_json(const ReluNet& net) {
  json layers = json::array();
  for (const auto& layer : net.layers()) {
    json weights = json::array();
    for (const auto& row : layer.rows) {
      json entries = json::array();
      for (const auto& e : row) entries.push_back(json::array({e.col, format_rational(e.value)}));
      weights.push_back(std::move(entries));
    }
    json bias = json::array();
    for (const auto& b : layer.bias) bias.push_back(format_rational(b));
    layers.push_back({{"in_dim", layer.in_dim}, {"weights", std::move(weights)}, {"bias", std::move(bias)},
                      {"relu", layer.apply_relu}});
  }
  json domain = nullptr;
  if (net.declared_domain()) {
    domain = json::array();
    for (const auto& iv : *net.declared_domain()) domain.push_back(json::array({iv.lo, iv.hi}));
  }
  return {{"layers", std::move(layers)}, {"declared_domain", std::move(domain)}};
}

ReluNet net_from_json(const json& doc) {
  try {
    std::vector<AffineLayer> layers;
    for (const auto& jl : doc.at("layers")) {
      AffineLayer layer;
      layer.in_dim = jl.at("in_dim").get<std::size_t>();
      layer.apply_relu = jl.at("relu").get<bool>();
      for (const auto& jrow : jl.at("weights")) {
        std::vector<AffineLayer::Entry> row;
        for (const auto& je : jrow)
          row.push_back({je.at(0).get<std::uint32_t>(), parse_rational(je.at(1).get<std::string>())});
        layer.rows.push_back(std::move(row));
      }
      for (const auto& jb : jl.at("bias")) layer.bias.push_back(parse_rational(jb.get<std::string>()));
      layers.push_back(std::move(layer));
    }
    std::optional<std::vector<IntInterval>> domain;
    if (doc.contains("declared_domain") && !doc.at("declared_domain").is_null()) {
      domain.emplace();
      for (const auto& iv : doc.at("declared_domain"))
        domain->push_back({iv.at(0).get<std::int64_t>(), iv.at(1).get<std::int64_t>()});
    }
    return ReluNet(std::move(layers), std::move(domain));
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed network document: ") + e.what());
  }
}

std::string serialize_net(const ReluNet& net) { return net_to_json(net).dump(); }

ReluNet deserialize_net(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("network document is not valid JSON: ") + e.what());
  }
  return net_from_json(doc);
}

}  // namespace wlgnn
