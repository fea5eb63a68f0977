#include "graph_spec.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>

#include "wlgnn/errors.hpp"
#include "wlgnn/generators.hpp"
#include "wlgnn/graph_io.hpp"

namespace wlgnn::cli {
namespace {

const std::map<std::string, std::vector<std::string>> kFamilies{
    {"er", {"n", "deg", "seed"}}, {"sf", {"n", "seed"}},   {"path", {"n"}},          {"cycle", {"n"}},
    {"complete", {"n"}},          {"stars", {"m"}},        {"cora", {"path"}},
};

std::int64_t to_int(const std::string& key, const std::string& value) {
  std::int64_t out = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || p != value.data() + value.size())
    throw ParameterError("graph spec: '" + key + "' needs an integer, got '" + value + "'");
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double out = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size())
    throw ParameterError("graph spec: '" + key + "' needs a number, got '" + value + "'");
  return out;
}

std::int64_t require(const GraphSpec& s, const std::string& key) {
  auto it = s.params.find(key);
  if (it == s.params.end()) throw ParameterError("graph spec '" + s.family + "' needs " + key + "=...");
  return to_int(key, it->second);
}

NodeId node_count(const GraphSpec& s, const std::string& key) {
  const std::int64_t n = require(s, key);
  if (n < 1 || n > 100'000'000) throw ParameterError("graph spec: " + key + " out of range");
  return static_cast<NodeId>(n);
}

}  // namespace

GraphSpec parse_graph_spec(const std::string& text) {
  GraphSpec spec;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (!kFamilies.count(head)) {
    spec.path = text;
    return spec;
  }
  spec.family = head;
  if (colon == std::string::npos) return spec;
  const std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto eq = item.find('=');
    if (item.empty() || eq == std::string::npos || eq == 0)
      throw ParameterError("graph spec: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const auto& allowed = kFamilies.at(head);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ParameterError("graph spec: unknown key '" + key + "' for " + head);
    if (!spec.params.emplace(key, item.substr(eq + 1)).second)
      throw ParameterError("graph spec: duplicate key '" + key + "'");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return spec;
}

std::string cora_path(const std::string& explicit_path) {
  std::string p = explicit_path;
  if (p.empty()) {
    const char* dir = std::getenv("WLGNN_DATA_DIR");
    if (!dir || !*dir) throw ParameterError("Cora data not found: set WLGNN_DATA_DIR or pass a path");
    p = (std::filesystem::path(dir) / "cora.cites").string();
  }
  if (!std::filesystem::is_regular_file(p)) throw ParameterError("Cora data not found at " + p);
  return p;
}

Graph load_graph(const GraphSpec& s, std::uint64_t default_seed) {
  if (s.family.empty()) return load_edge_list(read_text_file(s.path));
  auto seed = [&] {
    auto it = s.params.find("seed");
    return it == s.params.end() ? default_seed : static_cast<std::uint64_t>(to_int("seed", it->second));
  };
  if (s.family == "er") {
    const NodeId n = node_count(s, "n");
    auto it = s.params.find("deg");
    const double deg = it == s.params.end() ? std::min<double>(20.0, n) : to_double("deg", it->second);
    return gen_erdos_renyi(n, deg, seed());
  }
  if (s.family == "sf") return gen_scale_free(node_count(s, "n"), seed());
  if (s.family == "path") return make_path(node_count(s, "n"));
  if (s.family == "cycle") return make_cycle(node_count(s, "n"));
  if (s.family == "complete") return make_complete(node_count(s, "n"));
  if (s.family == "stars") return gen_star_forest(static_cast<int>(node_count(s, "m"))).graph;
  auto it = s.params.find("path");
  return load_cora(read_text_file(cora_path(it == s.params.end() ? std::string() : it->second)));
}

Graph load_graph(const std::string& text, std::uint64_t default_seed) {
  return load_graph(parse_graph_spec(text), default_seed);
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    out.push_back(to_int("list", item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace wlgnn::cli
