#include "wlgnn/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "wlgnn/errors.hpp"

namespace wlgnn {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Splits a line into whitespace-separated tokens.
std::vector<std::string_view> tokens_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t parse_int(std::string_view tok, std::size_t line_no) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line_no, "malformed integer '" + std::string(tok) + "'");
  return value;
}

// Calls fn(u, v) for every data line.
template <typename Fn>
void for_each_pair(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    auto toks = tokens_of(line);
    if (toks.empty() || toks.front().front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (toks.size() != 2) throw ParseError(line_no, "expected two ids, got " + std::to_string(toks.size()) + " tokens");
    fn(parse_int(toks[0], line_no), parse_int(toks[1], line_no), line_no);
    if (end == text.size()) break;
  }
}

}  // namespace

Graph load_edge_list(std::string_view text) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::int64_t max_id = -1;
  for_each_pair(text, [&](std::int64_t u, std::int64_t v, std::size_t line_no) {
    if (u < 0 || v < 0) throw ParseError(line_no, "node ids must be nonnegative");
    if (u > INT32_MAX - 1 || v > INT32_MAX - 1) throw ParseError(line_no, "node id too large");
    max_id = std::max({max_id, u, v});
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  });
  return Graph::from_edges(static_cast<NodeId>(max_id + 1), edges);
}

Graph load_cora(std::string_view text) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  for_each_pair(text, [&](std::int64_t u, std::int64_t v, std::size_t) { raw.emplace_back(u, v); });
  std::vector<std::int64_t> ids;
  ids.reserve(raw.size() * 2);
  for (auto [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto index_of = [&](std::int64_t id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) edges.emplace_back(index_of(u), index_of(v));
  return Graph::from_edges(static_cast<NodeId>(ids.size()), edges);
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# nodes " << g.num_nodes() << " edges " << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace wlgnn
