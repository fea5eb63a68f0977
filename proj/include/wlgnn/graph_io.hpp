#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wlgnn/graph.hpp"

namespace wlgnn {

// One "u v" pair of nonnegative ids per line; blank lines and lines whose
// first non-space character is '#' are skipped. The graph has max id + 1
// nodes; duplicates and self-loops are dropped.
Graph load_edge_list(std::string_view text);

// Cora citation list: two integer paper ids per line (tab or space
// separated). Ids are remapped to 0..n-1 by ascending numeric value.
Graph load_cora(std::string_view text);

std::string write_edge_list(const Graph& g);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace wlgnn
