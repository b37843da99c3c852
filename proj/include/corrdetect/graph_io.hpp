// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "corrdetect/graph.hpp"

namespace corrdetect {

// Text format:
//   u|d <n> <m>
//   <u> <v>        (m lines, 0-based; "d" means arc u -> v)
// '#' starts a comment, blank lines are ignored.

Graph parse_graph(std::string_view text);
Graph load_graph(const std::string& path);

/// Canonical form: header plus edges in lexicographic order.
std::string serialize_graph(const Graph& g);
void save_graph(const Graph& g, const std::string& path);

}  // namespace corrdetect
