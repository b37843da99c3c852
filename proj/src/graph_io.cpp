// SPDX-License-Identifier: Apache-2.0
#include "corrdetect/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "corrdetect/error.hpp"

namespace corrdetect {
namespace {

std::string_view strip(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  const auto ws = " \t\r";
  auto b = line.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = line.find_last_not_of(ws);
  return line.substr(b, e - b + 1);
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t to_uint(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError("expected a non-negative integer, got '" + std::string(tok) + "'", line);
  return v;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  bool directed = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    auto line = strip(raw);
    if (line.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    auto tok = tokens(line);
    if (!have_header) {
      if (tok.size() != 3 || (tok[0] != "u" && tok[0] != "d"))
        throw ParseError("header must be 'u|d <n> <m>'", line_no);
      directed = tok[0] == "d";
      n = to_uint(tok[1], line_no);
      m = to_uint(tok[2], line_no);
      if (n > (std::uint64_t{1} << 31)) throw ParseError("node count too large", line_no);
      edges.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(m, 1u << 26)));
      have_header = true;
    } else {
      if (tok.size() != 2) throw ParseError("edge line must be '<u> <v>'", line_no);
      auto u = to_uint(tok[0], line_no);
      auto v = to_uint(tok[1], line_no);
      if (u >= n || v >= n) throw ParseError("endpoint out of range", line_no);
      if (u == v) throw ParseError("self-loop", line_no);
      if (edges.size() == m) throw ParseError("more edge lines than declared", line_no);
      edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
      edge_lines.push_back(line_no);
    }
    if (nl == text.size()) break;
  }
  if (!have_header) throw ParseError("missing header", line_no);
  if (edges.size() != m)
    throw ParseError("declared " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()), line_no);
  try {
    return directed ? Graph::directed(n, edges) : Graph::undirected(n, edges);
  } catch (const UsageError& e) {
    // Only parallel edges get here; find the offending line.
    std::unordered_map<std::uint64_t, std::size_t> seen;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto a = edges[i].u, b = edges[i].v;
      if (!directed && a > b) std::swap(a, b);
      const auto key = (std::uint64_t{a} << 32) | b;
      if (!seen.emplace(key, i).second)
        throw ParseError("parallel edge " + std::to_string(edges[i].u) + " " +
                         std::to_string(edges[i].v), edge_lines[i]);
    }
    throw ParseError(e.what());
  }
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string serialize_graph(const Graph& g) {
  std::string out;
  out += g.is_directed() ? "d " : "u ";
  out += std::to_string(g.universe()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << serialize_graph(g);
}

}  // namespace corrdetect
