#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dipaths/digraph.hpp"
#include "dipaths/graph.hpp"

namespace dipaths {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// Exactly two non-negative integers separated by whitespace.
inline bool read_pair(std::string_view line, std::size_t& a, std::size_t& b) {
  auto read = [&](std::size_t& out) {
    line = trim(line);
    if (line.empty()) return false;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), out);
    if (ec != std::errc{} || ptr == line.data()) return false;
    line.remove_prefix(static_cast<std::size_t>(ptr - line.data()));
    return line.empty() || line.front() == ' ' || line.front() == '\t' || line.front() == '\r';
  };
  return read(a) && read(b) && trim(line).empty();
}

struct RawEdgeList {
  std::size_t n = 0;
  std::vector<std::pair<Edge, std::size_t>> edges;  // edge, source line
};

inline RawEdgeList read_edge_list(std::istream& in) {
  RawEdgeList raw;
  std::string line;
  std::size_t lineno = 0;
  std::size_t m = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::size_t a = 0;
    std::size_t b = 0;
    if (!read_pair(body, a, b)) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected two integers, got '" +
                                        std::string(body) + "'", lineno);
    }
    if (!have_header) {
      raw.n = a;
      m = b;
      have_header = true;
      continue;
    }
    if (raw.edges.size() == m) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": more than " + std::to_string(m) + " edges",
                  lineno);
    }
    raw.edges.push_back({Edge{a, b}, lineno});
  }
  if (!have_header) throw Error(ErrorCode::Parse, "missing '<n> <m>' header", lineno);
  if (raw.edges.size() != m) {
    throw Error(ErrorCode::Parse, "header announces " + std::to_string(m) + " edges, found " +
                                      std::to_string(raw.edges.size()), lineno);
  }
  for (const auto& [e, at] : raw.edges) {
    if (e.tail >= raw.n || e.head >= raw.n) {
      throw Error(ErrorCode::VertexOutOfRange, "line " + std::to_string(at) + ": vertex outside 0.." +
                                                   std::to_string(raw.n == 0 ? 0 : raw.n - 1), at);
    }
    if (e.tail == e.head) throw Error(ErrorCode::Loop, "line " + std::to_string(at) + ": loop", at);
  }
  return raw;
}

}  // namespace detail

/// Reads the edge-list format: optional '#' comments, a "<n> <m>" header,
/// then m lines "<u> <v>" for u -> v.
inline Digraph parse_digraph(std::istream& in) {
  auto raw = detail::read_edge_list(in);
  std::set<Edge> seen;
  std::vector<Edge> edges;
  for (const auto& [e, at] : raw.edges) {
    if (!seen.insert(e).second) {
      throw Error(ErrorCode::DuplicateEdge,
                  "line " + std::to_string(at) + ": edge " + std::to_string(e.tail) + " " + std::to_string(e.head) +
                      " repeated", at);
    }
    edges.push_back(e);
  }
  return Digraph(raw.n, std::move(edges));
}

inline Digraph parse_digraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_digraph(in);
}

/// Same format read as a simple undirected graph: "u v" and "v u" collide.
inline Graph parse_graph(std::istream& in) {
  auto raw = detail::read_edge_list(in);
  std::set<Edge> seen;
  std::vector<Edge> edges;
  for (auto [e, at] : raw.edges) {
    if (e.tail > e.head) std::swap(e.tail, e.head);
    if (!seen.insert(e).second) {
      throw Error(ErrorCode::DuplicateEdge,
                  "line " + std::to_string(at) + ": edge " + std::to_string(e.tail) + " " + std::to_string(e.head) +
                      " repeated", at);
    }
    edges.push_back(e);
  }
  return Graph(raw.n, std::move(edges));
}

inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

namespace detail {
inline void write_edges(std::ostream& out, std::size_t n, const std::vector<Edge>& edges) {
  out << n << ' ' << edges.size() << '\n';
  for (const auto& e : edges) out << e.tail << ' ' << e.head << '\n';
}
}  // namespace detail

/// Canonical form: header plus edges in lexicographic order, no comments.
inline void write_digraph(std::ostream& out, const Digraph& d) { detail::write_edges(out, d.num_vertices(), d.edges()); }
inline void write_graph(std::ostream& out, const Graph& g) { detail::write_edges(out, g.num_vertices(), g.edges()); }

inline std::string serialize(const Digraph& d) {
  std::ostringstream out;
  write_digraph(out, d);
  return out.str();
}

inline std::string serialize(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

}  // namespace dipaths
