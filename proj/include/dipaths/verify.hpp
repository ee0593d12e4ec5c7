#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "dipaths/acyclic.hpp"
#include "dipaths/digraph.hpp"

namespace dipaths {

enum class Verdict { Perfect, ValidNotPerfect, Invalid };

constexpr const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Perfect: return "perfect";
    case Verdict::ValidNotPerfect: return "valid but not perfect";
    case Verdict::Invalid: return "invalid";
  }
  return "?";
}

struct VerifyReport {
  Verdict verdict = Verdict::Invalid;
  bool paths_valid = true;
  bool partition = true;
  bool endpoint_counts = true;
  std::size_t path_count = 0;
  std::size_t excess = 0;
  std::vector<Edge> missing_edges;
  std::vector<Edge> repeated_edges;
  std::vector<std::string> problems;

  bool ok() const { return verdict == Verdict::Perfect; }
};

/// Checks a claimed decomposition against its host without trusting any of
/// the producer's bookkeeping: every member is a directed path of d, the
/// members partition E(d), and the count and per-vertex endpoint numbers are
/// compared against ex(d), ex+(v) and ex-(v).
inline VerifyReport verify(const Digraph& d, const std::vector<Path>& paths) {
  VerifyReport r;
  const auto report = excess(d);
  r.excess = report.excess;
  r.path_count = paths.size();

  std::vector<std::size_t> hits(d.num_edges(), 0);
  std::vector<std::size_t> starts(d.num_vertices(), 0), ends(d.num_vertices(), 0);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    const bool in_range = std::all_of(p.vertices.begin(), p.vertices.end(),
                                      [&](Vertex v) { return v < d.num_vertices(); });
    if (!in_range || !is_path_in(d, p)) {
      r.paths_valid = false;
      r.problems.push_back("member " + std::to_string(i) + " is not a directed path of the digraph");
      if (!in_range) continue;
    }
    for (const auto& e : p.edges()) {
      if (auto at = d.edge_index(e.tail, e.head)) ++hits[*at];
    }
    if (p.vertices.size() >= 2) {
      ++starts[p.front()];
      ++ends[p.back()];
    }
  }
  for (std::size_t i = 0; i < d.num_edges(); ++i) {
    if (hits[i] == 0) r.missing_edges.push_back(d.edges()[i]);
    if (hits[i] > 1) r.repeated_edges.push_back(d.edges()[i]);
  }
  for (const auto& e : r.missing_edges) {
    r.partition = false;
    r.problems.push_back("edge " + std::to_string(e.tail) + "->" + std::to_string(e.head) + " is not covered");
  }
  for (const auto& e : r.repeated_edges) {
    r.partition = false;
    r.problems.push_back("edge " + std::to_string(e.tail) + "->" + std::to_string(e.head) + " is covered twice");
  }
  for (Vertex v = 0; v < d.num_vertices(); ++v) {
    if (starts[v] != report.signs[v].ex_plus || ends[v] != report.signs[v].ex_minus) {
      r.endpoint_counts = false;
    }
  }

  if (!r.paths_valid || !r.partition) {
    r.verdict = Verdict::Invalid;
  } else if (r.path_count == r.excess && r.endpoint_counts) {
    r.verdict = Verdict::Perfect;
  } else {
    r.verdict = Verdict::ValidNotPerfect;
    r.problems.push_back(std::to_string(r.path_count) + " paths for excess " + std::to_string(r.excess));
  }
  return r;
}

inline VerifyReport verify(const Digraph& d, const Decomposition& dec) { return verify(d, dec.family.paths()); }

}  // namespace dipaths
