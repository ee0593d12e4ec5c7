#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "dipaths/acyclic.hpp"
#include "dipaths/digraph.hpp"
#include "dipaths/graph.hpp"

namespace dipaths {

struct ExactResult {
  std::size_t pn = 0;
  std::size_t excess = 0;
  Decomposition certificate;
  std::size_t states = 0;  // search nodes expanded

  bool consistent() const { return pn == excess; }
};

namespace detail {

class ExactSearch {
 public:
  explicit ExactSearch(const Digraph& d) : d_(d), n_(d.num_vertices()), m_(d.num_edges()) {
    out_.resize(n_);
    in_.resize(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& e = d.edges()[i];
      out_[e.tail].push_back(i);
      in_[e.head].push_back(i);
    }
  }

  ExactResult run() {
    const std::uint64_t all = m_ == 64 ? ~0ULL : (1ULL << m_) - 1;
    ExactResult r;
    r.excess = excess(d_).excess;
    for (std::size_t target = lower_bound(all);; ++target) {
      chosen_.clear();
      if (solve(all, target)) {
        r.pn = chosen_.size();
        for (const auto& p : chosen_) r.certificate.family.add(p);
        break;
      }
    }
    r.certificate.host_excess = r.excess;
    r.certificate.perfect = r.pn == r.excess;
    r.certificate.method = "exact";
    r.states = states_;
    return r;
  }

 private:
  std::size_t lower_bound(std::uint64_t mask) const {
    if (mask == 0) return 0;
    std::vector<long> diff(n_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (mask >> i & 1U) {
        ++diff[d_.edges()[i].tail];
        --diff[d_.edges()[i].head];
      }
    }
    std::size_t ex = 0;
    for (long x : diff)
      if (x > 0) ex += static_cast<std::size_t>(x);
    return std::max<std::size_t>(ex, 1);
  }

  // Can the edges in `mask` be split into at most `budget` paths?
  bool solve(std::uint64_t mask, std::size_t budget) {
    if (mask == 0) return true;
    if (lower_bound(mask) > budget) return false;
    if (auto it = failed_.find(mask); it != failed_.end() && it->second >= budget) return false;
    ++states_;

    // Some path of any decomposition contains the first remaining edge, so
    // branching over every simple path through it is complete.
    const auto first = static_cast<std::size_t>(std::countr_zero(mask));
    const auto& e = d_.edges()[first];
    std::vector<char> on(n_, 0);
    on[e.tail] = on[e.head] = 1;

    std::vector<std::pair<std::vector<Vertex>, std::uint64_t>> prefixes;
    std::vector<Vertex> back{e.tail};
    auto grow_back = [&](auto&& self, std::uint64_t used) -> void {
      prefixes.emplace_back(back, used);
      for (auto i : in_[back.back()]) {
        const Vertex w = d_.edges()[i].tail;
        if (!(mask >> i & 1U) || (used >> i & 1U) || on[w]) continue;
        on[w] = 1;
        back.push_back(w);
        self(self, used | 1ULL << i);
        back.pop_back();
        on[w] = 0;
      }
    };
    grow_back(grow_back, 1ULL << first);

    for (const auto& [pre, pre_used] : prefixes) {
      for (std::size_t k = 1; k < pre.size(); ++k) on[pre[k]] = 1;
      std::vector<Vertex> fwd{e.head};
      bool found = false;
      auto grow_fwd = [&](auto&& self, std::uint64_t used) -> void {
        if (found) return;
        Path p;
        p.vertices.assign(pre.rbegin(), pre.rend());
        p.vertices.insert(p.vertices.end(), fwd.begin(), fwd.end());
        chosen_.push_back(p);
        if (solve(mask & ~used, budget - 1)) {
          found = true;
          return;
        }
        chosen_.pop_back();
        for (auto i : out_[fwd.back()]) {
          const Vertex w = d_.edges()[i].head;
          if (!(mask >> i & 1U) || (used >> i & 1U) || on[w]) continue;
          on[w] = 1;
          fwd.push_back(w);
          self(self, used | 1ULL << i);
          fwd.pop_back();
          on[w] = 0;
          if (found) return;
        }
      };
      grow_fwd(grow_fwd, pre_used);
      for (std::size_t k = 1; k < pre.size(); ++k) on[pre[k]] = 0;
      if (found) return true;
    }
    auto& slot = failed_[mask];
    slot = std::max(slot, budget);
    return false;
  }

  const Digraph& d_;
  std::size_t n_;
  std::size_t m_;
  std::vector<std::vector<std::size_t>> out_, in_;
  std::unordered_map<std::uint64_t, std::size_t> failed_;
  std::vector<Path> chosen_;
  std::size_t states_ = 0;
};

}  // namespace detail

/// Minimum number of paths partitioning E(D), with an optimal decomposition.
/// Iterative deepening from ex(D).
inline ExactResult exact_pn(const Digraph& d, std::size_t limit = 24) {
  if (d.num_edges() > limit || d.num_edges() > 64) {
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(d.num_edges()) + " edges exceed the limit of " + std::to_string(std::min<std::size_t>(limit, 64)));
  }
  return detail::ExactSearch(d).run();
}

inline bool is_consistent_exact(const Digraph& d, std::size_t limit = 24) {
  if (d.num_edges() > limit) {
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(d.num_edges()) + " edges exceed the limit of " + std::to_string(limit));
  }
  if (d.num_edges() == 0) return true;
  if (excess(d).excess == 0) return false;
  return exact_pn(d, limit).consistent();
}

struct ScanResult {
  bool strongly_consistent = true;
  std::size_t orientations = 0;  // orientations examined
  std::optional<Digraph> witness;
  std::optional<ExactResult> witness_result;
};

/// Checks every orientation of G. Reversing all edges preserves pn and ex,
/// so only orientations that keep the last edge as listed are searched.
inline ScanResult strong_consistency_scan(const Graph& g, std::size_t limit = 16, std::size_t jobs = 1) {
  if (!g.is_simple()) throw Error(ErrorCode::InvalidArgument, "orientation scan needs a simple graph");
  const std::size_t m = g.num_edges();
  if (m > limit) {
    throw Error(ErrorCode::BudgetExceeded, "2^" + std::to_string(m) + " orientations exceed the limit of 2^" +
                                               std::to_string(limit));
  }
  ScanResult out;
  if (m == 0) return out;
  const std::uint64_t count = 1ULL << (m - 1);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> first_bad{count};
  std::atomic<std::size_t> examined{0};

  auto worker = [&] {
    for (;;) {
      const auto mask = next.fetch_add(1);
      if (mask >= count || mask >= first_bad.load()) return;
      examined.fetch_add(1);
      if (!is_consistent_exact(orientation_from_mask(g, mask), m)) {
        auto seen = first_bad.load();
        while (mask < seen && !first_bad.compare_exchange_weak(seen, mask)) {
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < std::max<std::size_t>(1, jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  out.orientations = examined.load();
  if (first_bad.load() < count) {
    out.strongly_consistent = false;
    out.witness = orientation_from_mask(g, first_bad.load());
    out.witness_result = exact_pn(*out.witness, m);
  }
  return out;
}

}  // namespace dipaths
