#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include "elevenfloer/complex.hpp"

namespace elevenfloer {

/// A based isomorphism between two graded filtered complexes: generator i of
/// the first maps to gauge[i] * generator map[i] of the second.
struct ComplexIsomorphism {
  std::vector<std::size_t> map;
  std::vector<int> gauge;

  std::size_t flipped() const { return static_cast<std::size_t>(std::count(gauge.begin(), gauge.end(), -1)); }
};

namespace detail {

using TermKey = std::tuple<std::size_t, std::size_t, int, int>;

struct Indexed {
  const FilteredComplex* c;
  std::map<TermKey, int> sign;  // (from, to, n_w, n_z) -> sign
  std::vector<std::vector<std::size_t>> neighbours;
  std::vector<std::multiset<std::tuple<int, int, int>>> signature;  // (n_w, n_z, +1 out / -1 in)

  explicit Indexed(const FilteredComplex& cx) : c(&cx), neighbours(cx.size()), signature(cx.size()) {
    for (const Term& t : cx.terms) {
      sign[{t.from, t.to, t.n_w, t.n_z}] += t.sign;
      neighbours[t.from].push_back(t.to);
      neighbours[t.to].push_back(t.from);
      signature[t.from].insert({t.n_w, t.n_z, +1});
      signature[t.to].insert({t.n_w, t.n_z, -1});
    }
  }
};

}  // namespace detail

/// Searches for a grading-preserving bijection of generators that carries the
/// terms of `a` onto the terms of `b` (same shifts), with signs matching up to
/// a per-generator gauge. With `exact_signs` the gauge is forced to be +1.
/// Both complexes must carry gradings.
inline std::optional<ComplexIsomorphism> find_isomorphism(const FilteredComplex& a, const FilteredComplex& b,
                                                          bool exact_signs = false) {
  if (a.size() != b.size() || a.terms.size() != b.terms.size()) return std::nullopt;
  const std::size_t n = a.size();
  detail::Indexed ia(a), ib(b);
  if (ia.sign.size() != ib.sign.size()) return std::nullopt;

  // Visit generators of `a` in BFS order so each new one touches assigned ones.
  std::vector<std::size_t> order;
  std::vector<bool> queued(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (queued[root]) continue;
    std::queue<std::size_t> q;
    q.push(root);
    queued[root] = true;
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop();
      order.push_back(x);
      for (std::size_t y : ia.neighbours[x])
        if (!queued[y]) {
          queued[y] = true;
          q.push(y);
        }
    }
  }

  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (a.generators[x].alexander == b.generators[y].alexander && a.generators[x].maslov == b.generators[y].maslov &&
          ia.signature[x] == ib.signature[y])
        candidates[x].push_back(y);

  std::vector<long> map(n, -1);
  std::vector<bool> used(n, false);

  auto consistent = [&](std::size_t x) {
    for (const auto& [key, s] : ia.sign) {
      auto [f, t, nw, nz] = key;
      if (f != x && t != x) continue;
      if (map[f] < 0 || map[t] < 0) continue;
      auto it = ib.sign.find({static_cast<std::size_t>(map[f]), static_cast<std::size_t>(map[t]), nw, nz});
      if (it == ib.sign.end()) return false;
      if (exact_signs && it->second != s) return false;
    }
    return true;
  };

  auto gauge_for = [&]() -> std::optional<std::vector<int>> {
    std::vector<int> gauge(n, 0);
    std::vector<std::vector<std::pair<std::size_t, int>>> rel(n);
    for (const auto& [key, s] : ia.sign) {
      auto [f, t, nw, nz] = key;
      int sb = ib.sign.at({static_cast<std::size_t>(map[f]), static_cast<std::size_t>(map[t]), nw, nz});
      if (std::abs(s) != std::abs(sb)) return std::nullopt;
      int r = (s == sb) ? 1 : -1;  // gauge[f] * gauge[t] must equal r
      rel[f].push_back({t, r});
      rel[t].push_back({f, r});
    }
    for (std::size_t root = 0; root < n; ++root) {
      if (gauge[root] != 0) continue;
      gauge[root] = 1;
      std::queue<std::size_t> q;
      q.push(root);
      while (!q.empty()) {
        std::size_t x = q.front();
        q.pop();
        for (auto [y, r] : rel[x]) {
          int want = gauge[x] * r;
          if (gauge[y] == 0) {
            gauge[y] = want;
            q.push(y);
          } else if (gauge[y] != want) {
            return std::nullopt;
          }
        }
      }
    }
    return gauge;
  };

  std::optional<ComplexIsomorphism> result;
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) {
      auto gauge = gauge_for();
      if (!gauge) return false;
      ComplexIsomorphism iso;
      for (long m : map) iso.map.push_back(static_cast<std::size_t>(m));
      iso.gauge = std::move(*gauge);
      result = std::move(iso);
      return true;
    }
    std::size_t x = order[depth];
    for (std::size_t y : candidates[x]) {
      if (used[y]) continue;
      map[x] = static_cast<long>(y);
      used[y] = true;
      if (consistent(x) && self(self, depth + 1)) return true;
      used[y] = false;
      map[x] = -1;
    }
    return false;
  };
  search(search, 0);
  return result;
}

}  // namespace elevenfloer
