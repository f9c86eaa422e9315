#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "elevenfloer/complex.hpp"
#include "elevenfloer/diagram.hpp"
#include "elevenfloer/error.hpp"

namespace testsupport {

using namespace elevenfloer;

// Tokens of one side of the annulus: -1 for a free point, otherwise the
// partner index of a cap endpoint.
inline std::vector<int> random_side(std::mt19937& rng, int n, int caps) {
  std::vector<int> partner;
  int free_left = n - 2 * caps;
  int caps_left = caps;
  while (free_left > 0 || caps_left > 0) {
    bool take_block = caps_left > 0 && (free_left == 0 || rng() % 2 == 0);
    if (!take_block) {
      partner.push_back(-1);
      --free_left;
      continue;
    }
    int k = 1 + static_cast<int>(rng() % caps_left);  // caps in this balanced block
    caps_left -= k;
    // random balanced word with k pairs
    std::vector<int> stack;
    int opens = 0;
    int base = static_cast<int>(partner.size());
    for (int step = 0; step < 2 * k; ++step) {
      bool open = opens < k && (stack.empty() || rng() % 2 == 0);
      if (open) {
        stack.push_back(static_cast<int>(partner.size()));
        partner.push_back(-2);
        ++opens;
      } else {
        int i = stack.back();
        stack.pop_back();
        partner[i] = static_cast<int>(partner.size());
        partner.push_back(i);
      }
    }
    (void)base;
  }
  return partner;
}

/// A random arc system: non-crossing caps on each side plus order-preserving
/// through arcs. Not necessarily a valid diagram; callers filter by validate().
inline DiagramDescription random_description(std::mt19937& rng, int n) {
  DiagramDescription d;
  d.n = n;
  int max_caps = (n - 1) / 2;
  int caps = max_caps > 0 ? static_cast<int>(rng() % (max_caps + 1)) : 0;
  auto bottom = random_side(rng, n, caps);
  auto top = random_side(rng, n, caps);
  int top_offset = static_cast<int>(rng() % n);
  std::vector<int> free_bottom, free_top;
  for (int i = 0; i < n; ++i) {
    if (bottom[i] == -1)
      free_bottom.push_back(i);
    else if (bottom[i] > i)
      d.arcs.push_back({{i, Boundary::Bottom}, {bottom[i], Boundary::Bottom}});
    if (top[i] == -1)
      free_top.push_back(i + top_offset);
    else if (top[i] > i)
      d.arcs.push_back({{i + top_offset, Boundary::Top}, {top[i] + top_offset, Boundary::Top}});
  }
  const int q = static_cast<int>(free_bottom.size());
  const int shift = q > 0 ? static_cast<int>(rng() % q) : 0;
  for (int i = 0; i < q; ++i) {
    int j = (i + shift) % q;
    int wrap = (i + shift) / q;
    d.arcs.push_back({{free_bottom[i], Boundary::Bottom}, {free_top[j] + wrap * n, Boundary::Top}});
  }
  d.w = {static_cast<int>(rng() % n), rng() % 2 ? Side::Above : Side::Below};
  d.z = {static_cast<int>(rng() % n), rng() % 2 ? Side::Above : Side::Below};
  return d;
}

/// Up to `count` valid random diagrams with n in [1, max_n], reproducible from `seed`.
inline std::vector<Diagram11> random_valid_diagrams(unsigned seed, int count, int max_n, int max_attempts = 200000) {
  std::mt19937 rng(seed);
  std::vector<Diagram11> out;
  for (int attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < count; ++attempt) {
    int n = 1 + static_cast<int>(rng() % max_n);
    DiagramDescription d = random_description(rng, n);
    d.name = "random-" + std::to_string(seed) + "-" + std::to_string(attempt);
    try {
      out.push_back(validate(d));
    } catch (const Error&) {
    }
  }
  return out;
}

// ------------------------------------------------------------------ GF(p) oracle

/// Rank of a dense matrix over GF(p) by plain Gaussian elimination.
inline int rank_mod_p(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  int rank = 0;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  auto inv = [p](std::int64_t x) {
    std::int64_t r = 1, e = p - 2;
    x %= p;
    while (e) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  for (auto& row : a)
    for (auto& v : row) v = ((v % p) + p) % p;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    std::int64_t iv = inv(a[rank][c]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || !a[r][c]) continue;
      std::int64_t f = a[r][c] * iv % p;
      for (int k = c; k < cols; ++k) a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

/// Dimensions of the associated graded homology over GF(p), keyed by (A, M).
/// Uses only the terms with n_w = n_z = 0 and the stored gradings.
inline std::map<std::pair<int, int>, int> graded_dims_mod_p(const FilteredComplex& c, std::int64_t p) {
  std::map<std::pair<int, int>, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < c.size(); ++i) cells[{*c.generators[i].alexander, *c.generators[i].maslov}].push_back(i);
  auto block = [&](std::pair<int, int> src, std::pair<int, int> dst) {
    const auto& s = cells[src];
    const auto& t = cells[dst];
    std::vector<std::vector<std::int64_t>> m(t.size(), std::vector<std::int64_t>(s.size(), 0));
    for (const Term& term : c.terms) {
      if (term.n_w != 0 || term.n_z != 0) continue;
      for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < t.size(); ++b)
          if (term.from == s[a] && term.to == t[b]) m[b][a] += term.sign;
    }
    return m;
  };
  std::map<std::pair<int, int>, int> dims;
  auto keys = cells;
  for (const auto& [key, gens] : keys) {
    auto [a, m] = key;
    int out_rank = cells.count({a, m - 1}) ? rank_mod_p(block(key, {a, m - 1}), p) : 0;
    int in_rank = cells.count({a, m + 1}) ? rank_mod_p(block({a, m + 1}, key), p) : 0;
    int d = static_cast<int>(gens.size()) - out_rank - in_rank;
    if (d != 0) dims[key] = d;
  }
  return dims;
}

}  // namespace testsupport
