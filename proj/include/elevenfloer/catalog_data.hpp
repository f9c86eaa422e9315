#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elevenfloer/complex.hpp"
#include "elevenfloer/invariants.hpp"

namespace elevenfloer::catalog {

/// The 13-generator complex of 10_161 with the offsets of [x; i + a, i + b]
/// and the boundary equations as published.
inline FilteredComplex fixture_10_161() {
  FilteredComplex c;
  c.name = "10_161";
  const std::vector<std::pair<int, int>> offsets = {
      {0, 0}, {-1, 1}, {-1, 0}, {0, -2}, {1, -2}, {0, 0}, {0, 1},
      {1, 0}, {0, 0}, {-2, 1}, {-2, 0}, {0, -1}, {1, -1},
  };
  for (std::size_t k = 0; k < offsets.size(); ++k)
    c.generators.push_back(
        ComplexGenerator{"x" + std::to_string(k + 1), offsets[k].second - offsets[k].first, std::nullopt});

  auto d = [&](int from, int sign, int to) {
    const auto& [fa, fb] = offsets[from - 1];
    const auto& [ta, tb] = offsets[to - 1];
    c.terms.push_back(Term{static_cast<std::size_t>(from - 1), static_cast<std::size_t>(to - 1), fa - ta, fb - tb, sign});
  };
  d(1, +1, 4);
  d(1, -1, 11);
  d(2, +1, 3);
  d(5, -1, 4);
  d(6, +1, 4);
  d(6, -1, 3);
  d(7, +1, 1);
  d(7, -1, 2);
  d(7, -1, 6);
  d(7, +1, 10);
  d(8, +1, 9);
  d(8, +1, 13);
  d(8, -1, 1);
  d(8, -1, 5);
  d(9, +1, 12);
  d(9, -1, 11);
  d(10, +1, 11);
  d(13, -1, 12);
  return c;
}

struct TableRow {
  std::string name;
  std::vector<std::string> aliases;
  int tau = 0;
  HfkTable table;  // both halves; negative side flagged as symmetry-derived
};

namespace detail {

// entries per Alexander grading i >= 0: list of (Maslov, rank)
using RowSpec = std::vector<std::vector<std::pair<int, Int>>>;

inline TableRow make_row(std::string name, int tau, const RowSpec& spec, std::vector<std::string> aliases = {}) {
  HfkTable half;
  half.knot = name;
  for (std::size_t i = 0; i < spec.size(); ++i)
    for (const auto& [maslov, rank] : spec[i])
      half.by_alexander[static_cast<int>(i)].push_back(HfkEntry{maslov, rank, {}, false});
  HfkTable full = complete_by_symmetry(std::move(half));
  full.tau = tau;
  return TableRow{std::move(name), std::move(aliases), tau, std::move(full)};
}

}  // namespace detail

/// Knot Floer homology and tau of the non-alternating (1,1)-knots with ten
/// crossings, as published for A >= 0.
inline std::vector<TableRow> table1() {
  using detail::make_row;
  return {
      make_row("10_124", 4, {{{-3, 1}}, {{-2, 1}}, {}, {{-1, 1}}, {{0, 1}}}),
      make_row("10_125", 1, {{{-1, 1}}, {{0, 2}}, {{1, 2}}, {{2, 1}}}),
      make_row("10_126", -1, {{{1, 5}}, {{2, 4}}, {{3, 2}}, {{4, 1}}}),
      make_row("10_127", -2, {{{2, 7}}, {{3, 6}}, {{4, 4}}, {{5, 1}}}),
      make_row("10_128", 3, {{{-2, 1}}, {{-2, 1}}, {{-1, 3}}, {{0, 2}}}),
      make_row("10_129", 0, {{{0, 9}}, {{1, 6}}, {{2, 2}}}),
      make_row("10_130", 0, {{{0, 5}}, {{1, 4}}, {{2, 2}}}),
      make_row("10_131", -1, {{{1, 11}}, {{2, 8}}, {{3, 2}}}),
      make_row("10_132", -1, {{{0, 2}, {1, 1}}, {{1, 2}, {2, 1}}, {{2, 1}}}),
      make_row("10_133", -1, {{{1, 7}}, {{2, 5}}, {{3, 1}}}),
      make_row("10_134", 3, {{{-3, 3}}, {{-2, 4}}, {{-1, 4}}, {{0, 2}}}),
      make_row("10_135", 0, {{{0, 13}}, {{1, 9}}, {{2, 3}}}),
      make_row("10_136", 0, {{{-1, 6}, {0, 1}}, {{0, 4}}, {{1, 1}}}),
      make_row("10_137", 0, {{{0, 11}}, {{1, 6}}, {{2, 1}}}),
      make_row("10_138", 1, {{{-1, 7}}, {{0, 8}}, {{1, 5}}, {{2, 1}}}),
      make_row("10_139", 4, {{{-3, 3}}, {{-2, 2}}, {}, {{-1, 1}}, {{0, 1}}}),
      make_row("10_145", -2, {{{1, 4}, {2, 1}}, {{2, 2}, {3, 1}}, {{4, 1}}}),
      make_row("10_161", -3, {{{2, 3}}, {{3, 2}}, {{4, 1}, {5, 1}}, {{6, 1}}}, {"10_162"}),
  };
}

inline std::optional<TableRow> table1_row(std::string_view name) {
  for (auto& row : table1()) {
    if (row.name == name) return row;
    for (const auto& alias : row.aliases)
      if (alias == name) return row;
  }
  return std::nullopt;
}

}  // namespace elevenfloer::catalog
