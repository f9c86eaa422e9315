#pragma once

#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "elevenfloer/complex.hpp"
#include "elevenfloer/error.hpp"
#include "elevenfloer/snf.hpp"

namespace elevenfloer {

struct HfkEntry {
  int maslov = 0;
  Int rank = 0;
  std::vector<Int> torsion;
  bool symmetry_derived = false;  // filled in from the A >= 0 half

  friend bool operator==(const HfkEntry& a, const HfkEntry& b) {
    return a.maslov == b.maslov && a.rank == b.rank && a.torsion == b.torsion;
  }
};

/// Knot Floer homology arranged by Alexander grading, plus derived invariants.
struct HfkTable {
  std::string knot;
  std::map<int, std::vector<HfkEntry>> by_alexander;  // nonzero groups only, sorted by Maslov
  std::optional<int> tau;
  int genus = 0;
  std::map<int, Int> euler;  // Laurent coefficients of the graded Euler characteristic

  BigradedHomology to_homology() const {
    BigradedHomology h;
    for (const auto& [a, entries] : by_alexander)
      for (const auto& e : entries) h.groups[{a, e.maslov}] = Group{e.rank, e.torsion};
    return h;
  }

  /// Same groups in the same bigradings (names, tau and derived flags ignored).
  bool same_groups(const HfkTable& other) const { return to_homology() == other.to_homology(); }
};

/// Returns the first bigrading whose mirror (-A, M - 2A) carries a different group.
inline std::optional<std::pair<int, int>> symmetry_violation(const BigradedHomology& h) {
  for (const auto& [key, g] : h.groups) {
    auto [a, m] = key;
    auto it = h.groups.find({-a, m - 2 * a});
    if (it == h.groups.end() || it->second != g) return key;
  }
  return std::nullopt;
}

inline std::map<int, Int> euler_poly(const BigradedHomology& h) {
  std::map<int, Int> out;
  for (const auto& [key, g] : h.groups) out[key.first] += (key.second % 2 == 0 ? 1 : -1) * g.rank;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline std::map<int, Int> euler_poly(const HfkTable& t) { return euler_poly(t.to_homology()); }

inline Int evaluate_at_one(const std::map<int, Int>& poly) {
  Int sum = 0;
  for (const auto& [e, c] : poly) sum += c;
  return sum;
}

inline bool laurent_symmetric(const std::map<int, Int>& poly) {
  for (const auto& [e, c] : poly) {
    auto it = poly.find(-e);
    if (it == poly.end() || it->second != c) return false;
  }
  return true;
}

inline HfkTable hfk_table(const BigradedHomology& h, std::string name) {
  if (auto bad = symmetry_violation(h))
    throw Error(ErrorKind::SymmetryViolation, name + ": group at (A, M) = (" + std::to_string(bad->first) + ", " +
                                                  std::to_string(bad->second) + ") has no mirror partner");
  HfkTable t;
  t.knot = std::move(name);
  bool any = false;
  for (const auto& [key, g] : h.groups) {
    if (g.is_zero()) continue;
    t.by_alexander[key.first].push_back(HfkEntry{key.second, g.rank, g.torsion, false});
    t.genus = any ? std::max(t.genus, key.first) : key.first;
    any = true;
  }
  t.euler = euler_poly(h);
  return t;
}

/// Completes a table given for A >= 0 only, using HFK_d(A) = HFK_{d-2A}(-A).
inline HfkTable complete_by_symmetry(HfkTable t) {
  std::map<int, std::vector<HfkEntry>> full = t.by_alexander;
  for (const auto& [a, entries] : t.by_alexander) {
    if (a <= 0) continue;
    auto& mirror = full[-a];
    if (!mirror.empty()) continue;
    for (const auto& e : entries) mirror.push_back(HfkEntry{e.maslov - 2 * a, e.rank, e.torsion, true});
  }
  t.by_alexander = std::move(full);
  t.euler = euler_poly(t.to_homology());
  int genus = 0;
  for (const auto& [a, entries] : t.by_alexander)
    if (!entries.empty()) genus = std::max(genus, a);
  t.genus = genus;
  return t;
}

/// Knot Floer homology of an alternating knot with signature zero from its
/// Alexander polynomial: ranks |a_i| in bigrading (i, i). Coefficients given
/// for i >= 0 only are extended symmetrically.
inline HfkTable alternating_model(std::map<int, Int> coeffs, std::string name = "alternating") {
  bool nonnegative_only = std::all_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.first >= 0; });
  if (nonnegative_only) {
    for (const auto& [e, c] : std::map<int, Int>(coeffs))
      if (e > 0) coeffs[-e] = c;
  }
  std::erase_if(coeffs, [](const auto& kv) { return kv.second == 0; });
  if (!laurent_symmetric(coeffs)) throw Error(ErrorKind::NonSymmetricCoefficients, name);
  BigradedHomology h;
  for (const auto& [i, a] : coeffs) {
    Int expected_sign = (i % 2 == 0) ? 1 : -1;
    if (a * expected_sign < 0)
      throw Error(ErrorKind::BadParams, name + ": coefficient signs do not alternate as signature zero requires");
    h.groups[{i, i}] = Group{std::llabs(a), {}};
  }
  HfkTable t = hfk_table(h, std::move(name));
  t.tau = 0;
  return t;
}

inline HfkTable alternating_model(const std::vector<Int>& nonnegative_coeffs, std::string name = "alternating") {
  std::map<int, Int> m;
  for (std::size_t i = 0; i < nonnegative_coeffs.size(); ++i) m[static_cast<int>(i)] = nonnegative_coeffs[i];
  return alternating_model(std::move(m), std::move(name));
}

/// tau: the least s for which H_*(F(K, s)) -> HF-hat(S^3) = Z
/// is onto, decided over Z. Requires normalized gradings.
inline int tau(const FilteredComplex& c) {
  const GradedComplex hat = hat_complex(c);
  std::vector<std::size_t> zero_basis;
  IntMatrix d0 = detail::boundary_block(hat, 0, &zero_basis);
  IntMatrix d1 = detail::boundary_block(hat, 1);

  IntMatrix cycles = kernel_basis(d0);  // columns: basis of Z_0 in C_0 coordinates
  const std::size_t k = cycles.cols();

  // Boundaries B_0 written in the cycle basis.
  IntMatrix rel(k, d1.cols());
  for (std::size_t col = 0; col < d1.cols(); ++col) {
    std::vector<Int> b(d1.rows());
    for (std::size_t r = 0; r < d1.rows(); ++r) b[r] = d1(r, col);
    auto coords = solve_integer(cycles, b);
    if (!coords) throw Error(ErrorKind::GradingInconsistent, "boundary not in cycle lattice");
    for (std::size_t r = 0; r < k; ++r) rel(r, col) = (*coords)[r];
  }
  SmithForm s = smith_normal_form(rel);
  if (s.rank() + 1 != k || !s.torsion().empty())
    throw Error(ErrorKind::GradingInconsistent, "hat homology in degree 0 is not Z");
  // phi: Z_0 -> Z with kernel B_0.
  std::vector<Int> phi(s.U.row(s.rank()).begin(), s.U.row(s.rank()).end());

  auto onto = [&](int level) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < zero_basis.size(); ++j)
      if (hat.level[zero_basis[j]] <= level) cols.push_back(j);
    if (cols.empty()) return false;
    IntMatrix restricted(d0.rows(), cols.size());
    for (std::size_t r = 0; r < d0.rows(); ++r)
      for (std::size_t j = 0; j < cols.size(); ++j) restricted(r, j) = d0(r, cols[j]);
    IntMatrix sub_cycles = kernel_basis(restricted);
    Int g = 0;
    for (std::size_t j = 0; j < sub_cycles.cols(); ++j) {
      std::vector<Int> v(zero_basis.size(), 0);
      for (std::size_t r = 0; r < cols.size(); ++r) v[cols[r]] = sub_cycles(r, j);
      auto coords = solve_integer(cycles, v);
      Int value = 0;
      for (std::size_t r = 0; r < k; ++r) value += phi[r] * (*coords)[r];
      g = std::gcd(g, value);
    }
    return g == 1;
  };

  int lo = *std::min_element(hat.level.begin(), hat.level.end());
  int hi = *std::max_element(hat.level.begin(), hat.level.end());
  for (int level = lo; level <= hi; ++level)
    if (onto(level)) return level;
  throw Error(ErrorKind::GradingInconsistent, "inclusion of the full complex is not onto");
}

/// Four-genus and unknotting-number consequences of tau and the genus.
struct BoundsReport {
  int tau = 0;
  int genus = 0;
  int slice_genus_lower = 0;       // g4 >= |tau|
  int unknotting_lower = 0;        // u >= g4 >= |tau|
  bool sharp = false;              // |tau| = g
  std::optional<int> slice_genus;  // set only when sharp
  std::optional<int> unknotting;   // set only when sharp
  std::vector<std::string> statements;
};

inline BoundsReport bounds(int tau_value, int genus) {
  BoundsReport r;
  r.tau = tau_value;
  r.genus = genus;
  r.slice_genus_lower = std::abs(tau_value);
  r.unknotting_lower = r.slice_genus_lower;
  r.statements.push_back("g4 >= |tau| = " + std::to_string(r.slice_genus_lower));
  r.statements.push_back("u >= g4 >= " + std::to_string(r.slice_genus_lower));
  r.statements.push_back("g4 <= g = " + std::to_string(genus));
  if (std::abs(tau_value) == genus) {
    r.sharp = true;
    r.slice_genus = genus;
    r.unknotting = genus;
    r.statements.push_back("|tau| = g, hence g4 = u = " + std::to_string(genus));
  }
  return r;
}

}  // namespace elevenfloer
