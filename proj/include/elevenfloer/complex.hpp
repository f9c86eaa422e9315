#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "elevenfloer/error.hpp"
#include "elevenfloer/matrix.hpp"
#include "elevenfloer/snf.hpp"

namespace elevenfloer {

/// A basis element of CFK^infinity. The full complex is spanned by [x; i, j]
/// with j - i = alexander, for all i.
struct ComplexGenerator {
  std::string name;
  std::optional<int> alexander;
  std::optional<int> maslov;
};

/// One differential term: [from; i, j] -> sign * [to; i - n_w, j - n_z].
struct Term {
  std::size_t from = 0;
  std::size_t to = 0;
  int n_w = 0;
  int n_z = 0;
  int sign = 1;

  friend auto operator<=>(const Term&, const Term&) = default;
};

struct FilteredComplex {
  std::string name;
  std::vector<ComplexGenerator> generators;
  std::vector<Term> terms;

  std::size_t size() const { return generators.size(); }

  std::optional<std::size_t> find(std::string_view gen) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i].name == gen) return i;
    return std::nullopt;
  }

  bool graded() const {
    return std::all_of(generators.begin(), generators.end(),
                       [](const ComplexGenerator& g) { return g.alexander && g.maslov; });
  }

  int alexander(std::size_t i) const { return generators.at(i).alexander.value(); }
  int maslov(std::size_t i) const { return generators.at(i).maslov.value(); }
};

/// First nonzero coefficient of the composite d o d, keyed by its U-shift.
struct DSquaredWitness {
  std::size_t from;
  std::size_t to;
  int n_w;
  int n_z;
  Int coefficient;
};

inline std::optional<DSquaredWitness> verify_d_squared(const FilteredComplex& c) {
  std::vector<std::vector<const Term*>> outgoing(c.size());
  for (const Term& t : c.terms) outgoing.at(t.from).push_back(&t);

  for (std::size_t x = 0; x < c.size(); ++x) {
    std::map<std::tuple<std::size_t, int, int>, Int> composite;
    for (const Term* first : outgoing[x])
      for (const Term* second : outgoing[first->to])
        composite[{second->to, first->n_w + second->n_w, first->n_z + second->n_z}] +=
            static_cast<Int>(first->sign) * second->sign;
    for (const auto& [key, coef] : composite)
      if (coef != 0) return DSquaredWitness{x, std::get<0>(key), std::get<1>(key), std::get<2>(key), coef};
  }
  return std::nullopt;
}

inline void require_d_squared_zero(const FilteredComplex& c) {
  if (auto w = verify_d_squared(c)) {
    throw Error(ErrorKind::DSquaredNonzero, "d^2 " + c.generators[w->from].name + " has coefficient " +
                                                std::to_string(w->coefficient) + " on [" +
                                                c.generators[w->to].name + "; -" + std::to_string(w->n_w) +
                                                ", -" + std::to_string(w->n_z) + "]");
  }
}

/// A finitely generated free Z-complex with a homological degree and an
/// optional filtration level per basis element. Used for the hat complex,
/// its filtration subcomplexes, and the associated graded pieces.
struct GradedComplex {
  std::vector<std::size_t> basis;  // indices into the parent FilteredComplex
  std::vector<int> degree;
  std::vector<int> level;
  struct Entry {
    std::size_t from;  // positions within basis
    std::size_t to;
    Int coefficient;
  };
  std::vector<Entry> entries;

  std::size_t size() const { return basis.size(); }
};

struct Group {
  Int rank = 0;
  std::vector<Int> torsion;

  bool is_zero() const { return rank == 0 && torsion.empty(); }
  friend bool operator==(const Group&, const Group&) = default;
};

/// Homology keyed by (Alexander, Maslov).
struct BigradedHomology {
  std::map<std::pair<int, int>, Group> groups;

  bool torsion_free() const {
    return std::all_of(groups.begin(), groups.end(), [](const auto& kv) { return kv.second.torsion.empty(); });
  }
  Int rank(int alexander, int maslov) const {
    auto it = groups.find({alexander, maslov});
    return it == groups.end() ? 0 : it->second.rank;
  }
  Int total_rank() const {
    Int r = 0;
    for (const auto& [k, g] : groups) r += g.rank;
    return r;
  }
  friend bool operator==(const BigradedHomology&, const BigradedHomology&) = default;
};

namespace detail {

// Boundary block from degree `deg` to degree `deg - 1` as a matrix whose
// columns index the source and rows index the target.
inline IntMatrix boundary_block(const GradedComplex& c, int deg, std::vector<std::size_t>* src_out = nullptr,
                                std::vector<std::size_t>* dst_out = nullptr) {
  std::vector<std::size_t> src, dst;
  std::vector<long> src_pos(c.size(), -1), dst_pos(c.size(), -1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.degree[i] == deg) {
      src_pos[i] = static_cast<long>(src.size());
      src.push_back(i);
    } else if (c.degree[i] == deg - 1) {
      dst_pos[i] = static_cast<long>(dst.size());
      dst.push_back(i);
    }
  }
  IntMatrix m(dst.size(), src.size());
  for (const auto& e : c.entries)
    if (src_pos[e.from] >= 0 && dst_pos[e.to] >= 0) m(dst_pos[e.to], src_pos[e.from]) += e.coefficient;
  if (src_out) *src_out = std::move(src);
  if (dst_out) *dst_out = std::move(dst);
  return m;
}

}  // namespace detail

/// Homology of a graded complex, per degree.
inline std::map<int, Group> graded_homology(const GradedComplex& c) {
  std::map<int, Group> out;
  std::vector<int> degrees = c.degree;
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  for (int deg : degrees) {
    std::size_t dim = std::count(c.degree.begin(), c.degree.end(), deg);
    std::size_t outgoing_rank = integer_rank(detail::boundary_block(c, deg));
    SmithForm incoming = smith_normal_form(detail::boundary_block(c, deg + 1));
    Group g;
    g.rank = static_cast<Int>(dim - outgoing_rank - incoming.rank());
    g.torsion = incoming.torsion();
    if (!g.is_zero()) out[deg] = std::move(g);
  }
  return out;
}

/// The i = 0 column: generators [x; 0, A(x)] and the terms with n_w = 0.
/// Requires Maslov gradings; the filtration level is A(x).
inline GradedComplex hat_complex(const FilteredComplex& c) {
  GradedComplex h;
  for (std::size_t i = 0; i < c.size(); ++i) {
    h.basis.push_back(i);
    h.degree.push_back(c.maslov(i));
    h.level.push_back(c.generators[i].alexander.value_or(0));
  }
  for (const Term& t : c.terms)
    if (t.n_w == 0) h.entries.push_back({t.from, t.to, t.sign});
  return h;
}

/// Subcomplex of the hat complex spanned by generators with A <= s.
inline GradedComplex filtration_sub(const FilteredComplex& c, int s) {
  GradedComplex h;
  std::vector<long> pos(c.size(), -1);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.alexander(i) <= s) {
      pos[i] = static_cast<long>(h.basis.size());
      h.basis.push_back(i);
      h.degree.push_back(c.maslov(i));
      h.level.push_back(c.alexander(i));
    }
  for (const Term& t : c.terms)
    if (t.n_w == 0 && pos[t.from] >= 0) {
      // n_z >= 0, so the target already lies in the subcomplex.
      h.entries.push_back({static_cast<std::size_t>(pos[t.from]), static_cast<std::size_t>(pos[t.to]), t.sign});
    }
  return h;
}

/// Associated graded pieces: terms with n_w = n_z = 0, split by Alexander grading.
inline std::map<int, GradedComplex> assoc_graded(const FilteredComplex& c) {
  std::map<int, GradedComplex> out;
  std::vector<std::size_t> pos(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    GradedComplex& piece = out[c.alexander(i)];
    pos[i] = piece.basis.size();
    piece.basis.push_back(i);
    piece.degree.push_back(c.maslov(i));
    piece.level.push_back(c.alexander(i));
  }
  for (const Term& t : c.terms)
    if (t.n_w == 0 && t.n_z == 0) out[c.alexander(t.from)].entries.push_back({pos[t.from], pos[t.to], t.sign});
  return out;
}

/// Knot Floer homology: homology of the associated graded complex.
inline BigradedHomology homology(const FilteredComplex& c) {
  BigradedHomology h;
  for (const auto& [a, piece] : assoc_graded(c))
    for (auto& [m, g] : graded_homology(piece)) h.groups[{a, m}] = g;
  return h;
}

/// Relative grading of generator `i` against generator `j`: (A(i) - A(j), M(i) - M(j)).
/// Supplied by callers that can bridge disconnected differential graphs.
using RelativeGradingHint = std::function<std::pair<int, int>(std::size_t i, std::size_t j)>;

namespace detail {

inline std::pair<int, int> hat_support(const FilteredComplex& c) {
  auto hom = graded_homology(hat_complex(c));
  Int total = 0;
  int where = 0;
  for (const auto& [deg, g] : hom) {
    if (!g.torsion.empty())
      throw Error(ErrorKind::GradingInconsistent, "hat homology has torsion in degree " + std::to_string(deg));
    total += g.rank;
    where = deg;
  }
  if (total != 1)
    throw Error(ErrorKind::GradingInconsistent, "hat homology has rank " + std::to_string(total) + ", expected 1");
  return {where, static_cast<int>(total)};
}

}  // namespace detail

/// Pins gradings. Relative Maslov and Alexander gradings are propagated along
/// differential terms (M drops by 1 - 2 n_w, A drops by n_z - n_w); the hint
/// bridges components of the differential graph. Absolute Maslov grading puts
/// the hat homology in degree 0. Alexander gradings already present are kept
/// and checked; otherwise the unique shift making the knot homology symmetric
/// under (A, M) -> (-A, M - 2A) is chosen.
inline FilteredComplex normalize_gradings(FilteredComplex c, const RelativeGradingHint& hint = {}) {
  require_d_squared_zero(c);
  const std::size_t n = c.size();
  if (n == 0) throw Error(ErrorKind::GradingInconsistent, "empty complex");

  const bool alexander_given = std::all_of(c.generators.begin(), c.generators.end(),
                                           [](const ComplexGenerator& g) { return g.alexander.has_value(); });

  std::vector<std::vector<std::pair<std::size_t, std::pair<int, int>>>> adj(n);
  for (const Term& t : c.terms) {
    std::pair<int, int> drop{t.n_z - t.n_w, 1 - 2 * t.n_w};
    adj[t.from].push_back({t.to, {-drop.first, -drop.second}});
    adj[t.to].push_back({t.from, drop});
  }

  std::vector<std::optional<std::pair<int, int>>> rel(n);
  auto flood = [&](std::size_t root, std::pair<int, int> value) {
    rel[root] = value;
    std::queue<std::size_t> todo;
    todo.push(root);
    while (!todo.empty()) {
      std::size_t x = todo.front();
      todo.pop();
      for (const auto& [y, delta] : adj[x]) {
        std::pair<int, int> expect{rel[x]->first + delta.first, rel[x]->second + delta.second};
        if (!rel[y]) {
          rel[y] = expect;
          todo.push(y);
        } else if (*rel[y] != expect) {
          throw Error(ErrorKind::GradingInconsistent,
                      "grading cycle disagrees at " + c.generators[y].name + " (from " + c.generators[x].name + ")");
        }
      }
    }
  };

  flood(0, {0, 0});
  for (std::size_t i = 1; i < n; ++i) {
    if (rel[i]) continue;
    if (!hint)
      throw Error(ErrorKind::GradingInconsistent,
                  "differential graph is disconnected at " + c.generators[i].name + " and no grading hint is available");
    auto [da, dm] = hint(i, 0);
    flood(i, {rel[0]->first + da, rel[0]->second + dm});
  }

  if (alexander_given) {
    int offset = *c.generators[0].alexander - rel[0]->first;
    for (std::size_t i = 0; i < n; ++i)
      if (*c.generators[i].alexander != rel[i]->first + offset)
        throw Error(ErrorKind::GradingInconsistent,
                    "stated Alexander grading of " + c.generators[i].name + " disagrees with the differential");
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!alexander_given) c.generators[i].alexander = rel[i]->first;
    c.generators[i].maslov = rel[i]->second;
  }

  int hat_degree = detail::hat_support(c).first;
  for (auto& g : c.generators) *g.maslov -= hat_degree;

  if (!alexander_given) {
    BigradedHomology h = homology(c);
    int lo = h.groups.begin()->first.first;
    int hi = h.groups.rbegin()->first.first;
    if ((lo + hi) % 2 != 0)
      throw Error(ErrorKind::GradingInconsistent, "Alexander support has even width; no symmetric shift exists");
    int shift = -(lo + hi) / 2;
    for (auto& g : c.generators) *g.alexander += shift;
    // Maslov gradings do not depend on the Alexander shift; the hat support is unchanged.
  }
  return c;
}

}  // namespace elevenfloer
