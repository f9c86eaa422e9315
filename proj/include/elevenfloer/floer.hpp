#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "elevenfloer/complex.hpp"
#include "elevenfloer/cover.hpp"
#include "elevenfloer/diagram.hpp"
#include "elevenfloer/error.hpp"

namespace elevenfloer {

/// Which corner of a bigon is the source of the differential.
enum class Direction {
  LeavesAlongBeta,   // counterclockwise boundary leaves the source corner along beta
  LeavesAlongAlpha,  // counterclockwise boundary leaves the source corner along alpha
};

struct EngineOptions {
  Direction direction = Direction::LeavesAlongBeta;
  int max_doublings = 6;

  /// Defaults, with max_doublings taken from ELEVENFLOER_WINDOW_LIMIT when set.
  static EngineOptions from_environment() {
    EngineOptions opt;
    if (const char* v = std::getenv("ELEVENFLOER_WINDOW_LIMIT")) {
      char* end = nullptr;
      long parsed = std::strtol(v, &end, 10);
      if (end != v && *end == '\0' && parsed >= 0 && parsed <= 30) opt.max_doublings = static_cast<int>(parsed);
    }
    return opt;
  }
};

/// Canonical lift of an intersection point: its crossing in period 0 of beta.
struct FloerGenerator {
  int index = 0;
  int x = 0;
  int line = 0;
  int direction = 0;
  int traversal = 0;  // index of the crossing within one beta period
};

/// A bigon between the canonical lifted beta and one alpha line.
struct BigonClass {
  int from = 0;
  int to = 0;
  int n_w = 0;
  int n_z = 0;
  int sign = 1;
  // geometry, as found from the canonical corner
  int line = 0;
  int left_x = 0;
  int right_x = 0;
  bool above = true;
  long first_crossing = 0;  // beta indices of the two corners, first < last
  long last_crossing = 0;
  std::vector<Point> boundary;  // beta subarc followed by the closing alpha segment

  auto key() const { return std::tuple(from, to, n_w, n_z, sign); }
};

inline std::vector<FloerGenerator> generators(const LiftedDiagram& L) {
  std::vector<FloerGenerator> out(L.n());
  for (const auto& c : L.crossings)
    if (c.index >= 0 && c.index < L.n()) out[c.generator] = FloerGenerator{c.generator, c.x, c.line, c.direction, static_cast<int>(c.index)};
  return out;
}

/// Sign of a bigon: +1 when the boundary run that follows alpha in its positive
/// direction goes counterclockwise, i.e. the disk lies above its alpha edge.
inline int bigon_sign(bool disk_above) { return disk_above ? +1 : -1; }

namespace detail {

inline std::size_t window_offset(const LiftedDiagram& L) { return static_cast<std::size_t>(L.periods) * L.n(); }

inline std::vector<Point> subarc_polygon(const LiftedDiagram& L, std::size_t a, std::size_t b) {
  std::vector<Point> poly;
  std::size_t va = L.crossings[a].vertex, vb = L.crossings[b].vertex;
  if (va <= vb) {
    poly.assign(L.beta.begin() + va, L.beta.begin() + vb + 1);
  } else {
    for (std::size_t v = va + 1; v-- > vb;) poly.push_back(L.beta[v]);
  }
  return poly;
}

inline void bounding_box(const std::vector<Point>& poly, Point& lo, Point& hi) {
  lo = hi = poly.front();
  for (const Point& p : poly) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
}

inline int weighted_count(const LiftedDiagram& L, const Basepoint& b, const std::vector<Point>& poly) {
  Point lo, hi;
  bounding_box(poly, lo, hi);
  int total = 0;
  for (const Point& p : L.basepoint_lifts(b, lo, hi)) total += winding_number(poly, p);
  return total;
}

inline int quadrant(Point v) {
  if (v.x > 0 && v.y >= 0) return 0;
  if (v.x <= 0 && v.y > 0) return 1;
  if (v.x < 0 && v.y <= 0) return 2;
  return 3;
}

// turning quarters between consecutive nonzero segments of beta, accumulated:
// prefix[v] is the turning of beta from vertex 0 up to vertex v
inline std::vector<int> turning_prefix(const std::vector<Point>& beta) {
  std::vector<int> prefix(beta.size(), 0);
  Point last{0, 0};
  int total = 0;
  for (std::size_t i = 0; i + 1 < beta.size(); ++i) {
    Point d{beta[i + 1].x - beta[i].x, beta[i + 1].y - beta[i].y};
    if (d.x != 0 || d.y != 0) {
      if (last.x != 0 || last.y != 0) {
        __int128 cross = static_cast<__int128>(last.x) * d.y - static_cast<__int128>(last.y) * d.x;
        if (cross > 0) total += mod_floor(quadrant(d) - quadrant(last), 4);
        if (cross < 0) total -= mod_floor(quadrant(last) - quadrant(d), 4);
      }
      last = d;
    }
    prefix[i] = total;
  }
  if (!beta.empty()) prefix.back() = total;
  return prefix;
}

}  // namespace detail

/// Lunes with a corner at a canonical generator lift, inside the routed window.
/// A pair of crossings p, q on one alpha line bounds a lune when the closed
/// curve (beta from p to q, then alpha back to p) has winding numbers of one
/// sign, both corners are convex, and the Maslov index is 1. When the beta
/// subarc avoids the open alpha segment this is an embedded bigon.
inline std::vector<BigonClass> bigons(const LiftedDiagram& L, const EngineOptions& opt = {}) {
  const std::size_t base = detail::window_offset(L);
  const int n = L.n();
  const std::vector<int> turn = detail::turning_prefix(L.beta);
  // deck classes of lunes: corner crossings translated so `from` lies in period 0
  std::map<std::pair<long, long>, BigonClass> found;

  for (std::size_t p = base; p < base + static_cast<std::size_t>(n); ++p) {
    const LiftedCrossing& cp = L.crossings[p];
    const std::int64_t y = L.spacing * cp.line;
    for (int step : {+1, -1}) {
      std::vector<std::int64_t> between;  // scaled x of subarc crossings on this line
      for (long q = static_cast<long>(p) + step; q >= 0 && q < static_cast<long>(L.crossings.size()); q += step) {
        const LiftedCrossing& cq = L.crossings[q];
        if (cq.line != cp.line) continue;
        std::size_t v0 = std::min(cp.vertex, cq.vertex), v1 = std::max(cp.vertex, cq.vertex);
        // the corner segments are vertical, so the subarc turning is exact
        int turning = turn[v1 - 1] - turn[v0];
        if (step < 0) turning = -turning;
        if (turning == 2 || turning == -2) {
          const int orient = turning > 0 ? 1 : -1;
          std::vector<Point> poly = detail::subarc_polygon(L, p, static_cast<std::size_t>(q));
          const std::int64_t lo = kXScale * std::min(cp.x, cq.x), hi = kXScale * std::max(cp.x, cq.x);
          std::vector<std::int64_t> cuts{lo, hi};
          for (std::int64_t x : between)
            if (lo < x && x < hi) cuts.push_back(x);
          std::sort(cuts.begin(), cuts.end());
          // every bounded face of the curve touches the alpha segment
          bool ok = winding_number(poly, {lo - 1, y + 1}) == 0 && winding_number(poly, {hi + 1, y + 1}) == 0;
          int above = 0;
          for (std::size_t i = 0; ok && i + 1 < cuts.size(); ++i) {
            std::int64_t mid = (cuts[i] + cuts[i + 1]) / 2;
            int up = orient * winding_number(poly, {mid, y + 1});
            int down = orient * winding_number(poly, {mid, y - 1});
            if (up < 0 || down < 0) ok = false;
            if (i == 0 || i + 2 == cuts.size()) ok = ok && up + down == 1;
            above = up - down;
          }
          if (ok) {
            BigonClass b;
            b.above = above > 0;
            b.sign = bigon_sign(b.above);
            b.line = cp.line;
            b.left_x = std::min(cp.x, cq.x);
            b.right_x = std::max(cp.x, cq.x);
            const LiftedCrossing& left_c = cp.x < cq.x ? cp : cq;
            const LiftedCrossing& right_c = cp.x < cq.x ? cq : cp;
            bool from_right = (b.above == (opt.direction == Direction::LeavesAlongBeta));
            const LiftedCrossing& src = from_right ? right_c : left_c;
            const LiftedCrossing& dst = from_right ? left_c : right_c;
            b.from = src.generator;
            b.to = dst.generator;
            b.n_w = orient * detail::weighted_count(L, L.diagram.w(), poly);
            b.n_z = orient * detail::weighted_count(L, L.diagram.z(), poly);
            b.first_crossing = std::min<long>(cp.index, cq.index);
            b.last_crossing = std::max<long>(cp.index, cq.index);
            b.boundary = std::move(poly);
            const long shift = static_cast<long>(mod_floor(static_cast<int>(src.index), n)) - src.index;
            found.try_emplace(std::pair{src.index + shift, dst.index + shift}, std::move(b));
          }
        }
        between.push_back(kXScale * cq.x);
      }
    }
  }
  std::vector<BigonClass> out;
  for (auto& [k, b] : found) out.push_back(std::move(b));
  std::stable_sort(out.begin(), out.end(), [](const BigonClass& a, const BigonClass& b) { return a.key() < b.key(); });
  return out;
}

/// Bigon classes with the window doubled until two consecutive sizes agree.
struct StableBigons {
  LiftedDiagram lifted;  // the larger of the two agreeing windows
  std::vector<BigonClass> classes;
};

inline StableBigons stable_bigons(const Diagram11& d, const EngineOptions& opt = {}) {
  int periods = period_line_span(d) + 1;
  auto keys = [](const std::vector<BigonClass>& v) {
    std::vector<std::tuple<int, int, int, int, int>> k;
    for (const auto& b : v) k.push_back(b.key());
    return k;
  };
  LiftedDiagram L = route(d, periods);
  std::vector<BigonClass> prev = bigons(L, opt);
  for (int doubling = 0; doubling < opt.max_doublings; ++doubling) {
    periods *= 2;
    LiftedDiagram next = route(d, periods);
    std::vector<BigonClass> cur = bigons(next, opt);
    if (keys(cur) == keys(prev)) return StableBigons{std::move(next), std::move(cur)};
    prev = std::move(cur);
    L = std::move(next);
  }
  throw Error(ErrorKind::WindowUnstable, "bigon classes still changing after " + std::to_string(opt.max_doublings) + " doublings");
}

/// A 2-chain joining two generators, reduced to multiplicity zero at w.
struct Domain {
  int n_w = 0;
  int n_z = 0;
  int maslov_index = 0;
  int euler_quarters = 0;   // 4 * Euler measure
  int corner_quarters = 0;  // 4 * (n_x + n_y)
};

namespace detail {

// Total turning of an open polyline in quarter turns. Exact when the first and
// last segments are axis-parallel.
inline int turning_quarters(const std::vector<Point>& path) {
  std::vector<Point> dirs;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    Point d{path[i + 1].x - path[i].x, path[i + 1].y - path[i].y};
    if (d.x != 0 || d.y != 0) dirs.push_back(d);
  }
  int total = 0;
  for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
    const Point& u = dirs[i];
    const Point& v = dirs[i + 1];
    __int128 cross = static_cast<__int128>(u.x) * v.y - static_cast<__int128>(u.y) * v.x;
    if (cross > 0) total += mod_floor(quadrant(v) - quadrant(u), 4);
    if (cross < 0) total -= mod_floor(quadrant(u) - quadrant(v), 4);
  }
  return total;
}

inline int corner_quarter_windings(const LiftedDiagram& L, int generator, const std::vector<Point>& poly) {
  Point lo, hi;
  bounding_box(poly, lo, hi);
  const std::int64_t step = kXScale * L.n();
  int total = 0;
  for (std::int64_t line = LiftedDiagram::floor_div(lo.y, L.spacing); line * L.spacing <= hi.y; ++line) {
    std::int64_t y = line * L.spacing;
    if (y < lo.y) continue;
    std::int64_t x0 = kXScale * generator;
    for (std::int64_t s = LiftedDiagram::floor_div(lo.x - x0, step); x0 + s * step <= hi.x; ++s) {
      std::int64_t x = x0 + s * step;
      if (x < lo.x) continue;
      for (int dx : {-1, 1})
        for (int dy : {-1, 1}) total += winding_number(poly, Point{x + dx, y + dy});
    }
  }
  return total;
}

}  // namespace detail

/// Domain from x to y: the beta subarc from the canonical lift of x to the lift
/// of y on the same alpha line, closed up along alpha, then shifted by copies
/// of the torus so that n_w = 0.
inline Domain domain_between(const LiftedDiagram& L, int x, int y, const EngineOptions& opt = {}) {
  if (x == y) return Domain{};
  const int n = L.n();
  const long base = static_cast<long>(detail::window_offset(L));
  const auto gens = generators(L);
  const long start = base + gens[x].traversal;
  const long end = base + gens[y].traversal + static_cast<long>(gens[x].line - gens[y].line) * n;
  if (end < 0 || end >= static_cast<long>(L.crossings.size()))
    throw Error(ErrorKind::WindowTooSmall, "lift of generator " + std::to_string(y) + " outside the window");

  const std::vector<Point> poly = detail::subarc_polygon(L, static_cast<std::size_t>(start), static_cast<std::size_t>(end));
  const int orient = opt.direction == Direction::LeavesAlongBeta ? 1 : -1;

  Domain D;
  int n_w = orient * detail::weighted_count(L, L.diagram.w(), poly);
  int n_z = orient * detail::weighted_count(L, L.diagram.z(), poly);
  D.euler_quarters = orient * detail::turning_quarters(poly);
  D.corner_quarters = orient * (detail::corner_quarter_windings(L, x, poly) + detail::corner_quarter_windings(L, y, poly));
  int quarters = D.euler_quarters + D.corner_quarters;
  if (quarters % 4 != 0) throw Error(ErrorKind::GradingInconsistent, "domain has fractional Maslov index");
  // Subtract n_w copies of the torus: each has n_w = n_z = 1 and Maslov index 2.
  D.n_w = 0;
  D.n_z = n_z - n_w;
  D.maslov_index = quarters / 4 - 2 * n_w;
  return D;
}

/// Relative gradings (A(x) - A(y), M(x) - M(y)) carried by domain_between.
inline std::pair<int, int> relative_grading(const LiftedDiagram& L, int x, int y, const EngineOptions& opt = {}) {
  Domain D = domain_between(L, x, y, opt);
  return {D.n_z, D.maslov_index};
}

/// The filtered complex of the diagram: one generator per intersection point,
/// one term per bigon class, gradings normalized.
struct EngineResult {
  LiftedDiagram lifted;
  std::vector<BigonClass> bigons;
  FilteredComplex complex;
};

inline std::string generator_name(int k) { return "g" + std::to_string(k); }

inline FilteredComplex build_cfk(const LiftedDiagram& L, const std::vector<BigonClass>& classes,
                                 const EngineOptions& opt = {}) {
  FilteredComplex c;
  c.name = L.diagram.name();
  for (int k = 0; k < L.n(); ++k) c.generators.push_back(ComplexGenerator{generator_name(k), std::nullopt, std::nullopt});
  std::map<std::tuple<int, int, int, int>, int> coefficient;
  for (const auto& b : classes) coefficient[{b.from, b.to, b.n_w, b.n_z}] += b.sign;
  for (const auto& [k, coef] : coefficient) {
    if (coef == 0) continue;
    auto [from, to, n_w, n_z] = k;
    c.terms.push_back(Term{static_cast<std::size_t>(from), static_cast<std::size_t>(to), n_w, n_z, coef});
  }
  require_d_squared_zero(c);
  return normalize_gradings(std::move(c), [&](std::size_t i, std::size_t j) {
    return relative_grading(L, static_cast<int>(i), static_cast<int>(j), opt);
  });
}

inline EngineResult run_engine(const Diagram11& d, const EngineOptions& opt = {}) {
  StableBigons sb = stable_bigons(d, opt);
  FilteredComplex c = build_cfk(sb.lifted, sb.classes, opt);
  return EngineResult{std::move(sb.lifted), std::move(sb.classes), std::move(c)};
}

}  // namespace elevenfloer
