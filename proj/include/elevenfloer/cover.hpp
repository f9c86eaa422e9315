#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "elevenfloer/diagram.hpp"
#include "elevenfloer/error.hpp"

namespace elevenfloer {

/// Exact planar coordinates. Positions are scaled by kXScale so basepoints at
/// half-integer positions stay on the lattice; alpha line k sits at y = k * spacing.
struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
};

inline constexpr std::int64_t kXScale = 4;
inline constexpr std::int64_t kUnit = 4;

/// A crossing of the lifted beta with an alpha line inside the window.
struct LiftedCrossing {
  long index = 0;       // position along beta: period * n + k
  int generator = 0;    // k = x mod n
  int x = 0;            // position on the line (unscaled)
  int line = 0;
  int direction = 0;    // +1 up, -1 down, along the canonical beta orientation
  std::size_t vertex = 0;  // index into LiftedDiagram::beta
};

/// Winding number of a closed polygon around a point not on it.
inline int winding_number(const std::vector<Point>& poly, Point p) {
  int wn = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    __int128 cross = static_cast<__int128>(b.x - a.x) * (p.y - a.y) - static_cast<__int128>(p.x - a.x) * (b.y - a.y);
    if (a.y <= p.y) {
      if (b.y > p.y && cross > 0) ++wn;
    } else {
      if (b.y <= p.y && cross < 0) --wn;
    }
  }
  return wn;
}

/// Planar realization of a diagram in the universal cover of the torus.
struct LiftedDiagram {
  Diagram11 diagram;
  int periods = 0;              // beta is realized over periods [-periods, periods]
  int cap_levels = 0;           // deepest cap nesting
  std::int64_t spacing = 0;     // vertical distance between alpha lines
  std::vector<Point> beta;      // polyline vertices in traversal order
  std::vector<LiftedCrossing> crossings;
  std::vector<int> cap_depth;   // per arc; 0 for through arcs
  int min_line = 0, max_line = 0;
  int min_x = 0, max_x = 0;

  int n() const { return diagram.n(); }

  Point crossing_point(int x, int line) const { return {kXScale * x, spacing * line}; }

  /// Base point of the w or z lattice; all lifts are base + (kXScale * n * s, spacing * t).
  Point basepoint(const Basepoint& b) const {
    return {kXScale * b.gap + kXScale / 2, b.side == Side::Above ? 1 : -1};
  }

  /// Lattice lifts of a basepoint with coordinates inside [lo, hi].
  std::vector<Point> basepoint_lifts(const Basepoint& b, Point lo, Point hi) const {
    std::vector<Point> out;
    Point base = basepoint(b);
    const std::int64_t dx = kXScale * n();
    for (std::int64_t line = floor_div(lo.y - base.y, spacing); base.y + line * spacing <= hi.y; ++line) {
      std::int64_t y = base.y + line * spacing;
      if (y < lo.y) continue;
      for (std::int64_t s = floor_div(lo.x - base.x, dx); base.x + s * dx <= hi.x; ++s) {
        std::int64_t x = base.x + s * dx;
        if (x >= lo.x) out.push_back({x, y});
      }
    }
    return out;
  }

  static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
};

namespace detail {

inline std::vector<int> cap_depths(const Diagram11& d) {
  const int n = d.n();
  const auto& arcs = d.arcs();
  std::vector<int> depth(arcs.size(), 0);
  struct Cap {
    std::size_t arc;
    int lo, hi;
    Boundary b;
  };
  std::vector<Cap> caps;
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (!arcs[i].through())
      caps.push_back({i, std::min(arcs[i].first.position, arcs[i].second.position),
                      std::max(arcs[i].first.position, arcs[i].second.position), arcs[i].first.boundary});
  // Shorter caps first: anything nested inside a cap is shorter than it.
  std::sort(caps.begin(), caps.end(), [](const Cap& a, const Cap& b) { return a.hi - a.lo < b.hi - b.lo; });
  for (std::size_t i = 0; i < caps.size(); ++i) {
    int inner = 0;
    for (std::size_t j = 0; j < i; ++j) {
      if (caps[j].b != caps[i].b) continue;
      for (int k = (caps[i].lo - caps[j].hi) / n - 1; k <= (caps[i].hi - caps[j].lo) / n + 1; ++k) {
        int lo = caps[j].lo + k * n, hi = caps[j].hi + k * n;
        if (caps[i].lo < lo && hi < caps[i].hi) inner = std::max(inner, depth[caps[j].arc]);
      }
    }
    depth[caps[i].arc] = inner + 1;
  }
  return depth;
}

}  // namespace detail

/// Realizes the lifted beta over periods [-periods, periods]. Caps become
/// three-segment hooks whose height grows with nesting depth; through arcs
/// rise vertically, cross the middle band diagonally and rise again.
inline LiftedDiagram route(const Diagram11& d, int periods) {
  if (periods < 1) throw Error(ErrorKind::WindowTooSmall, "need at least one period of margin on each side");
  LiftedDiagram L;
  L.diagram = d;
  L.periods = periods;
  L.cap_depth = detail::cap_depths(d);
  L.cap_levels = *std::max_element(L.cap_depth.begin(), L.cap_depth.end());
  L.spacing = kUnit * (2 * static_cast<std::int64_t>(L.cap_levels) + 4);
  const std::int64_t foot = kUnit * (L.cap_levels + 1);
  const int n = d.n();

  auto arc_points = [&](const TraversalStep& s, int shift, int layer) {
    const Arc& a = d.arcs()[s.arc];
    std::int64_t y0 = L.spacing * layer;
    std::int64_t p1 = kXScale * (a.first.position + shift);
    std::int64_t p2 = kXScale * (a.second.position + shift);
    std::vector<Point> pts;
    if (a.through()) {
      // canonical arcs list the bottom endpoint first
      pts = {{p1, y0}, {p1, y0 + foot}, {p2, y0 + L.spacing - foot}, {p2, y0 + L.spacing}};
    } else if (a.bottom_cap()) {
      std::int64_t h = y0 + kUnit * L.cap_depth[s.arc];
      pts = {{p1, y0}, {p1, h}, {p2, h}, {p2, y0}};
    } else {
      std::int64_t h = y0 + L.spacing - kUnit * L.cap_depth[s.arc];
      pts = {{p1, y0 + L.spacing}, {p1, h}, {p2, h}, {p2, y0 + L.spacing}};
    }
    if (s.reversed) std::reverse(pts.begin(), pts.end());
    return pts;
  };

  L.min_line = L.max_line = 0;
  L.min_x = L.max_x = 0;
  bool first = true;
  for (int t = -periods; t <= periods; ++t) {
    for (int k = 0; k < n; ++k) {
      const TraversalStep& s = d.steps()[k];
      const Crossing& c = d.crossings()[k];
      int shift = s.shift + t * d.period_shift();
      int layer = s.layer + t;
      std::vector<Point> pts = arc_points(s, shift, layer);
      if (!L.beta.empty()) pts.erase(pts.begin());  // shared with the previous arc
      LiftedCrossing lc;
      lc.index = static_cast<long>(t) * n + k;
      lc.x = c.x + t * d.period_shift();
      lc.line = c.line + t;
      lc.generator = mod_floor(lc.x, n);
      lc.direction = c.direction;
      lc.vertex = first ? 0 : L.beta.size() - 1;
      L.crossings.push_back(lc);
      L.beta.insert(L.beta.end(), pts.begin(), pts.end());
      L.min_line = first ? lc.line : std::min(L.min_line, lc.line);
      L.max_line = first ? lc.line : std::max(L.max_line, lc.line);
      L.min_x = first ? lc.x : std::min(L.min_x, lc.x);
      L.max_x = first ? lc.x : std::max(L.max_x, lc.x);
      first = false;
    }
  }
  return L;
}

/// Number of lines one period of beta spans; used to size the default window.
inline int period_line_span(const Diagram11& d) {
  int lo = 0, hi = 0;
  for (const Crossing& c : d.crossings()) {
    lo = std::min(lo, c.line);
    hi = std::max(hi, c.line);
  }
  return hi - lo + 1;
}

}  // namespace elevenfloer
