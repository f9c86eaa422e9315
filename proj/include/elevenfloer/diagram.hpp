#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "elevenfloer/error.hpp"

namespace elevenfloer {

// Cutting the torus along alpha gives an annulus. Its universal cover is the
// strip R x [0, 1] with marked points (k, bottom) and (k, top) for every
// integer k; marked points are identified modulo n. Regluing top to bottom
// identifies (k, top) with (k, bottom) of the next strip, so the plane is a
// stack of strips and alpha lifts to the horizontal lines between them.

enum class Boundary { Bottom, Top };
enum class Side { Above, Below };

struct Endpoint {
  int position = 0;
  Boundary boundary = Boundary::Bottom;

  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

struct Arc {
  Endpoint first;
  Endpoint second;

  bool through() const { return first.boundary != second.boundary; }
  bool bottom_cap() const { return first.boundary == Boundary::Bottom && second.boundary == Boundary::Bottom; }
  bool top_cap() const { return first.boundary == Boundary::Top && second.boundary == Boundary::Top; }

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Region selector: the region touching the alpha edge between intersection
/// points `gap` and `gap + 1` (mod n), on the given side of alpha.
struct Basepoint {
  int gap = 0;
  Side side = Side::Above;

  friend auto operator<=>(const Basepoint&, const Basepoint&) = default;
};

struct DiagramDescription {
  int n = 0;
  std::vector<Arc> arcs;
  Basepoint w;
  Basepoint z;
  std::string name;

  friend bool operator==(const DiagramDescription&, const DiagramDescription&) = default;
};

/// One step of the beta traversal: an arc placed in a given strip with a given
/// horizontal translation, entered at `entry` and left at `exit`.
struct TraversalStep {
  std::size_t arc = 0;
  int shift = 0;  // horizontal translation, a multiple of n
  int layer = 0;  // strip index; strip `layer` lies between alpha lines layer and layer + 1
  bool reversed = false;  // traversed from `second` to `first`
};

/// A point where beta crosses an alpha line, in traversal order.
struct Crossing {
  int x = 0;          // position on the line
  int line = 0;       // alpha line index
  int direction = 0;  // +1 when beta moves up through the line, -1 when down
};

inline int mod_floor(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

/// Validated and canonicalized diagram with the canonical orientation of beta.
/// Alpha is oriented by increasing position; beta is traversed from the
/// crossing at position 0 on line 0 in the direction that makes it climb by
/// one line per period.
class Diagram11 {
 public:
  const DiagramDescription& description() const { return desc_; }
  int n() const { return desc_.n; }
  const std::vector<Arc>& arcs() const { return desc_.arcs; }
  const Basepoint& w() const { return desc_.w; }
  const Basepoint& z() const { return desc_.z; }
  const std::string& name() const { return desc_.name; }

  /// Arcs of one period of beta, in traversal order.
  const std::vector<TraversalStep>& steps() const { return steps_; }
  /// Crossings of one period: crossing k is where step k is entered.
  const std::vector<Crossing>& crossings() const { return crossings_; }
  /// Horizontal deck translation of one beta period (the vertical part is +1 line).
  int period_shift() const { return period_shift_; }

  friend Diagram11 validate(const DiagramDescription& raw);

 private:
  DiagramDescription desc_;
  std::vector<TraversalStep> steps_;
  std::vector<Crossing> crossings_;
  int period_shift_ = 0;
};

/// Canonical form: every arc lists its bottom endpoint first (for caps, the
/// smaller position first), is translated by a multiple of n so its first
/// endpoint lies in [0, n), and the arcs are sorted.
inline DiagramDescription canonicalize(DiagramDescription d) {
  if (d.n <= 0) return d;
  for (Arc& a : d.arcs) {
    auto key = [](const Endpoint& e) { return std::pair(e.boundary, e.position); };
    if (key(a.second) < key(a.first)) std::swap(a.first, a.second);
    int t = a.first.position - mod_floor(a.first.position, d.n);
    a.first.position -= t;
    a.second.position -= t;
  }
  std::sort(d.arcs.begin(), d.arcs.end());
  d.w.gap = mod_floor(d.w.gap, d.n);
  d.z.gap = mod_floor(d.z.gap, d.n);
  return d;
}

namespace detail {

// Caps on one boundary, translated copies included, must be nested or disjoint;
// through-arc feet may not sit under a cap; through arcs must keep their order.
inline void check_embeddable(const DiagramDescription& d) {
  const int n = d.n;
  auto fail = [&](const std::string& why) { throw Error(ErrorKind::NotEmbeddable, why); };

  struct Interval {
    int lo, hi;
    Boundary b;
  };
  std::vector<Interval> caps;
  std::vector<std::pair<int, int>> throughs;  // (bottom, top)
  for (const Arc& a : d.arcs) {
    if (a.first == a.second) fail("arc with coincident endpoints");
    if (a.through()) {
      const Endpoint& bot = a.first.boundary == Boundary::Bottom ? a.first : a.second;
      const Endpoint& top = a.first.boundary == Boundary::Top ? a.first : a.second;
      throughs.push_back({bot.position, top.position});
    } else {
      int lo = std::min(a.first.position, a.second.position);
      int hi = std::max(a.first.position, a.second.position);
      if (hi - lo >= n) fail("cap spanning a full period meets its own translate");
      caps.push_back({lo, hi, a.first.boundary});
    }
  }

  auto translates = [&](int lo1, int hi1, int lo2, int hi2, auto&& f) {
    // all k such that [lo2 + kn, hi2 + kn] can overlap [lo1, hi1]
    int kmin = (lo1 - hi2) / n - 2;
    int kmax = (hi1 - lo2) / n + 2;
    for (int k = kmin; k <= kmax; ++k) f(k * n);
  };

  for (std::size_t i = 0; i < caps.size(); ++i)
    for (std::size_t j = i; j < caps.size(); ++j) {
      if (caps[i].b != caps[j].b) continue;
      translates(caps[i].lo, caps[i].hi, caps[j].lo, caps[j].hi, [&](int s) {
        if (i == j && s == 0) return;
        int a0 = caps[i].lo, a1 = caps[i].hi, b0 = caps[j].lo + s, b1 = caps[j].hi + s;
        bool interleave = (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1);
        if (interleave)
          fail("caps [" + std::to_string(a0) + "," + std::to_string(a1) + "] and [" + std::to_string(b0) + "," +
               std::to_string(b1) + "] interleave");
      });
    }

  for (const auto& [bot, top] : throughs)
    for (const Interval& c : caps) {
      int foot = c.b == Boundary::Bottom ? bot : top;
      translates(foot, foot, c.lo, c.hi, [&](int s) {
        if (c.lo + s < foot && foot < c.hi + s) fail("through arc foot at " + std::to_string(foot) + " lies under a cap");
      });
    }

  for (std::size_t i = 0; i < throughs.size(); ++i)
    for (std::size_t j = i; j < throughs.size(); ++j) {
      auto [b1, t1] = throughs[i];
      auto [b2, t2] = throughs[j];
      int lo = std::min(b1 - b2, t1 - t2), hi = std::max(b1 - b2, t1 - t2);
      for (int k = lo / n - 2; k <= hi / n + 2; ++k) {
        if (i == j && k == 0) continue;
        long db = b1 - (b2 + k * n), dt = t1 - (t2 + k * n);
        // shared endpoints are left to the residue check
        if (db != 0 && dt != 0 && (db < 0) != (dt < 0)) fail("through arcs cross");
      }
    }
}

inline void check_residues(const DiagramDescription& d) {
  if (static_cast<int>(d.arcs.size()) != d.n)
    throw Error(ErrorKind::ResidueCoverage,
                "expected " + std::to_string(d.n) + " arcs, got " + std::to_string(d.arcs.size()));
  std::vector<int> bottom(d.n, 0), top(d.n, 0);
  for (const Arc& a : d.arcs)
    for (const Endpoint& e : {a.first, a.second}) (e.boundary == Boundary::Bottom ? bottom : top)[mod_floor(e.position, d.n)]++;
  for (int k = 0; k < d.n; ++k) {
    if (bottom[k] != 1)
      throw Error(ErrorKind::ResidueCoverage, "bottom residue " + std::to_string(k) + " used " + std::to_string(bottom[k]) + " times");
    if (top[k] != 1)
      throw Error(ErrorKind::ResidueCoverage, "top residue " + std::to_string(k) + " used " + std::to_string(top[k]) + " times");
  }
}

}  // namespace detail

inline Diagram11 validate(const DiagramDescription& raw) {
  if (raw.n <= 0) throw Error(ErrorKind::ResidueCoverage, "n must be positive");
  DiagramDescription d = canonicalize(raw);
  detail::check_embeddable(d);
  detail::check_residues(d);

  const int n = d.n;
  // arc lookup by (boundary, residue) -> (arc, which endpoint)
  std::vector<std::pair<std::size_t, bool>> at_bottom(n), at_top(n);
  for (std::size_t i = 0; i < d.arcs.size(); ++i) {
    const Arc& a = d.arcs[i];
    for (bool second : {false, true}) {
      const Endpoint& e = second ? a.second : a.first;
      (e.boundary == Boundary::Bottom ? at_bottom : at_top)[mod_floor(e.position, n)] = {i, second};
    }
  }

  // Walk beta upward through the bottom point 0 of strip 0.
  std::vector<TraversalStep> steps;
  std::vector<Crossing> crossings;
  std::vector<bool> seen(n, false);
  Endpoint entry{0, Boundary::Bottom};
  int layer = 0;
  int x = 0;
  Crossing cross{0, 0, +1};
  for (;;) {
    auto [arc_index, is_second] = entry.boundary == Boundary::Bottom ? at_bottom[mod_floor(x, n)] : at_top[mod_floor(x, n)];
    const Arc& a = d.arcs[arc_index];
    const Endpoint& in = is_second ? a.second : a.first;
    const Endpoint& out = is_second ? a.first : a.second;
    int shift = x - in.position;
    if (!steps.empty() && arc_index == steps.front().arc && is_second == steps.front().reversed) {
      // back at the starting arc
      Diagram11 result;
      if (steps.size() != static_cast<std::size_t>(n))
        throw Error(ErrorKind::NotConnected,
                    "beta closes after " + std::to_string(steps.size()) + " of " + std::to_string(n) + " arcs");
      if (layer != 1 && layer != -1)
        throw Error(ErrorKind::NotS3, "algebraic intersection of alpha and beta is " + std::to_string(layer));
      const int translation = shift - steps.front().shift;
      if (layer == 1) {
        result.steps_ = std::move(steps);
        result.crossings_ = std::move(crossings);
        result.period_shift_ = translation;
      } else {
        // Reverse the orientation so beta climbs. The reversed walk starts
        // from the closing crossing, translated back onto crossing 0.
        std::vector<TraversalStep> rs;
        std::vector<Crossing> rc;
        rc.push_back(Crossing{0, 0, -1});
        for (std::size_t k = steps.size(); k-- > 1;)
          rc.push_back(Crossing{crossings[k].x - translation, crossings[k].line + 1, -crossings[k].direction});
        for (std::size_t k = steps.size(); k-- > 0;) {
          TraversalStep s = steps[k];
          s.reversed = !s.reversed;
          s.shift -= translation;
          s.layer += 1;
          rs.push_back(s);
        }
        result.steps_ = std::move(rs);
        result.crossings_ = std::move(rc);
        result.period_shift_ = -translation;
      }
      if (d.w == d.z) throw Error(ErrorKind::BadBasepoint, "w and z select the same region");
      result.desc_ = std::move(d);
      return result;
    }
    if (seen[arc_index] && !steps.empty())
      throw Error(ErrorKind::NotConnected, "beta revisits an arc before closing");
    seen[arc_index] = true;
    steps.push_back(TraversalStep{arc_index, shift, layer, is_second});
    crossings.push_back(cross);

    int ox = out.position + shift;
    if (out.boundary == Boundary::Top) {
      cross = Crossing{ox, layer + 1, +1};
      layer += 1;
      entry = Endpoint{ox, Boundary::Bottom};
    } else {
      cross = Crossing{ox, layer, -1};
      layer -= 1;
      entry = Endpoint{ox, Boundary::Top};
    }
    x = ox;
  }
}

/// Exchanges the basepoints; this reverses the orientation of the knot.
inline Diagram11 mirror_swap_basepoints(const Diagram11& d) {
  DiagramDescription desc = d.description();
  std::swap(desc.w, desc.z);
  return validate(desc);
}

/// Reflects the torus across alpha (top and bottom exchanged); presents the mirror knot.
inline DiagramDescription reflect(DiagramDescription d) {
  auto flip = [](Endpoint& e) { e.boundary = e.boundary == Boundary::Bottom ? Boundary::Top : Boundary::Bottom; };
  for (Arc& a : d.arcs) {
    flip(a.first);
    flip(a.second);
  }
  for (Basepoint* b : {&d.w, &d.z}) b->side = b->side == Side::Above ? Side::Below : Side::Above;
  if (!d.name.empty()) d.name = "mirror(" + d.name + ")";
  return d;
}

}  // namespace elevenfloer
