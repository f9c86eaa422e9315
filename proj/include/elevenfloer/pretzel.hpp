#pragma once

#include <map>
#include <string>
#include <vector>

#include "elevenfloer/complex.hpp"
#include "elevenfloer/diagram.hpp"
#include "elevenfloer/error.hpp"
#include "elevenfloer/invariants.hpp"

namespace elevenfloer::pretzel {

/// Parameters of the pretzel knot P(-2, m, n) with odd m >= n >= 3.
struct Params {
  int m = 0;
  int n = 0;

  int genus() const { return (m + n) / 2; }
  int m_half() const { return (m - 3) / 2; }  // m'
  int n_half() const { return (n - 3) / 2; }  // n'

  // Filtration offsets of the generator list.
  int gamma() const {
    int g = genus();
    return g % 2 != 0 ? 1 - (g - 1) / 2 : 1 - g / 2;
  }
  int delta() const {
    int g = genus();
    return g % 2 != 0 ? (g - 1) / 2 : g / 2 - 1;
  }

  std::string knot_name() const { return "P(-2," + std::to_string(m) + "," + std::to_string(n) + ")"; }

  std::size_t generator_count() const {
    return static_cast<std::size_t>((m - 2) * (n - 2) + 4);
  }
};

inline Params checked_params(int m, int n, int min_n) {
  if (m % 2 == 0 || n % 2 == 0)
    throw Error(ErrorKind::BadParams, "m and n must be odd, got m=" + std::to_string(m) + " n=" + std::to_string(n));
  if (n < min_n || m < n)
    throw Error(ErrorKind::BadParams, "need m >= n >= " + std::to_string(min_n) + ", got m=" + std::to_string(m) +
                                          " n=" + std::to_string(n));
  return Params{m, n};
}

/// Closed-form knot Floer homology of P(-2, m, n), both halves, with tau = -g.
inline HfkTable closed_form(int m, int n) {
  Params p = checked_params(m, n, 3);
  const int g = p.genus();
  HfkTable half;
  half.knot = p.knot_name();
  for (int i = 0; i <= g; ++i) {
    if (i == g || i == g - 1) {
      half.by_alexander[i].push_back(HfkEntry{g + i, 1, {}, false});
    } else if (i == g - 2) {
      continue;
    } else if (g - n <= i && i < g - 2) {
      half.by_alexander[i].push_back(HfkEntry{g - 1 + i, g - 2 - i, {}, false});
    } else if (0 <= i && i < g - n) {
      half.by_alexander[i].push_back(HfkEntry{g - 1 + i, n - 2, {}, false});
    }
  }
  HfkTable t = complete_by_symmetry(std::move(half));
  t.tau = -g;
  return t;
}

/// Generator names used by the oracle: "y1".."y4" and "x{stage},{column}".
inline std::string x_name(int stage, int column) {
  return "x" + std::to_string(stage) + "," + std::to_string(column);
}

/// The filtered complex read off the generator list and the five boundary
/// lemmas for P(-2, m, n), m >= n >= 5, transcribed term by term.
inline FilteredComplex oracle_complex(int m, int n) {
  Params p = checked_params(m, n, 5);
  const int ga = p.gamma();
  const int de = p.delta();
  const int mh = p.m_half();
  const int nh = p.n_half();

  FilteredComplex c;
  c.name = p.knot_name();
  // Offsets (a, b) of [gen; i + a, i + b].
  std::map<std::string, std::pair<int, int>> offset;
  auto add = [&](const std::string& name, int a, int b) {
    offset[name] = {a, b};
    c.generators.push_back(ComplexGenerator{name, b - a, std::nullopt});
  };

  add("y1", ga - 1, de + 1);
  add("y2", ga - 1, de);
  add("y3", de, ga - 1);
  add("y4", de + 1, ga - 1);
  for (int pp = 0; pp <= nh; ++pp)
    for (int q = 0; q <= mh; ++q) add(x_name(2 * pp + 1, 2 * q + 1), ga + pp + q + 1, de - pp - q);
  for (int pp = 0; pp <= nh; ++pp)
    for (int q = 1; q <= mh; ++q) add(x_name(2 * pp + 1, 2 * q), ga + pp + q, de - pp - q);
  for (int pp = 1; pp <= nh; ++pp)
    for (int q = 0; q <= mh; ++q) add(x_name(2 * pp, 2 * q + 1), ga + mh + pp - q, de - mh - pp + q);
  for (int pp = 1; pp <= nh; ++pp)
    for (int q = 1; q <= mh; ++q) add(x_name(2 * pp, 2 * q), ga + mh + pp - q, de - mh - pp + q - 1);

  auto index = [&](const std::string& name) {
    auto i = c.find(name);
    if (!i) throw std::logic_error("oracle references unknown generator " + name);
    return *i;
  };
  // from -> sign * [to; i - n_w, j - n_z]
  auto d = [&](const std::string& from, int sign, const std::string& to, int n_w, int n_z) {
    c.terms.push_back(Term{index(from), index(to), n_w, n_z, sign});
  };
  const int top = m - 2;  // last column
  const int last = n - 2;  // last stage

  // Exceptional generators.
  d("y1", +1, "y2", 0, 1);
  d("y4", -1, "y3", 1, 0);

  // Stage 1.
  d(x_name(1, 1), +1, x_name(2, top), 0, 1);
  d(x_name(1, 1), +1, x_name(1, 2), 0, 1);
  d(x_name(1, 1), -1, "y2", 2, 0);
  for (int l = 1; l <= mh; ++l) d(x_name(1, 2 * l), +1, x_name(2, m - 2 * l - 1), 0, 1);
  for (int l = 1; l <= mh - 1; ++l) {
    d(x_name(1, 2 * l + 1), +1, x_name(2, m - 2 * l - 2), 0, 1);
    d(x_name(1, 2 * l + 1), +1, x_name(1, 2 * l + 2), 0, 1);
    d(x_name(1, 2 * l + 1), -1, x_name(1, 2 * l), 1, 0);
  }
  d(x_name(1, top), +1, x_name(2, 1), 0, 1);
  d(x_name(1, top), -1, x_name(1, m - 3), 1, 0);

  // Stage n - 2.
  d(x_name(last, 1), +1, x_name(last, 2), 0, 1);
  d(x_name(last, 1), -1, x_name(last - 1, top), 1, 0);
  for (int l = 1; l <= mh; ++l) d(x_name(last, 2 * l), -1, x_name(last - 1, m - 2 * l - 1), 1, 0);
  for (int l = 1; l <= mh - 1; ++l) {
    d(x_name(last, 2 * l + 1), -1, x_name(last - 1, m - 2 * l - 2), 1, 0);
    d(x_name(last, 2 * l + 1), -1, x_name(last, 2 * l), 1, 0);
    d(x_name(last, 2 * l + 1), +1, x_name(last, 2 * l + 2), 0, 1);
  }
  d(x_name(last, top), -1, x_name(last - 1, 1), 1, 0);
  d(x_name(last, top), -1, x_name(last, m - 3), 1, 0);
  d(x_name(last, top), +1, "y3", 0, 2);

  // Even stages.
  for (int k = 1; k <= nh; ++k) {
    const int s = 2 * k;
    d(x_name(s, 1), +1, x_name(s, 2), 1, 0);
    for (int l = 1; l <= mh - 1; ++l) {
      d(x_name(s, 2 * l + 1), +1, x_name(s, 2 * l + 2), 1, 0);
      d(x_name(s, 2 * l + 1), -1, x_name(s, 2 * l), 0, 1);
    }
    d(x_name(s, top), -1, x_name(s, m - 3), 0, 1);
  }

  // Odd interior stages.
  for (int k = 1; k <= nh - 1; ++k) {
    const int s = 2 * k + 1;
    d(x_name(s, 1), +1, x_name(s + 1, top), 0, 1);
    d(x_name(s, 1), +1, x_name(s, 2), 0, 1);
    d(x_name(s, 1), -1, x_name(s - 1, top), 1, 0);
    for (int l = 1; l <= mh; ++l) {
      d(x_name(s, 2 * l), +1, x_name(s + 1, m - 2 * l - 1), 0, 1);
      d(x_name(s, 2 * l), -1, x_name(s - 1, m - 2 * l - 1), 1, 0);
    }
    for (int l = 1; l <= mh - 1; ++l) {
      d(x_name(s, 2 * l + 1), +1, x_name(s + 1, m - 2 * l - 2), 0, 1);
      d(x_name(s, 2 * l + 1), +1, x_name(s, 2 * l + 2), 0, 1);
      d(x_name(s, 2 * l + 1), -1, x_name(s - 1, m - 2 * l - 2), 1, 0);
      d(x_name(s, 2 * l + 1), -1, x_name(s, 2 * l), 1, 0);
    }
    d(x_name(s, top), +1, x_name(s + 1, 1), 0, 1);
    d(x_name(s, top), -1, x_name(s, m - 3), 1, 0);
    d(x_name(s, top), -1, x_name(s - 1, 1), 1, 0);
  }

  // The listed offsets must agree with every shift.
  for (const Term& t : c.terms) {
    const auto& [fa, fb] = offset[c.generators[t.from].name];
    const auto& [ta, tb] = offset[c.generators[t.to].name];
    if (fa - ta != t.n_w || fb - tb != t.n_z)
      throw std::logic_error("oracle shift disagrees with generator offsets at " + c.generators[t.from].name);
  }
  return c;
}

/// Genus-1 diagram of P(-2, m, n) in (1,1) normal form: two rainbows of r
/// nested caps, one on each side of the alpha annulus, and m through arcs
/// advancing four slots per pass. w sits inside the top rainbow, z inside the
/// bottom one.
inline DiagramDescription build_diagram(int m, int n) {
  Params p = checked_params(m, n, 5);
  const int total = static_cast<int>(p.generator_count());
  const int through = m;
  const int rainbow = (total - through) / 2;
  const int bottom_centre = 0;
  const int top_centre = total - rainbow - 1;
  const int advance = 4;

  DiagramDescription d;
  d.n = total;
  d.name = p.knot_name();
  for (int i = 0; i < rainbow; ++i) {
    d.arcs.push_back({{bottom_centre - i, Boundary::Bottom}, {bottom_centre + 1 + i, Boundary::Bottom}});
    d.arcs.push_back({{top_centre - i, Boundary::Top}, {top_centre + 1 + i, Boundary::Top}});
  }
  for (int i = 0; i < through; ++i) {
    const int j = (i + advance) % through;
    const int wrap = (i + advance) / through;
    d.arcs.push_back({{bottom_centre + rainbow + 1 + i, Boundary::Bottom},
                      {top_centre + rainbow + 1 + j + wrap * total, Boundary::Top}});
  }
  d.w = {top_centre, Side::Below};
  d.z = {bottom_centre, Side::Above};
  return d;
}

}  // namespace elevenfloer::pretzel
