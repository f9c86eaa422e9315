#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "elevenfloer/cover.hpp"
#include "elevenfloer/floer.hpp"

namespace elevenfloer {

namespace detail {

struct SvgFrame {
  std::int64_t x0, x1, y0, y1;  // plane bounds, y up

  std::int64_t sx(std::int64_t x) const { return x - x0; }
  std::int64_t sy(std::int64_t y) const { return y1 - y; }
};

inline void svg_points(std::ostream& os, const SvgFrame& f, const std::vector<Point>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << f.sx(pts[i].x) << ',' << f.sy(pts[i].y);
}

}  // namespace detail

/// Standalone SVG of the lifted window: alpha lines, the beta lift, labeled
/// intersection points, both basepoint lattices and any highlighted bigons.
/// Integer coordinates only, so the output is byte-stable.
inline std::string render_svg(const LiftedDiagram& L, const std::vector<BigonClass>& highlights = {}) {
  const std::int64_t margin = 2 * kXScale;
  Point lo = L.beta.front(), hi = L.beta.front();
  detail::bounding_box(L.beta, lo, hi);
  lo.y = std::min<std::int64_t>(lo.y, L.spacing * L.min_line);
  hi.y = std::max<std::int64_t>(hi.y, L.spacing * L.max_line);
  detail::SvgFrame f{lo.x - margin, hi.x + margin, lo.y - margin, hi.y + margin};
  const std::int64_t width = f.x1 - f.x0, height = f.y1 - f.y0;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << ' ' << height << "\" width=\""
     << 4 * width << "\" height=\"" << 4 * height << "\">\n";
  os << "<title>" << (L.diagram.name().empty() ? "diagram" : L.diagram.name()) << "</title>\n";
  os << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";

  for (const BigonClass& b : highlights) {
    os << "<polygon class=\"bigon\" fill=\"#f4c542\" fill-opacity=\"0.5\" stroke=\"none\" data-from=\""
       << generator_name(b.from) << "\" data-to=\"" << generator_name(b.to) << "\" points=\"";
    detail::svg_points(os, f, b.boundary);
    os << "\"/>\n";
  }

  for (int line = L.min_line; line <= L.max_line; ++line) {
    const std::int64_t y = f.sy(L.spacing * line);
    os << "<line class=\"alpha\" x1=\"0\" y1=\"" << y << "\" x2=\"" << width << "\" y2=\"" << y
       << "\" stroke=\"#c0392b\" stroke-width=\"0.5\"/>\n";
  }

  os << "<polyline class=\"beta\" fill=\"none\" stroke=\"#2c3e50\" stroke-width=\"0.5\" points=\"";
  detail::svg_points(os, f, L.beta);
  os << "\"/>\n";

  struct Lattice {
    const char* name;
    const char* colour;
    Basepoint point;
  };
  for (const Lattice& lat : {Lattice{"w", "#2980b9", L.diagram.w()}, Lattice{"z", "#27ae60", L.diagram.z()}})
    for (const Point& p : L.basepoint_lifts(lat.point, {f.x0, f.y0}, {f.x1, f.y1}))
      os << "<circle class=\"basepoint " << lat.name << "\" cx=\"" << f.sx(p.x) << "\" cy=\"" << f.sy(p.y)
         << "\" r=\"1\" fill=\"" << lat.colour << "\"/>\n";

  for (const LiftedCrossing& c : L.crossings) {
    Point p = L.crossing_point(c.x, c.line);
    const bool canonical = c.index >= 0 && c.index < L.n();
    os << "<circle class=\"generator" << (canonical ? " canonical" : "") << "\" cx=\"" << f.sx(p.x) << "\" cy=\""
       << f.sy(p.y) << "\" r=\"0.8\" fill=\"black\"/>\n";
    os << "<text class=\"label\" x=\"" << f.sx(p.x) + 1 << "\" y=\"" << f.sy(p.y) - 1
       << "\" font-size=\"2\">" << generator_name(c.generator) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace elevenfloer
