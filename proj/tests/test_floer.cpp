#include <gtest/gtest.h>

#include <regex>

#include "elevenfloer/catalog.hpp"
#include "elevenfloer/cover.hpp"
#include "elevenfloer/floer.hpp"
#include "elevenfloer/invariants.hpp"
#include "elevenfloer/render.hpp"
#include "support.hpp"

using namespace elevenfloer;

namespace {

HfkTable table_of(const FilteredComplex& c) { return hfk_table(homology(c), c.name); }

// (A, M) -> (-A, -M): the table of the mirror knot
BigradedHomology mirrored(const BigradedHomology& h) {
  BigradedHomology out;
  for (const auto& [k, g] : h.groups) out.groups[{-k.first, -k.second}] = g;
  return out;
}

std::int64_t orient(Point a, Point b, Point c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool on_segment(Point a, Point b, Point p) {
  return orient(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_meet(Point a, Point b, Point c, Point d) {
  auto sgn = [](std::int64_t v) { return (v > 0) - (v < 0); };
  int o1 = sgn(orient(a, b, c)), o2 = sgn(orient(a, b, d)), o3 = sgn(orient(c, d, a)), o4 = sgn(orient(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) || (o3 == 0 && on_segment(c, d, a)) ||
         (o4 == 0 && on_segment(c, d, b));
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cover, UnknotIsAMonotoneStaircase) {
  LiftedDiagram L = route(validate(catalog::unknot()), 2);
  for (std::size_t i = 0; i + 1 < L.beta.size(); ++i) EXPECT_GE(L.beta[i + 1].y, L.beta[i].y);
  std::map<int, int> per_line;
  for (const auto& c : L.crossings) per_line[c.line]++;
  for (const auto& [line, k] : per_line) EXPECT_EQ(k, 1) << "line " << line;
}

TEST(Cover, OneCapMakesOneExcursion) {
  Diagram11 d = validate(catalog::unknot_finger());
  int ups = 0, downs = 0;
  for (const Crossing& c : d.crossings()) (c.direction > 0 ? ups : downs)++;
  EXPECT_EQ(ups, 2);
  EXPECT_EQ(downs, 1);
}

TEST(Cover, WindowTooSmall) {
  try {
    route(validate(catalog::unknot()), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WindowTooSmall);
  }
}

TEST(Cover, WindingNumber) {
  std::vector<Point> square{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  EXPECT_EQ(winding_number(square, {2, 2}), 1);
  EXPECT_EQ(winding_number(square, {6, 2}), 0);
  std::reverse(square.begin(), square.end());
  EXPECT_EQ(winding_number(square, {2, 2}), -1);
}

TEST(Cover, PretzelDiagramHasThirteenCrossingsPerPeriod) {
  Diagram11 d = validate(catalog::builtin_diagram("pretzel-5-5").value());
  EXPECT_EQ(d.crossings().size(), 13u);
  LiftedDiagram L = route(d, 2);
  EXPECT_EQ(generators(L).size(), 13u);
}

TEST(Cover, BetaIsContinuousAcrossPeriods) {
  for (const Diagram11& base : testsupport::random_valid_diagrams(20, 40, 10)) {
    for (const Diagram11& d : {base, validate(reflect(base.description()))}) {
      LiftedDiagram L = route(d, 2);
      const std::int64_t dx = kXScale * d.period_shift();
      for (std::size_t k = 0; k + d.n() < L.crossings.size(); ++k) {
        Point a = L.beta[L.crossings[k].vertex], b = L.beta[L.crossings[k + d.n()].vertex];
        ASSERT_EQ(b.x - a.x, dx) << d.name();
        ASSERT_EQ(b.y - a.y, L.spacing) << d.name();
      }
      for (std::size_t i = 0; i + 1 < L.beta.size(); ++i)
        ASSERT_TRUE(L.beta[i].x == L.beta[i + 1].x || L.beta[i].y == L.beta[i + 1].y ||
                    (L.beta[i].y % L.spacing != 0 && L.beta[i + 1].y % L.spacing != 0))
            << d.name() << " jumps at vertex " << i;
    }
  }
}

TEST(Cover, BetaIsEmbeddedAndAvoidsBasepoints) {
  std::vector<Diagram11> all;
  for (const Diagram11& d : testsupport::random_valid_diagrams(21, 25, 8)) {
    all.push_back(d);
    all.push_back(validate(reflect(d.description())));
  }
  for (const Diagram11& d : all) {
    LiftedDiagram L = route(d, 2);
    const auto& b = L.beta;
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
      for (std::size_t j = i + 2; j + 1 < b.size(); ++j)
        ASSERT_FALSE(segments_meet(b[i], b[i + 1], b[j], b[j + 1])) << d.name() << " segments " << i << ", " << j;
    for (const Basepoint& bp : {d.w(), d.z()})
      for (const Point& p : L.basepoint_lifts(bp, {L.beta.front().x - 100, L.beta.front().y - 100},
                                              {L.beta.back().x + 100, L.beta.back().y + 100}))
        for (std::size_t i = 0; i + 1 < b.size(); ++i) ASSERT_FALSE(on_segment(b[i], b[i + 1], p)) << d.name();
    // crossings of horizontal lines happen only at marked points
    std::set<std::pair<std::int64_t, std::int64_t>> marked;
    for (const auto& c : L.crossings) marked.insert({kXScale * c.x, L.spacing * c.line});
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      if (b[i].y == b[i + 1].y) {
        EXPECT_NE(b[i].y % L.spacing, 0) << "beta runs along an alpha line";
        continue;
      }
      std::int64_t lo = std::min(b[i].y, b[i + 1].y), hi = std::max(b[i].y, b[i + 1].y);
      for (std::int64_t y = LiftedDiagram::floor_div(lo, L.spacing) * L.spacing; y <= hi; y += L.spacing) {
        if (y <= lo || y >= hi) continue;
        FAIL() << "segment crosses a line away from its endpoints";
      }
    }
  }
}

TEST(Bigons, UnknotHasNone) {
  EngineResult r = run_engine(validate(catalog::unknot()));
  EXPECT_TRUE(r.bigons.empty());
  EXPECT_EQ(r.complex.size(), 1u);
  EXPECT_EQ(tau(r.complex), 0);
}

TEST(Bigons, FingerCancels) {
  EngineResult r = run_engine(validate(catalog::unknot_finger()));
  ASSERT_EQ(r.bigons.size(), 2u);
  EXPECT_EQ(r.bigons[0].sign + r.bigons[1].sign, 0);
  // z sits in exactly one of the two bigons
  EXPECT_EQ(r.bigons[0].n_w + r.bigons[1].n_w, 0);
  EXPECT_EQ(r.bigons[0].n_z + r.bigons[1].n_z, 1);
  HfkTable t = table_of(r.complex);
  EXPECT_EQ(t.genus, 0);
  EXPECT_EQ(t.to_homology().total_rank(), 1);
  EXPECT_EQ(tau(r.complex), 0);
}

TEST(Bigons, FingerBruteForce) {
  // every pair of crossings on a common line, tested directly for a clean bigon
  Diagram11 d = validate(catalog::unknot_finger());
  LiftedDiagram L = route(d, 3);
  std::set<std::pair<int, int>> expected;
  const long base = static_cast<long>(L.periods) * L.n();
  for (long p = base; p < base + L.n(); ++p)
    for (long q = 0; q < static_cast<long>(L.crossings.size()); ++q) {
      if (p == q || L.crossings[p].line != L.crossings[q].line) continue;
      long lo = std::min(p, q), hi = std::max(p, q);
      auto poly = std::vector<Point>(L.beta.begin() + L.crossings[lo].vertex, L.beta.begin() + L.crossings[hi].vertex + 1);
      Point a = poly.front(), b = poly.back();
      bool clean = true;
      for (std::size_t i = 0; i + 1 < poly.size() && clean; ++i)
        for (const Point& e : {poly[i], poly[i + 1]})
          if (e.y == a.y && std::min(a.x, b.x) < e.x && e.x < std::max(a.x, b.x)) clean = false;
      // convex corners: beta leaves both corners on the same side of the line
      Point after_a = poly[1], before_b = poly[poly.size() - 2];
      if ((after_a.y > a.y) != (before_b.y > a.y)) clean = false;
      int inside = 0;
      for (long r = lo + 1; r < hi; ++r)
        if (L.crossings[r].line == L.crossings[p].line) ++inside;
      if (clean && inside == 0) expected.insert({L.crossings[p].generator, L.crossings[q].generator});
    }
  std::set<std::pair<int, int>> found;
  for (const auto& b : bigons(L)) found.insert({std::min(b.from, b.to), std::max(b.from, b.to)});
  std::set<std::pair<int, int>> normalized;
  for (auto [x, y] : expected) normalized.insert({std::min(x, y), std::max(x, y)});
  EXPECT_EQ(found, normalized);
  EXPECT_EQ(found.size(), 2u);
}

TEST(Bigons, ImmersedLuneClosesTheDifferential) {
  // one through arc and deeply nested caps; beta doubles back across alpha
  DiagramDescription d;
  d.n = 9;
  using B = Boundary;
  d.arcs = {{{0, B::Bottom}, {16, B::Top}}, {{1, B::Bottom}, {8, B::Bottom}}, {{1, B::Top}, {6, B::Top}},
            {{2, B::Bottom}, {3, B::Bottom}}, {{2, B::Top}, {5, B::Top}},   {{3, B::Top}, {4, B::Top}},
            {{4, B::Bottom}, {7, B::Bottom}}, {{5, B::Bottom}, {6, B::Bottom}}, {{8, B::Top}, {9, B::Top}}};
  d.w = {7, Side::Above};
  d.z = {0, Side::Below};
  EngineResult r = run_engine(validate(d));
  int immersed = 0;
  for (const auto& b : r.bigons) {
    const std::int64_t y = b.boundary.front().y;
    for (const Point& p : b.boundary)
      if (p.y == y && kXScale * b.left_x < p.x && p.x < kXScale * b.right_x) {
        ++immersed;
        EXPECT_EQ(b.n_w + b.n_z, 1);
        break;
      }
  }
  EXPECT_GE(immersed, 1);
  EXPECT_FALSE(verify_d_squared(r.complex).has_value());
  auto hat = graded_homology(hat_complex(r.complex));
  std::erase_if(hat, [](const auto& kv) { return kv.second.rank == 0; });
  ASSERT_EQ(hat.size(), 1u);
  EXPECT_EQ(hat.begin()->first, 0);
}

TEST(Bigons, TrefoilAndItsMirror) {
  EngineResult r = run_engine(validate(catalog::trefoil()));
  HfkTable t = table_of(r.complex);
  EXPECT_EQ(t.genus, 1);
  EXPECT_EQ(t.to_homology().total_rank(), 3);
  EXPECT_EQ(tau(r.complex), -1);

  EngineResult m = run_engine(validate(reflect(catalog::trefoil())));
  EXPECT_EQ(tau(m.complex), 1);
  EXPECT_EQ(homology(m.complex), mirrored(homology(r.complex)));
}

TEST(Bigons, ReflectionFlipsEverySign) {
  for (const Diagram11& d : testsupport::random_valid_diagrams(22, 30, 10)) {
    EngineResult a = run_engine(d);
    EngineResult b = run_engine(validate(reflect(d.description())));
    std::multiset<std::tuple<int, int, int>> sa, sb;
    for (const auto& x : a.bigons) sa.insert({x.n_w, x.n_z, x.sign});
    for (const auto& x : b.bigons) sb.insert({x.n_w, x.n_z, -x.sign});
    EXPECT_EQ(sa.size(), sb.size()) << d.name();
    EXPECT_EQ(homology(b.complex), mirrored(homology(a.complex))) << d.name();
    EXPECT_EQ(tau(b.complex), -tau(a.complex)) << d.name();
  }
}

TEST(Bigons, SwappingBasepointsKeepsHomology) {
  for (const Diagram11& d : testsupport::random_valid_diagrams(23, 30, 10)) {
    BigradedHomology a = homology(run_engine(d).complex);
    BigradedHomology b = homology(run_engine(mirror_swap_basepoints(d)).complex);
    EXPECT_EQ(a, b) << d.name();
  }
}

TEST(Bigons, WindowStability) {
  for (const Diagram11& d : testsupport::random_valid_diagrams(24, 30, 12)) {
    StableBigons s = stable_bigons(d);
    LiftedDiagram bigger = route(d, 2 * s.lifted.periods);
    std::vector<std::tuple<int, int, int, int, int>> k1, k2;
    for (const auto& b : s.classes) k1.push_back(b.key());
    for (const auto& b : bigons(bigger)) k2.push_back(b.key());
    EXPECT_EQ(k1, k2) << d.name();
  }
}

TEST(Bigons, WindowLimitFromEnvironment) {
  setenv("ELEVENFLOER_WINDOW_LIMIT", "0", 1);
  EngineOptions opt = EngineOptions::from_environment();
  EXPECT_EQ(opt.max_doublings, 0);
  unsetenv("ELEVENFLOER_WINDOW_LIMIT");
  EXPECT_EQ(EngineOptions::from_environment().max_doublings, 6);
  // with no doublings allowed, stability can never be confirmed
  try {
    stable_bigons(validate(catalog::unknot_finger()), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WindowUnstable);
  }
}

TEST(Domains, SelfDomainIsZero) {
  LiftedDiagram L = route(validate(catalog::trefoil()), 3);
  Domain D = domain_between(L, 1, 1);
  EXPECT_EQ(D.n_z, 0);
  EXPECT_EQ(D.maslov_index, 0);
}

TEST(Domains, BigonDomainHasIndexOne) {
  for (const Diagram11& d : testsupport::random_valid_diagrams(25, 30, 10)) {
    StableBigons s = stable_bigons(d);
    for (const auto& b : s.classes) {
      if (b.n_w != 0) continue;
      Domain D = domain_between(s.lifted, b.from, b.to);
      EXPECT_EQ(D.maslov_index, 1) << d.name();
      EXPECT_EQ(D.n_z, b.n_z) << d.name();
    }
  }
}

TEST(Domains, AgreeWithNormalizedGradings) {
  for (const Diagram11& d : testsupport::random_valid_diagrams(26, 20, 10)) {
    EngineResult r = run_engine(d);
    const FilteredComplex& c = r.complex;
    for (std::size_t x = 0; x < c.size(); ++x)
      for (std::size_t y = 0; y < c.size(); ++y) {
        auto [da, dm] = relative_grading(r.lifted, static_cast<int>(x), static_cast<int>(y));
        EXPECT_EQ(da, c.alexander(x) - c.alexander(y)) << d.name();
        EXPECT_EQ(dm, c.maslov(x) - c.maslov(y)) << d.name();
      }
  }
}

TEST(Properties, RandomDiagrams) {
  std::vector<Diagram11> diagrams;
  for (const Diagram11& d : testsupport::random_valid_diagrams(27, 150, 12)) {
    diagrams.push_back(d);
    diagrams.push_back(validate(reflect(d.description())));
  }
  ASSERT_GE(diagrams.size(), 200u);
  std::set<int> sizes;
  for (const Diagram11& d : diagrams) {
    sizes.insert(d.n());
    EngineResult r = run_engine(d);
    const FilteredComplex& c = r.complex;
    EXPECT_FALSE(verify_d_squared(c).has_value()) << d.name();
    for (const Term& t : c.terms) {
      EXPECT_TRUE(t.sign == 1 || t.sign == -1) << d.name();
      EXPECT_EQ(c.maslov(t.from) - c.maslov(t.to) + 2 * t.n_w, 1) << d.name();
    }
    auto hat = graded_homology(hat_complex(c));
    ASSERT_EQ(hat.size(), 1u) << d.name();
    EXPECT_EQ(hat.begin()->first, 0);
    EXPECT_EQ(hat.begin()->second, (Group{1, {}}));
    BigradedHomology h = homology(c);
    EXPECT_TRUE(h.torsion_free()) << d.name();
    EXPECT_FALSE(symmetry_violation(h).has_value()) << d.name();
    auto poly = euler_poly(h);
    EXPECT_TRUE(laurent_symmetric(poly)) << d.name();
    EXPECT_EQ(std::llabs(evaluate_at_one(poly)), 1) << d.name();
    int t = tau(c);
    EXPECT_LE(std::abs(t), table_of(c).genus) << d.name();
    std::map<std::pair<int, int>, int> ranks;
    for (const auto& [k, g] : h.groups) ranks[k] = static_cast<int>(g.rank);
    EXPECT_EQ(testsupport::graded_dims_mod_p(c, 3), ranks) << d.name();
  }
  EXPECT_GE(sizes.size(), 6u);
}

TEST(Render, UnknotOneLabelPerLine) {
  LiftedDiagram L = route(validate(catalog::unknot()), 2);
  std::string svg = render_svg(L);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(count(svg, "class=\"label\""), count(svg, "class=\"alpha\""));
  EXPECT_EQ(count(svg, "class=\"beta\""), 1u);
  EXPECT_GT(count(svg, "basepoint w"), 0u);
  EXPECT_GT(count(svg, "basepoint z"), 0u);
}

TEST(Render, PretzelLabelsThirteenGenerators) {
  EngineResult r = run_engine(validate(catalog::builtin_diagram("pretzel-5-5").value()));
  std::string svg = render_svg(r.lifted);
  std::set<std::string> labels;
  std::regex label(">(g[0-9]+)</text>");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), label); it != std::sregex_iterator(); ++it)
    labels.insert((*it)[1]);
  EXPECT_EQ(labels.size(), 13u);
  EXPECT_EQ(count(svg, "class=\"generator canonical\""), 13u);
}

TEST(Render, HighlightIsOneTwoCornerPolygon) {
  EngineResult r = run_engine(validate(catalog::unknot_finger()));
  ASSERT_FALSE(r.bigons.empty());
  const BigonClass& b = r.bigons.front();
  std::string svg = render_svg(r.lifted, {b});
  EXPECT_EQ(count(svg, "<polygon"), 1u);
  // the two corners are the only boundary points on the alpha line
  int on_line = 0;
  for (const Point& p : b.boundary) on_line += p.y == b.boundary.front().y;
  EXPECT_EQ(on_line, 2);
  EXPECT_EQ(b.boundary.front().y, b.boundary.back().y);
}

TEST(Render, Deterministic) {
  EngineResult r = run_engine(validate(catalog::trefoil()));
  EXPECT_EQ(render_svg(r.lifted, r.bigons), render_svg(r.lifted, r.bigons));
}
