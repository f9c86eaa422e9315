#pragma once

#include <map>
#include <optional>
#include <string>

#include "elevenfloer/catalog_data.hpp"
#include "elevenfloer/diagram.hpp"
#include "elevenfloer/pretzel.hpp"

namespace elevenfloer::catalog {

inline DiagramDescription unknot() {
  DiagramDescription d;
  d.name = "unknot";
  d.n = 1;
  d.arcs = {{{0, Boundary::Bottom}, {0, Boundary::Top}}};
  d.w = {0, Side::Below};
  d.z = {0, Side::Above};
  return d;
}

/// One bottom cap pushed across alpha: three generators, two cancelling bigons.
inline DiagramDescription unknot_finger() {
  DiagramDescription d;
  d.name = "unknot-finger";
  d.n = 3;
  d.arcs = {{{0, Boundary::Bottom}, {2, Boundary::Top}},
            {{1, Boundary::Bottom}, {2, Boundary::Bottom}},
            {{0, Boundary::Top}, {1, Boundary::Top}}};
  d.w = {0, Side::Above};
  d.z = {0, Side::Below};
  return d;
}

/// The finger diagram with the basepoints separated by the finger.
inline DiagramDescription trefoil() {
  DiagramDescription d = unknot_finger();
  d.name = "trefoil";
  d.w = {0, Side::Below};
  d.z = {1, Side::Above};
  return d;
}

inline std::map<std::string, DiagramDescription> builtin_diagrams() {
  std::map<std::string, DiagramDescription> out;
  for (const DiagramDescription& d : {unknot(), unknot_finger(), trefoil()}) out.emplace(d.name, d);
  for (auto [m, n] : {std::pair{5, 5}, {7, 5}, {7, 7}, {9, 5}}) {
    DiagramDescription d = pretzel::build_diagram(m, n);
    d.name = "pretzel-" + std::to_string(m) + "-" + std::to_string(n);
    out.emplace(d.name, d);
  }
  return out;
}

inline std::optional<DiagramDescription> builtin_diagram(const std::string& name) {
  auto all = builtin_diagrams();
  auto it = all.find(name);
  if (it == all.end()) return std::nullopt;
  return it->second;
}

}  // namespace elevenfloer::catalog
