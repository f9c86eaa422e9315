#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "elevenfloer/complex.hpp"
#include "elevenfloer/diagram.hpp"
#include "elevenfloer/error.hpp"
#include "elevenfloer/invariants.hpp"

namespace elevenfloer::io {

using json = nlohmann::ordered_json;

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "read failed: " + path);
  return ss.str();
}

/// Writes through a temporary file and a rename, so readers never see a partial file.
inline void write_text(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
    out << text;
    if (!out.flush()) throw Error(ErrorKind::Io, "write failed: " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorKind::Io, "cannot rename onto " + path);
}

inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

namespace detail {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::Parse, std::string("bad value for \"") + key + "\"");
  }
}

inline Boundary boundary_from(const json& j) {
  if (j == "bottom") return Boundary::Bottom;
  if (j == "top") return Boundary::Top;
  throw Error(ErrorKind::Parse, "endpoint boundary must be \"bottom\" or \"top\"");
}

inline Endpoint endpoint_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer())
    throw Error(ErrorKind::Parse, "endpoint must be [position, \"bottom\"|\"top\"]");
  return {j[0].get<int>(), boundary_from(j[1])};
}

inline Basepoint basepoint_from(const json& j) {
  Basepoint b;
  b.gap = field<int>(j, "gap");
  auto side = field<std::string>(j, "side");
  if (side == "above")
    b.side = Side::Above;
  else if (side == "below")
    b.side = Side::Below;
  else
    throw Error(ErrorKind::Parse, "basepoint side must be \"above\" or \"below\"");
  return b;
}

inline json endpoint_to(const Endpoint& e) { return json::array({e.position, e.boundary == Boundary::Bottom ? "bottom" : "top"}); }

inline json basepoint_to(const Basepoint& b) {
  json j;
  j["gap"] = b.gap;
  j["side"] = b.side == Side::Above ? "above" : "below";
  return j;
}

}  // namespace detail

inline DiagramDescription diagram_from_json(const json& j) {
  DiagramDescription d;
  d.n = detail::field<int>(j, "n");
  if (!j.contains("arcs") || !j["arcs"].is_array()) throw Error(ErrorKind::Parse, "missing array \"arcs\"");
  for (const json& a : j["arcs"]) {
    if (!a.is_array() || a.size() != 2) throw Error(ErrorKind::Parse, "arc must be a pair of endpoints");
    d.arcs.push_back({detail::endpoint_from(a[0]), detail::endpoint_from(a[1])});
  }
  d.w = detail::basepoint_from(j.contains("w") ? j["w"] : json());
  d.z = detail::basepoint_from(j.contains("z") ? j["z"] : json());
  if (j.contains("name")) d.name = detail::field<std::string>(j, "name");
  return d;
}

inline json diagram_to_json(const DiagramDescription& d) {
  json j;
  if (!d.name.empty()) j["name"] = d.name;
  j["n"] = d.n;
  j["arcs"] = json::array();
  for (const Arc& a : d.arcs) j["arcs"].push_back(json::array({detail::endpoint_to(a.first), detail::endpoint_to(a.second)}));
  j["w"] = detail::basepoint_to(d.w);
  j["z"] = detail::basepoint_to(d.z);
  return j;
}

/// Complex files: {"name", "generators": [{"name", "A"?}], "terms": [{"from", "to", "n_w", "n_z", "sign"}]}.
inline FilteredComplex complex_from_json(const json& j) {
  FilteredComplex c;
  if (j.contains("name")) c.name = detail::field<std::string>(j, "name");
  if (!j.contains("generators") || !j["generators"].is_array()) throw Error(ErrorKind::Parse, "missing array \"generators\"");
  for (const json& g : j["generators"]) {
    ComplexGenerator gen;
    gen.name = detail::field<std::string>(g, "name");
    if (g.contains("A")) gen.alexander = detail::field<int>(g, "A");
    if (c.find(gen.name)) throw Error(ErrorKind::Parse, "duplicate generator " + gen.name);
    c.generators.push_back(std::move(gen));
  }
  if (!j.contains("terms") || !j["terms"].is_array()) throw Error(ErrorKind::Parse, "missing array \"terms\"");
  for (const json& t : j["terms"]) {
    auto lookup = [&](const char* key) {
      auto name = detail::field<std::string>(t, key);
      auto i = c.find(name);
      if (!i) throw Error(ErrorKind::Parse, "unknown generator " + name);
      return *i;
    };
    Term term{lookup("from"), lookup("to"), detail::field<int>(t, "n_w"), detail::field<int>(t, "n_z"),
              detail::field<int>(t, "sign")};
    if (term.n_w < 0 || term.n_z < 0) throw Error(ErrorKind::Parse, "negative filtration shift");
    if (term.sign != 1 && term.sign != -1) throw Error(ErrorKind::Parse, "term sign must be +1 or -1");
    c.terms.push_back(term);
  }
  return c;
}

inline json complex_to_json(const FilteredComplex& c) {
  json j;
  j["name"] = c.name;
  j["generators"] = json::array();
  for (const auto& g : c.generators) {
    json e;
    e["name"] = g.name;
    if (g.alexander) e["A"] = *g.alexander;
    if (g.maslov) e["M"] = *g.maslov;
    j["generators"].push_back(e);
  }
  j["terms"] = json::array();
  for (const Term& t : c.terms) {
    json e;
    e["from"] = c.generators[t.from].name;
    e["to"] = c.generators[t.to].name;
    e["n_w"] = t.n_w;
    e["n_z"] = t.n_z;
    e["sign"] = t.sign;
    j["terms"].push_back(e);
  }
  return j;
}

/// Flat list of groups, highest Alexander grading first.
inline json hfk_to_json(const HfkTable& t, bool flag_derived = false) {
  json out = json::array();
  for (auto it = t.by_alexander.rbegin(); it != t.by_alexander.rend(); ++it)
    for (const HfkEntry& e : it->second) {
      json row;
      row["A"] = it->first;
      row["M"] = e.maslov;
      row["rank"] = e.rank;
      row["torsion"] = e.torsion;
      if (flag_derived) row["symmetry_derived"] = e.symmetry_derived;
      out.push_back(row);
    }
  return out;
}

inline json bounds_to_json(const BoundsReport& b) {
  json j;
  j["tau"] = b.tau;
  j["genus"] = b.genus;
  j["slice_genus_lower"] = b.slice_genus_lower;
  j["unknotting_lower"] = b.unknotting_lower;
  j["sharp"] = b.sharp;
  j["slice_genus"] = b.slice_genus ? json(*b.slice_genus) : json();
  j["unknotting"] = b.unknotting ? json(*b.unknotting) : json();
  j["statements"] = b.statements;
  return j;
}

}  // namespace elevenfloer::io
