// JSON interchange for fans, trees, cycles, degeneration families, and
// arrangements. Rationals travel as "p/q" strings in lowest terms (plain "p"
// when integral); fans are emitted in canonical form, rays sorted and cones
// sorted. Schema violations report the offending path.
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "lmtoric/degeneration.hpp"
#include "lmtoric/fan.hpp"
#include "lmtoric/lct.hpp"
#include "lmtoric/trees.hpp"

namespace lmtoric {

using nlohmann::json;

namespace jio {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("json schema: " + path + ": " + what);
}

inline const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, "missing");
  return *it;
}

inline long get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

inline const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

inline Rat get_rat(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long>()));
  if (!j.is_string()) fail(path, "expected a rational \"p/q\" string");
  try {
    return rat_from_string(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

}  // namespace jio

// ---------------------------------------------------------------------------
// fans

inline json fan_to_json(const Fan& f) {
  json rays = json::array();
  for (const auto& r : f.rays()) {
    json row = json::array();
    for (const auto& x : r) row.push_back(x.get_si());
    rays.push_back(std::move(row));
  }
  json cones = json::array();
  for (const auto& c : f.max_cones()) {
    json cone = json::array();
    for (const auto i : c.ray_indices) cone.push_back(i);
    cones.push_back(std::move(cone));
  }
  return json{{"rank", f.rank()}, {"rays", std::move(rays)}, {"max_cones", std::move(cones)}};
}

inline Fan fan_from_json(const json& j, const std::string& path = "") {
  const long rank = jio::get_int(jio::member(j, "rank", path), path + "/rank");
  if (rank < 0) jio::fail(path + "/rank", "negative rank");
  std::vector<ZVec> rays;
  const auto& jr = jio::get_array(jio::member(j, "rays", path), path + "/rays");
  for (std::size_t i = 0; i < jr.size(); ++i) {
    const std::string p = path + "/rays/" + std::to_string(i);
    const auto& row = jio::get_array(jr[i], p);
    ZVec v;
    for (std::size_t k = 0; k < row.size(); ++k)
      v.push_back(Int(jio::get_int(row[k], p + "/" + std::to_string(k))));
    rays.push_back(std::move(v));
  }
  std::vector<std::vector<std::size_t>> cones;
  const auto& jc = jio::get_array(jio::member(j, "max_cones", path), path + "/max_cones");
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const std::string p = path + "/max_cones/" + std::to_string(i);
    const auto& row = jio::get_array(jc[i], p);
    std::vector<std::size_t> c;
    for (std::size_t k = 0; k < row.size(); ++k) {
      const long idx = jio::get_int(row[k], p + "/" + std::to_string(k));
      if (idx < 0) jio::fail(p + "/" + std::to_string(k), "negative ray index");
      c.push_back(static_cast<std::size_t>(idx));
    }
    cones.push_back(std::move(c));
  }
  try {
    return Fan(static_cast<std::size_t>(rank), std::move(rays), std::move(cones));
  } catch (const std::invalid_argument& e) {
    jio::fail(path.empty() ? "/" : path, e.what());
  }
}

// ---------------------------------------------------------------------------
// trees and cycles

inline json tree_to_json(const StableRootedTree& t) {
  json comps = json::array();
  for (const auto& c : t.components) {
    json marked = json::object();
    for (const auto& [i, a] : c.marked) {
      json coords = json::array();
      for (const auto& x : a) coords.push_back(rat_to_string(x));
      marked[std::to_string(i)] = std::move(coords);
    }
    comps.push_back(json{{"marked", std::move(marked)}});
  }
  return json{{"d", t.d}, {"n", t.n}, {"components", std::move(comps)}};
}

inline StableRootedTree tree_from_json(const json& j, const std::string& path = "") {
  StableRootedTree t;
  t.d = jio::get_int(jio::member(j, "d", path), path + "/d");
  t.n = jio::get_int(jio::member(j, "n", path), path + "/n");
  const auto& jc = jio::get_array(jio::member(j, "components", path), path + "/components");
  for (std::size_t v = 0; v < jc.size(); ++v) {
    const std::string p = path + "/components/" + std::to_string(v);
    const auto& jm = jio::member(jc[v], "marked", p);
    if (!jm.is_object()) jio::fail(p + "/marked", "expected an object");
    TreeComponent comp;
    for (const auto& [key, coords] : jm.items()) {
      long idx = 0;
      try {
        idx = std::stol(key);
      } catch (...) {
        jio::fail(p + "/marked/" + key, "marked index is not an integer");
      }
      const std::string pp = p + "/marked/" + key;
      const auto& arr = jio::get_array(coords, pp);
      QVec a;
      for (std::size_t k = 0; k < arr.size(); ++k)
        a.push_back(jio::get_rat(arr[k], pp + "/" + std::to_string(k)));
      comp.marked.emplace(idx, std::move(a));
    }
    t.components.push_back(std::move(comp));
  }
  const auto violations = validate_tree(t);
  if (!violations.empty()) jio::fail(path.empty() ? "/" : path, violations.front());
  return t;
}

inline json configuration_to_json(const PointConfiguration& c) {
  json pts = json::array();
  for (const auto& p : c.points) {
    json h = json::array();
    for (const auto& x : p.coords()) h.push_back(rat_to_string(x));
    pts.push_back(std::move(h));
  }
  return pts;
}

inline json cycle_to_json(long d, long n, const Cycle& z) {
  json comps = json::array();
  for (const auto& c : z.components) {
    json idx = json::array();
    for (const long i : c.marked_indices) idx.push_back(i);
    comps.push_back(json{{"J", std::move(idx)}, {"config", configuration_to_json(c.config)}});
  }
  return json{{"d", d}, {"n", n}, {"components", std::move(comps)}};
}

inline Cycle cycle_from_json(const json& j, const std::string& path = "") {
  const long d = jio::get_int(jio::member(j, "d", path), path + "/d");
  const long n = jio::get_int(jio::member(j, "n", path), path + "/n");
  if (d < 1 || n < 2) jio::fail(path, "bad dimensions");
  Cycle z;
  const auto& jc = jio::get_array(jio::member(j, "components", path), path + "/components");
  for (std::size_t v = 0; v < jc.size(); ++v) {
    const std::string p = path + "/components/" + std::to_string(v);
    CycleComponent comp;
    const auto& jj = jio::get_array(jio::member(jc[v], "J", p), p + "/J");
    for (std::size_t k = 0; k < jj.size(); ++k)
      comp.marked_indices.insert(jio::get_int(jj[k], p + "/J/" + std::to_string(k)));
    const auto& cfg = jio::get_array(jio::member(jc[v], "config", p), p + "/config");
    if (cfg.size() != static_cast<std::size_t>(n - 1))
      jio::fail(p + "/config", "expected n-1 points");
    comp.config.d = d;
    comp.config.n = n;
    for (std::size_t k = 0; k < cfg.size(); ++k) {
      const std::string pp = p + "/config/" + std::to_string(k);
      const auto& h = jio::get_array(cfg[k], pp);
      if (h.size() != static_cast<std::size_t>(d + 1))
        jio::fail(pp, "expected d+1 homogeneous coordinates");
      QVec coords;
      for (std::size_t q = 0; q < h.size(); ++q)
        coords.push_back(jio::get_rat(h[q], pp + "/" + std::to_string(q)));
      try {
        comp.config.points.emplace_back(std::move(coords));
      } catch (const std::invalid_argument& e) {
        jio::fail(pp, e.what());
      }
    }
    try {
      check_cycle_component(comp);
    } catch (const std::invalid_argument& e) {
      jio::fail(p, e.what());
    }
    z.components.push_back(std::move(comp));
  }
  return z;
}

// ---------------------------------------------------------------------------
// degeneration families

inline json family_to_json(const Family& f) {
  json pts = json::array();
  for (const auto& p : f.points) {
    json coords = json::array();
    for (const auto& s : p) {
      json terms = json::array();
      for (const auto& [e, c] : s.terms()) terms.push_back(json::array({e, rat_to_string(c)}));
      coords.push_back(std::move(terms));
    }
    pts.push_back(std::move(coords));
  }
  return json{{"d", f.d}, {"n", f.n}, {"points", std::move(pts)}};
}

inline Family family_from_json(const json& j, const std::string& path = "") {
  Family f;
  f.d = jio::get_int(jio::member(j, "d", path), path + "/d");
  f.n = jio::get_int(jio::member(j, "n", path), path + "/n");
  const auto& jp = jio::get_array(jio::member(j, "points", path), path + "/points");
  for (std::size_t i = 0; i < jp.size(); ++i) {
    const std::string p = path + "/points/" + std::to_string(i);
    const auto& coords = jio::get_array(jp[i], p);
    std::vector<LaurentSeries> series;
    for (std::size_t s = 0; s < coords.size(); ++s) {
      const std::string pp = p + "/" + std::to_string(s);
      const auto& terms = jio::get_array(coords[s], pp);
      std::map<long, Rat> t;
      for (std::size_t k = 0; k < terms.size(); ++k) {
        const std::string ppp = pp + "/" + std::to_string(k);
        const auto& term = jio::get_array(terms[k], ppp);
        if (term.size() != 2) jio::fail(ppp, "expected an [exponent, coefficient] pair");
        t[jio::get_int(term[0], ppp + "/0")] += jio::get_rat(term[1], ppp + "/1");
      }
      series.emplace_back(std::move(t));
    }
    f.points.push_back(std::move(series));
  }
  try {
    check_family(f);
  } catch (const std::invalid_argument& e) {
    jio::fail(path.empty() ? "/" : path, e.what());
  }
  return f;
}

// ---------------------------------------------------------------------------
// arrangements

inline json arrangement_to_json(const CentralArrangement& a) {
  json forms = json::array();
  for (const auto& f : a.forms) {
    json row = json::array();
    for (const auto& x : f) row.push_back(rat_to_string(x));
    forms.push_back(std::move(row));
  }
  return json{{"m", a.m}, {"forms", std::move(forms)}};
}

inline CentralArrangement arrangement_from_json(const json& j, const std::string& path = "") {
  CentralArrangement a;
  const long m = jio::get_int(jio::member(j, "m", path), path + "/m");
  if (m < 1) jio::fail(path + "/m", "dimension must be positive");
  a.m = static_cast<std::size_t>(m);
  const auto& jf = jio::get_array(jio::member(j, "forms", path), path + "/forms");
  for (std::size_t i = 0; i < jf.size(); ++i) {
    const std::string p = path + "/forms/" + std::to_string(i);
    const auto& row = jio::get_array(jf[i], p);
    QVec f;
    for (std::size_t k = 0; k < row.size(); ++k)
      f.push_back(jio::get_rat(row[k], p + "/" + std::to_string(k)));
    a.forms.push_back(std::move(f));
  }
  try {
    check_arrangement(a);
  } catch (const std::invalid_argument& e) {
    jio::fail(path.empty() ? "/" : path, e.what());
  }
  return a;
}

}  // namespace lmtoric
