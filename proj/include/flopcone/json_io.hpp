#pragma once

// Deterministic JSON views of complexes, dual cones and the mirror data.

#include <json.hpp>

#include "flopcone/cone_engine.hpp"
#include "flopcone/dual.hpp"
#include "flopcone/theta.hpp"

namespace flopcone {

using Json = nlohmann::ordered_json;

inline Json json_vec(const Vec3& v) {
  return Json::array({v(0).get_str(), v(1).get_str(), v(2).get_str()});
}

// {"n":..,"side":..,"rays":[{label,v,sheet}],"cells":[[ray indices]],
//  "walls":[{cells,rays,curve}]}; all arrays in deterministic order.
inline Json to_json(const ConeComplex& cx) {
  Json j;
  j["n"] = cx.cfg.n;
  j["side"] = cx.side;
  j["rays"] = Json::array();
  for (const RayEntry& r : cx.rays) {
    Json e;
    e["label"] = r.label;
    e["v"] = json_vec(r.v);
    e["sheet"] = r.sheet;
    j["rays"].push_back(e);
  }
  auto ray_index_of = [&](const Vec3& v) -> int {
    for (std::size_t i = 0; i < cx.rays.size(); ++i)
      if (cx.rays[i].v == v) return int(i);
    return -1;
  };
  j["cells"] = Json::array();
  for (const Cell& c : cx.cells) {
    std::vector<int> idx;
    for (const SheetedVector& g : c.generators) {
      int k = ray_index_of(g.v);
      if (k >= 0) idx.push_back(k);
    }
    std::sort(idx.begin(), idx.end());
    j["cells"].push_back(idx);
  }
  j["walls"] = Json::array();
  for (const Wall& w : cx.walls) {
    Json e;
    e["cells"] = Json::array({w.cell_a, w.cell_b});
    std::vector<int> idx = w.ray_indices;
    std::sort(idx.begin(), idx.end());
    e["rays"] = idx;
    e["curve"] = w.curve;
    j["walls"].push_back(e);
  }
  return j;
}

// {"chart_V1":{"ineqs":[[...]]},"chart_V2":{...},"hilbert_V1":[[...]],
//  "hilbert_V2":[[...]]}
inline Json to_json(const FlopConfig& cfg, const DualCone& dc) {
  Json j;
  auto ineqs = [](const ChartCone& cc) {
    Json a = Json::array();
    for (const Vec3& n : cc.ineqs) a.push_back(json_vec(n));
    return a;
  };
  j["chart_V1"] = Json{{"ineqs", ineqs(dc.half1)}};
  j["chart_V2"] = Json{{"ineqs", ineqs(dc.half2)}};
  DualHilbert h = dual_hilbert(cfg, dc);
  Json h1 = Json::array(), h2 = Json::array();
  for (const Vec3& v : h.half1) h1.push_back(json_vec(v));
  for (const Vec3& v : h.half2) h2.push_back(json_vec(v));
  j["hilbert_V1"] = h1;
  j["hilbert_V2"] = h2;
  return j;
}

// {"matrix":[[str]],"minors":[str],"verified":bool}
inline Json mirror_json(const FlopConfig& cfg, bool check) {
  MirrorIdeal mi = mirror_ideal(cfg.n);
  Json j;
  Json row1 = Json::array(), row2 = Json::array();
  for (const ThetaPoly& p : mi.row1) row1.push_back(p.str());
  for (const ThetaPoly& p : mi.row2) row2.push_back(p.str());
  j["matrix"] = Json::array({row1, row2});
  Json minors = Json::array();
  for (const ThetaPoly& p : mi.minors) minors.push_back(p.str());
  j["minors"] = minors;
  j["codimension"] = mi.codimension;
  if (check) j["verified"] = verify_minors(cfg).ok;
  return j;
}

}  // namespace flopcone
