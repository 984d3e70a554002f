#pragma once

// The cone sigma and its combinatorics: membership, compact height
// slices, the two flop subdivisions, Reid's pagoda refinement, wall
// relations with self-intersection numbers, local fans and dual
// intersection complexes.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flopcone/cells.hpp"

namespace flopcone {

// ---------------------------------------------------------------------------
// sigma itself
// ---------------------------------------------------------------------------

// Closed-form membership from the four supporting hyperplanes, switching
// branch at H: x >= 0, z >= 0, and x <= y + nz above H, x <= 2y below.
struct SigmaCone {
  FlopConfig cfg;

  explicit SigmaCone(FlopConfig c) : cfg(std::move(c)) {}

  template <typename V>
  bool contains(const V& p) const {
    if (p(0) < 0 || p(2) < 0) return false;
    if (wall_phi(cfg, p) >= 0) return p(0) <= p(1) + p(2) * cfg.n;
    return p(0) <= p(1) * 2;
  }

  template <typename V>
  bool contains_interior(const V& p) const {
    if (p(0) <= 0 || p(2) <= 0) return false;
    if (wall_phi(cfg, p) >= 0) return p(0) < p(1) + p(2) * cfg.n;
    return p(0) < p(1) * 2;
  }

  Vec3 d1() const { return vec3(1, 1, 0); }
  Vec3 d2() const { return vec3(0, 1, 0); }
  Vec3 d3() const { return vec3(0, 0, 1); }
};

// All integral points of sigma at the given height h(v) = y + z, in
// lexicographic order on (x, y, z).
inline std::vector<Vec3> slice_points(const FlopConfig& cfg, int h) {
  if (h < 0) throw std::invalid_argument("negative height");
  SigmaCone sigma(cfg);
  std::vector<Vec3> pts;
  for (int y = 0; y <= h; ++y) {
    Int z = h - y;
    Int xmax = (Int(y) >= Int(z * cfg.n)) ? Int(y + z * cfg.n) : Int(2 * y);
    for (Int x = 0; x <= xmax; ++x) pts.push_back(vec3(x, y, z));
  }
  std::sort(pts.begin(), pts.end(), [](const Vec3& a, const Vec3& b) {
    for (int i = 0; i < 3; ++i) {
      if (a(i) != b(i)) return a(i) < b(i);
    }
    return false;
  });
  return pts;
}

enum class Side { A, B };

// Which of the two subdivisions exist: {A} when a < nb, both at the
// critical value a = nb, {B} when a > nb.
inline std::set<Side> admissible_sides(const FlopConfig& cfg) {
  Int nb = Int(cfg.n) * cfg.b;
  if (!(cfg.a > 0 && cfg.a < 2 * nb))
    throw std::invalid_argument("singular line not interior to sigma");
  if (cfg.a < nb) return {Side::A};
  if (cfg.a > nb) return {Side::B};
  return {Side::A, Side::B};
}

// ---------------------------------------------------------------------------
// cells of the standard subdivisions
// ---------------------------------------------------------------------------

namespace build {

inline Sector sector(const Vec3& a, const Vec3& b, const Vec3& c, int sheet) {
  Sector s;
  s.rays = {a, b, c};
  s.sheet = sheet;
  Mat3 m;
  m.col(0) = a;
  m.col(1) = b;
  m.col(2) = c;
  if (det3(m) == 0) throw std::logic_error("degenerate sector");
  return s;
}

// sigma_k-shaped cell: generators (A, B, C) playing the roles of
// (d1, d2, d3), with the singular ray through the euclidean face <A, C>.
// The chain winds once around ell.
inline Cell sigma_like(const FlopConfig& cfg, const Vec3& A, const Vec3& B,
                       const Vec3& C, std::string label) {
  Mat3 mi = monodromy_inverse(cfg);
  Vec3 h = ell_generator(cfg);
  Vec3 w = detail::h_crossing_ray(cfg, A, Vec3(mi * C));
  if (!(ell_side(cfg, w) > 0))
    throw std::invalid_argument("cone is not a sigma-like wrap around ell");
  Cell cell;
  cell.label = std::move(label);
  cell.generators = {SheetedVector(A, 0), SheetedVector(B, 0),
                     SheetedVector(C, 0)};
  cell.full_turn = true;
  cell.sectors = {sector(h, C, B, 0), sector(h, B, A, 0), sector(h, A, w, 0),
                  sector(h, w, Vec3(mi * C), -1)};
  return cell;
}

// The strip between the bent walls <A, g_out> and <A, g_in>; this is the
// tau2 cell of a pagoda step (smooth, developed hull <g_out, g_in, M A>).
inline Cell strip(const FlopConfig& cfg, const Vec3& A, const Vec3& g_in,
                  const Vec3& g_out, std::string label) {
  Mat3 m = monodromy(cfg);
  Vec3 ma = m * A;
  Cell cell;
  cell.label = std::move(label);
  cell.generators = {SheetedVector(A, 0), SheetedVector(g_in, 0),
                     SheetedVector(g_out, 0)};
  Vec3 w_out = detail::h_crossing_ray(cfg, g_out, ma);
  if (wall_phi(cfg, g_in) == 0) {
    // inner wall ends on ell: two sectors only
    cell.sectors = {sector(g_out, g_in, w_out, 0),
                    sector(w_out, g_in, ma, 1)};
  } else {
    Vec3 w_in = detail::h_crossing_ray(cfg, g_in, ma);
    cell.sectors = {sector(g_out, g_in, w_in, 0),
                    sector(g_out, w_in, w_out, 0), sector(w_out, w_in, ma, 1)};
  }
  return cell;
}

inline Cell simplicial(const Vec3& a, const Vec3& b, const Vec3& c,
                       std::string label) {
  Cell cell;
  cell.label = std::move(label);
  cell.generators = {SheetedVector(a, 0), SheetedVector(b, 0),
                     SheetedVector(c, 0)};
  cell.sectors = {sector(a, b, c, 0)};
  return cell;
}

}  // namespace build

// A cell built from raw sheeted rays: sigma-like wraps get the full-turn
// hinge chain, anything else is assembled from its developed pieces.
inline Cell cell_from_rays(const FlopConfig& cfg,
                           const std::vector<SheetedVector>& rays,
                           std::string label = "cone") {
  bool same_sheet = true;
  for (const SheetedVector& r : rays)
    if (r.sheet != rays[0].sheet) same_sheet = false;
  if (same_sheet && rays.size() == 3) {
    std::vector<Vec3> fund = {rays[0].v, rays[1].v, rays[2].v};
    if (auto roles = sigma_like_roles(cfg, fund))
      return build::sigma_like(cfg, fund[(*roles)[0]], fund[(*roles)[1]],
                               fund[(*roles)[2]], std::move(label));
  }
  std::vector<DevelopedPiece> pieces = develop(cfg, rays);
  Cell cell;
  cell.label = std::move(label);
  cell.generators = rays;
  for (const DevelopedPiece& p : pieces) {
    // pieces list cut rays last; fan out from the first cut ray so that
    // consecutive sectors (and consecutive pieces) share facets
    std::vector<Vec3> ordered = p.rays;
    if (pieces.size() > 1) std::rotate(ordered.begin(), ordered.end() - 2, ordered.end());
    for (std::size_t i = 1; i + 1 < ordered.size(); ++i)
      cell.sectors.push_back(
          build::sector(ordered[0], ordered[i], ordered[i + 1], p.sheet));
  }
  return cell;
}

inline bool is_convex(const FlopConfig& cfg,
                      const std::vector<SheetedVector>& rays) {
  return is_convex(cfg, cell_from_rays(cfg, rays));
}

// Developed extreme rays of a cell (used for smoothness and for lifting
// wall relations onto a consistent sheet).
inline std::vector<Vec3> developed_extremes(const Cell& cell) {
  // collect all sector rays, then drop the ones interior to the hull
  std::vector<Vec3> rays;
  for (const Sector& s : cell.sectors)
    for (const Vec3& r : s.rays) {
      bool seen = false;
      for (const Vec3& q : rays)
        if (q == r) seen = true;
      if (!seen) rays.push_back(r);
    }
  // facet normals of the hull, primitive and deduplicated
  std::vector<Vec3> normals;
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      Vec3 nrm = rays[i].cross(rays[j]);
      if (nrm == Vec3::Zero()) continue;
      int pos = 0, neg = 0;
      for (const Vec3& r : rays) {
        int s = sign(Int(nrm.dot(r)));
        if (s > 0) ++pos;
        if (s < 0) ++neg;
      }
      if (neg != 0 && pos != 0) continue;
      nrm = primitive(neg == 0 ? nrm : Vec3(-nrm));
      bool seen = false;
      for (const Vec3& q : normals)
        if (q == nrm) seen = true;
      if (!seen) normals.push_back(nrm);
    }
  std::vector<Vec3> ext;
  for (const Vec3& r : rays) {
    // extreme iff the ray saturates two distinct facets
    int sat = 0;
    for (const Vec3& nrm : normals)
      if (nrm.dot(r) == 0) ++sat;
    if (sat >= 2) ext.push_back(r);
  }
  return ext;
}

// A cell is smooth when its developed hull is simplicial with unimodular
// generators on a consistent sheet.
inline bool smooth(const Cell& cell) {
  std::vector<Vec3> ext = developed_extremes(cell);
  if (ext.size() != 3) return false;
  Mat3 m;
  m.col(0) = primitive(ext[0]);
  m.col(1) = primitive(ext[1]);
  m.col(2) = primitive(ext[2]);
  Int d = det3(m);
  return d == 1 || d == -1;
}

// ---------------------------------------------------------------------------
// complexes
// ---------------------------------------------------------------------------

struct WallPiece {
  Vec3 a, b;
  int sheet = 0;
};

struct Wall {
  std::string curve;
  int cell_a = -1, cell_b = -1;
  std::vector<int> ray_indices;  // extreme rays of the wall
  std::vector<WallPiece> pieces;

  bool contains(const FlopConfig& cfg, const Vec3q& p) const {
    for (const WallPiece& wp : pieces) {
      Vec3q q = detail::mul(monodromy_power(cfg, wp.sheet), p);
      // q in the 2d cone <a, b>: coplanar and nonnegative coordinates
      Vec3 nrm = wp.a.cross(wp.b);
      Rat dot = Rat(nrm(0)) * q(0) + Rat(nrm(1)) * q(1) + Rat(nrm(2)) * q(2);
      if (dot != 0) continue;
      // solve q = x a + y b on a coordinate pair where (a,b) is invertible
      bool solved = false;
      for (int i = 0; i < 3 && !solved; ++i)
        for (int j = i + 1; j < 3 && !solved; ++j) {
          Int det2 = wp.a(i) * wp.b(j) - wp.a(j) * wp.b(i);
          if (det2 == 0) continue;
          Rat x = (q(i) * Rat(wp.b(j)) - q(j) * Rat(wp.b(i))) / Rat(det2);
          Rat y = (Rat(wp.a(i)) * q(j) - Rat(wp.a(j)) * q(i)) / Rat(det2);
          solved = true;
          if (x >= 0 && y >= 0) return true;
        }
    }
    return false;
  }
};

struct RayEntry {
  std::string label;
  Vec3 v;
  int sheet = 0;
};

struct ConeComplex {
  FlopConfig cfg;
  std::string side;  // "A", "B" or "pagoda"
  std::vector<RayEntry> rays;
  std::vector<Cell> cells;
  std::vector<Wall> walls;

  int ray_index(const std::string& label) const {
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (rays[i].label == label) return int(i);
    throw std::invalid_argument("unknown ray label: " + label);
  }
};

// The two flop subdivisions at the critical configuration a = nb.
inline ConeComplex flop_subdivision(const FlopConfig& cfg, Side side) {
  if (!cfg.critical())
    throw std::invalid_argument(
        "critical configuration a = nb required for two-sided subdivision");
  SigmaCone sigma(cfg);
  Vec3 d1 = sigma.d1(), d2 = sigma.d2(), d3 = sigma.d3();
  Vec3 fn = ell_generator(cfg);
  Mat3 m = monodromy(cfg);
  Mat3 mi = monodromy_inverse(cfg);
  Vec3 w = detail::h_crossing_ray(cfg, d1, Vec3(mi * d3));  // (2n, n, 1)

  ConeComplex cx;
  cx.cfg = cfg;
  if (side == Side::A) {
    cx.side = "A";
    cx.rays = {{"d1", d1, 0}, {"d2", d2, 0}, {"d3", d3, 0}, {"fn", fn, 0}};
    Cell tau1 = build::simplicial(d2, d3, fn, "tau1");
    Cell comp;
    comp.label = "tau2";
    comp.generators = {SheetedVector(d1, 0), SheetedVector(d2, 0),
                       SheetedVector(d3, 0), SheetedVector(fn, 0)};
    comp.sectors = {build::sector(fn, d2, d1, 0), build::sector(fn, d1, w, 0),
                    build::sector(fn, w, Vec3(mi * d3), -1)};
    cx.cells = {tau1, comp};
    Wall wall;
    wall.curve = "C";
    wall.cell_a = 0;
    wall.cell_b = 1;
    wall.ray_indices = {cx.ray_index("d2"), cx.ray_index("fn"),
                        cx.ray_index("d3")};
    wall.pieces = {{d2, fn, 0}, {fn, d3, 0}};
    cx.walls = {wall};
  } else {
    cx.side = "B";
    cx.rays = {{"d1", d1, 0}, {"d2", d2, 0}, {"d3", d3, 0}, {"fn", fn, 0}};
    Cell upper = build::simplicial(d1, d2, d3, "tau1");
    Cell lower;
    lower.label = "tau2";
    lower.generators = {SheetedVector(d1, 0), SheetedVector(d3, 0)};
    lower.sectors = {build::sector(fn, d3, w, 0),
                     build::sector(fn, w, Vec3(m * d1), 1)};
    cx.cells = {upper, lower};
    Wall wall;
    wall.curve = "C";
    wall.cell_a = 0;
    wall.cell_b = 1;
    wall.ray_indices = {cx.ray_index("d1"), cx.ray_index("d3")};
    wall.pieces = {{d1, d3, 0}};
    cx.walls = {wall};
  }
  return cx;
}

// One refinement step: subdividing the sigma_k presentation (A, B, C)
// along an interior ray f gives tau1 = <f, B, C>, tau2 = <A, f, C> (a
// strip across the cut) and tau3 = <A, B, f>, the next sigma.
struct SubdivisionStep {
  Cell tau1, tau2;
  Vec3 next_a, next_b, next_c;  // the sigma_{k-1} presentation
};

inline SubdivisionStep subdivide_at_ray(const FlopConfig& cfg, const Vec3& A,
                                        const Vec3& B, const Vec3& C,
                                        const Vec3& f) {
  Cell sigma_cell = build::sigma_like(cfg, A, B, C, "sigma");
  if (!sigma_cell.contains_interior(cfg, to_rational(f)))
    throw std::invalid_argument("subdivision ray not interior to the cone");
  SubdivisionStep st;
  st.tau1 = build::simplicial(f, B, C, "tau1");
  st.tau2 = build::strip(cfg, A, f, C, "tau2");
  st.next_a = A;
  st.next_b = B;
  st.next_c = f;
  return st;
}

// The conjugating matrix of the pagoda recursion: P M_n P^{-1} = M_{n-1}.
inline Mat3 pagoda_conjugator() {
  Mat3 p;
  p << 1, 0, -1, 0, 1, -1, 0, 0, 1;
  return p;
}

// Reid's pagoda: the smooth refinement obtained by subdividing along
// f_i = (i, i, 1) for i = 1..n. 2n+1 maximal cells.
inline ConeComplex pagoda(const FlopConfig& cfg) {
  SigmaCone sigma(cfg);
  Vec3 d1 = sigma.d1(), d2 = sigma.d2(), d3 = sigma.d3();
  ConeComplex cx;
  cx.cfg = cfg;
  cx.side = "pagoda";
  cx.rays = {{"d1", d1, 0}, {"d2", d2, 0}, {"d3", d3, 0}};
  for (int i = 1; i <= cfg.n; ++i)
    cx.rays.push_back({"f" + std::to_string(i), vec3(i, i, 1), 0});

  auto f = [&](int i) { return i == 0 ? d3 : vec3(i, i, 1); };

  Vec3 A = d1, B = d2, C = d3;
  for (int i = 1; i <= cfg.n; ++i) {
    SubdivisionStep st = subdivide_at_ray(cfg, A, B, C, f(i));
    st.tau1.label = "tau1." + std::to_string(i);
    st.tau2.label = "tau2." + std::to_string(i);
    cx.cells.push_back(st.tau1);
    cx.cells.push_back(st.tau2);
    A = st.next_a;
    B = st.next_b;
    C = st.next_c;
  }
  cx.cells.push_back(build::simplicial(d1, d2, f(cfg.n), "tau3"));

  // walls: <f_i, f_{i-1}> between the step cells, <d2, f_i> along the
  // tau1 fan, <d1, f_i> along the tau2 fan (bent below the cut for i < n)
  Mat3 m = monodromy(cfg);
  auto cell_id = [&](const std::string& label) {
    for (std::size_t k = 0; k < cx.cells.size(); ++k)
      if (cx.cells[k].label == label) return int(k);
    throw std::logic_error("missing cell " + label);
  };
  auto ray_id = [&](int i) {
    return i == 0 ? cx.ray_index("d3") : cx.ray_index("f" + std::to_string(i));
  };
  for (int i = 1; i <= cfg.n; ++i) {
    std::string si = std::to_string(i);
    Wall wd;  // diagonal wall <f_i, f_{i-1}>
    wd.curve = "C" + std::to_string(i - 1);
    wd.cell_a = cell_id("tau1." + si);
    wd.cell_b = cell_id("tau2." + si);
    wd.ray_indices = {ray_id(i), ray_id(i - 1)};
    wd.pieces = {{f(i), f(i - 1), 0}};
    cx.walls.push_back(wd);

    Wall w2;  // <d2, f_i>
    w2.curve = "D2.F" + si;
    w2.cell_a = cell_id("tau1." + si);
    w2.cell_b = i < cfg.n ? cell_id("tau1." + std::to_string(i + 1))
                          : cell_id("tau3");
    w2.ray_indices = {cx.ray_index("d2"), ray_id(i)};
    w2.pieces = {{d2, f(i), 0}};
    cx.walls.push_back(w2);

    Wall w1;  // <d1, f_i>, bent through the cut for i < n
    w1.curve = "D1.F" + si;
    w1.cell_a = cell_id("tau2." + si);
    w1.cell_b = i < cfg.n ? cell_id("tau2." + std::to_string(i + 1))
                          : cell_id("tau3");
    w1.ray_indices = {cx.ray_index("d1"), ray_id(i)};
    if (i < cfg.n) {
      Vec3 bend = detail::h_crossing_ray(cfg, f(i), Vec3(m * d1));
      w1.pieces = {{d1, bend, 0}, {bend, f(i), 0}};
    } else {
      w1.pieces = {{d1, f(i), 0}};
    }
    cx.walls.push_back(w1);
  }
  return cx;
}

// ---------------------------------------------------------------------------
// wall relations and self-intersection numbers
// ---------------------------------------------------------------------------

struct WallRelation {
  Int a, b;                      // v1 + v2 = a w1 + b w2
  std::pair<Int, Int> self_ints;  // ((C|S_w1)^2, (C|S_w2)^2) = (-b, -a)
};

// Exact solve of v1 + v2 = a w1 + b w2 with all four rays presented on
// one consistent developed sheet.
inline WallRelation wall_relation(const Vec3& w1, const Vec3& w2,
                                  const Vec3& v1, const Vec3& v2) {
  Mat3 mbasis;
  mbasis.col(0) = w1;
  mbasis.col(1) = w2;
  mbasis.col(2) = v1;
  Int d = det3(mbasis);
  if (d == 0)
    throw std::invalid_argument(
        "adjacent generators not coplanar with wall over Z");
  Mat3 adj = adjugate(mbasis);
  Vec3 coords = adj * v2;  // = d * (alpha, beta, gamma)
  if (coords(2) != -d)
    throw std::invalid_argument(
        "adjacent generators not coplanar with wall over Z");
  if (coords(0) % d != 0 || coords(1) % d != 0)
    throw std::invalid_argument(
        "adjacent generators not coplanar with wall over Z");
  WallRelation r;
  r.a = coords(0) / d;
  r.b = coords(1) / d;
  r.self_ints = {Int(-r.b), Int(-r.a)};
  return r;
}

// Wall relation for a wall of a complex: the two incident cells are
// developed onto the chart where they share the wall pair, and the
// opposite generators are read off there.
struct ComplexWallRelation {
  Vec3 w1, w2;     // developed wall pair in the common chart
  Vec3 v1, v2;     // opposite generators of the two cells, same chart
  WallRelation rel;
};

inline ComplexWallRelation wall_relation_in(const ConeComplex& cx,
                                            const Wall& wall) {
  std::vector<Vec3> ea = developed_extremes(cx.cells[wall.cell_a]);
  std::vector<Vec3> eb0 = developed_extremes(cx.cells[wall.cell_b]);
  // the two cells may be anchored on different sheets; transport one of
  // them until the developed wall pair is shared
  for (int t : {0, 1, -1}) {
    Mat3 m = monodromy_power(cx.cfg, t);
    std::vector<Vec3> eb;
    for (const Vec3& r : eb0) eb.push_back(m * r);
    std::vector<Vec3> shared;
    std::optional<Vec3> va, vb;
    for (const Vec3& r : ea) {
      bool in_b = false;
      for (const Vec3& q : eb)
        if (q == r) in_b = true;
      if (in_b)
        shared.push_back(r);
      else
        va = r;
    }
    for (const Vec3& r : eb) {
      bool in_a = false;
      for (const Vec3& q : ea)
        if (q == r) in_a = true;
      if (!in_a) vb = r;
    }
    if (shared.size() != 2 || !va || !vb) continue;
    ComplexWallRelation out;
    out.w1 = shared[0];
    out.w2 = shared[1];
    out.v1 = *va;
    out.v2 = *vb;
    out.rel = wall_relation(out.w1, out.w2, out.v1, out.v2);
    return out;
  }
  throw std::logic_error("wall cells do not share a developed facet");
}

// ---------------------------------------------------------------------------
// local fans and the intersection complex
// ---------------------------------------------------------------------------

struct LocalFanCone {
  std::string cell;
  Vec2 r1, r2;  // canonical quotient coordinates, primitive
  Int index;    // |det|, an A_{index-1} chart when > 1
};

struct LocalFan {
  std::string ray;
  std::vector<LocalFanCone> cones;

  Int max_index() const {
    Int m = 1;
    for (const LocalFanCone& c : cones) m = std::max(m, c.index);
    return m;
  }
};

inline Vec2 primitive2(const Vec2& v) {
  Int g = gcd(v(0), v(1));
  if (g == 0) throw std::invalid_argument("zero quotient ray");
  return vec2(v(0) / g, v(1) / g);
}

// The 2d fan around a ray of the complex: images of the adjacent cell
// edges in the canonical quotient basis of Z^3 / Z ray.
inline LocalFan local_fan(const FlopConfig& cfg, const ConeComplex& cx,
                          const std::string& ray_label) {
  const RayEntry& entry = cx.rays[cx.ray_index(ray_label)];
  if (on_ell(cfg, entry.v))
    throw std::invalid_argument("local fan at the singular ray is not defined");
  Mat3 u = complete_ray_to_basis(primitive(entry.v));
  auto project = [&](const Vec3& x) {
    Vec3 y = u * x;
    return primitive2(vec2(y(0), y(1)));
  };

  LocalFan fan;
  fan.ray = ray_label;
  for (const Cell& cell : cx.cells) {
    // sectors containing a copy of the ray
    std::vector<Vec3> neighbors;
    std::vector<int> counts;
    bool found = false;
    for (const Sector& s : cell.sectors) {
      Vec3 copy = monodromy_power(cfg, s.sheet) * entry.v;
      bool has = false;
      for (const Vec3& r : s.rays)
        if (r == copy) has = true;
      if (!has) continue;
      found = true;
      Mat3 back = monodromy_power(cfg, -s.sheet);
      for (const Vec3& r : s.rays) {
        if (r == copy) continue;
        Vec3 nb = back * r;
        bool seen = false;
        for (std::size_t k = 0; k < neighbors.size(); ++k)
          if (neighbors[k] == nb) {
            ++counts[k];
            seen = true;
          }
        if (!seen) {
          neighbors.push_back(nb);
          counts.push_back(1);
        }
      }
    }
    if (!found) continue;
    // boundary edges of the germ appear in exactly one sector
    std::vector<Vec3> edges;
    for (std::size_t k = 0; k < neighbors.size(); ++k)
      if (counts[k] == 1) edges.push_back(neighbors[k]);
    if (edges.size() != 2)
      throw std::logic_error("germ of " + cell.label + " at " + ray_label +
                             " is not a wedge");
    LocalFanCone c;
    c.cell = cell.label;
    c.r1 = project(edges[0]);
    c.r2 = project(edges[1]);
    c.index = cone_index_2d(c.r1, c.r2);
    fan.cones.push_back(c);
  }
  return fan;
}

struct IntersectionComplex {
  struct Vertex {
    std::string divisor;      // D1, D2, D3, F1, ...
    std::string singularity;  // "A<k>" decoration or empty
  };
  struct Edge {
    std::string curve;
    std::string v1, v2;
    std::optional<std::pair<Int, Int>> self_ints;  // ((C|v1)^2, (C|v2)^2)
  };
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

inline std::string divisor_name(const std::string& ray_label) {
  if (ray_label == "d1") return "D1";
  if (ray_label == "d2") return "D2";
  if (ray_label == "d3") return "D3";
  if (ray_label == "fn") return "Fn";
  if (!ray_label.empty() && ray_label[0] == 'f') return "F" + ray_label.substr(1);
  return ray_label;
}

// Dual complex: one vertex per ray (decorated by its local fan), one edge
// per wall, joining the wall's extreme rays and carrying the exact
// self-intersection pair where the wall relation solves.
inline IntersectionComplex intersection_complex(const FlopConfig& cfg,
                                                const ConeComplex& cx) {
  IntersectionComplex ic;
  Mat3 m = monodromy(cfg);
  Mat3 mi = monodromy_inverse(cfg);
  for (const RayEntry& r : cx.rays) {
    IntersectionComplex::Vertex v;
    v.divisor = divisor_name(r.label);
    if (!on_ell(cfg, r.v)) {
      Int k = local_fan(cfg, cx, r.label).max_index();
      if (k > 1) v.singularity = "A" + Int(k - 1).get_str();
    }
    ic.vertices.push_back(v);
  }
  for (const Wall& wall : cx.walls) {
    IntersectionComplex::Edge e;
    e.curve = wall.curve;
    e.v1 = divisor_name(cx.rays[wall.ray_indices.front()].label);
    e.v2 = divisor_name(cx.rays[wall.ray_indices.back()].label);
    try {
      ComplexWallRelation cwr = wall_relation_in(cx, wall);
      // map the developed wall pair back onto the declared endpoints so
      // the pair (C|v1)^2, (C|v2)^2 is reported in edge order
      const Vec3& first = cx.rays[wall.ray_indices.front()].v;
      auto matches = [&](const Vec3& dev, const Vec3& fund) {
        return dev == fund || dev == Vec3(m * fund) || dev == Vec3(mi * fund);
      };
      if (matches(cwr.w1, first))
        e.self_ints = cwr.rel.self_ints;
      else if (matches(cwr.w2, first))
        e.self_ints = std::pair<Int, Int>(cwr.rel.self_ints.second,
                                          cwr.rel.self_ints.first);
    } catch (const std::exception&) {
      // walls of the flop subdivisions have no simplicial cells on both
      // sides; they carry no self-intersection decoration
    }
    ic.edges.push_back(e);
  }
  return ic;
}

}  // namespace flopcone
