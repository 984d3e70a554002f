#pragma once

// The dual manifold trop V: two charts V1 (monomials x^a y^b t^c) and V2
// (monomials z^a y^b t^c) glued along the plane Pi = {a = 0}, the gluing
// matrices A+ / A- on either side of the dual singular line ell*, the
// piecewise-linear pairing with trop U, dual cones and Hilbert bases.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flopcone/cells.hpp"
#include "flopcone/cone_engine.hpp"

namespace flopcone {

enum class Chart { V1, V2 };

struct DualPoint {
  Chart chart = Chart::V1;
  Vec3 exps;  // (a, b, c) with a >= 0; a = 0 is the shared plane Pi

  DualPoint() = default;
  DualPoint(Chart ch, Vec3 e) : chart(ch), exps(std::move(e)) {
    if (exps(0) < 0)
      throw std::invalid_argument("dual point needs a >= 0 in its chart");
  }

  bool on_pi() const { return exps(0) == 0; }

  friend bool operator==(const DualPoint& l, const DualPoint& r) {
    if (l.exps != r.exps) return false;
    if (l.chart == r.chart) return true;
    return l.on_pi();  // (V1,(0,b,c)) == (V2,(0,b,c))
  }
};

// Gluing matrices: A+ recovers the binomial xz = y^2, A- the binomial
// xz = y t^n; the trinomial xz = y(y + t^n) uses A+ on Pi+ and A- on Pi-,
// where ell* = {a = 0, b = nc} splits Pi.
inline Mat3 gluing_plus() {
  Mat3 m;
  m << 1, 0, 0, -2, 1, 0, 0, 0, 1;
  return m;
}

inline Mat3 gluing_minus(const FlopConfig& cfg) {
  Mat3 m;
  m << 1, 0, 0, -1, 1, 0, -cfg.n, 0, 1;
  return m;
}

// M_{ell*} = A-^{-1} A+.
inline Mat3 dual_monodromy(const FlopConfig& cfg) {
  return Mat3(inverse_unimodular(gluing_minus(cfg)) * gluing_plus());
}

enum class PiSide { plus, minus };

// Transport a tangent exponent vector across Pi, switching charts.
inline DualPoint transport_across_pi(const FlopConfig& cfg, const DualPoint& v,
                                     PiSide side) {
  Mat3 a = side == PiSide::plus ? gluing_plus() : gluing_minus(cfg);
  if (v.chart == Chart::V1) return DualPoint(Chart::V2, Vec3(a * v.exps));
  return DualPoint(Chart::V1, Vec3(inverse_unimodular(a) * v.exps));
}

// The dual pairing <u, v>: evaluation of the divisorial valuation u on the
// theta monomial v. On V1 it is linear, a p + b q + c r; on V2 the chart
// variable is z = x^{-1} y (y + t^n), whose valuation at u = (p, q, r) is
// min(2q, q + nr) - p, so the pairing is concave in u.
inline Rat pair(const FlopConfig& cfg, const Vec3q& u, const DualPoint& v) {
  Rat p = u(0), q = u(1), r = u(2);
  Rat a = Rat(v.exps(0)), b = Rat(v.exps(1)), c = Rat(v.exps(2));
  if (v.chart == Chart::V1) return Rat(a * p + b * q + c * r);
  Rat zval = std::min(Rat(q * 2), Rat(q + r * cfg.n)) - p;
  return Rat(a * zval + b * q + c * r);
}

inline Rat pair(const FlopConfig& cfg, const Vec3& u, const DualPoint& v) {
  return pair(cfg, to_rational(u), v);
}

// ---------------------------------------------------------------------------
// dual cones
// ---------------------------------------------------------------------------

// A chart half of a dual cone, described by inequalities n . x >= 0
// together with the chart constraint a >= 0.
struct ChartCone {
  std::vector<Vec3> ineqs;  // includes (1,0,0) for the chart half-space

  bool contains(const Vec3& x) const {
    for (const Vec3& n : ineqs)
      if (n.dot(x) < 0) return false;
    return true;
  }
};

struct DualCone {
  ChartCone half1, half2;

  bool contains(const DualPoint& v) const {
    return v.chart == Chart::V1 ? half1.contains(v.exps)
                                : half2.contains(v.exps);
  }
};

namespace detail {

inline void push_unique(std::vector<Vec3>& v, const Vec3& x) {
  for (const Vec3& y : v)
    if (y == x) return;
  v.push_back(x);
}

}  // namespace detail

// Dualize a convex cone given by its generating rays: {v : <u, v> >= 0
// for all u in the cone}. Checking the generators suffices, by linearity
// of the V1 pairing and concavity of the V2 pairing in u.
inline DualCone dual_cone(const FlopConfig& cfg,
                          const std::vector<Vec3>& generators,
                          const Cell* convexity_witness = nullptr) {
  if (convexity_witness && !is_convex(cfg, *convexity_witness))
    throw std::invalid_argument("dual of non-convex cone not supported");
  DualCone dc;
  dc.half1.ineqs.push_back(vec3(1, 0, 0));
  dc.half2.ineqs.push_back(vec3(1, 0, 0));
  for (const Vec3& g : generators) {
    // V1: <g, x^a y^b t^c> = a g0 + b g1 + c g2
    detail::push_unique(dc.half1.ineqs, g);
    // V2: z-coordinate valuation min(2 g1, g1 + n g2) - g0
    Int zval = std::min(Int(g(1) * 2), Int(g(1) + g(2) * cfg.n)) - g(0);
    detail::push_unique(dc.half2.ineqs, vec3(zval, g(1), g(2)));
  }
  return dc;
}

// ---------------------------------------------------------------------------
// Hilbert bases
// ---------------------------------------------------------------------------

namespace detail {

// All lattice points of the half-open parallelepiped sum l_i g_i,
// l_i in [0,1), for up to three independent generators; works inside the
// sublattice spanned when the cone is lower-dimensional.
inline std::vector<Vec3> parallelepiped_points(const std::vector<Vec3>& gens);

inline bool in_cone_span(const std::vector<Vec3>& gens, const Vec3& p);

}  // namespace detail

// Minimal generating set of cone ∩ Z^3 for a pointed rational cone given
// by generators (2d or 3d). Fundamental-parallelepiped enumeration with a
// final irreducibility filter.
inline std::vector<Vec3> hilbert_basis(const std::vector<Vec3>& generators);

namespace detail {

inline bool lex_less(const Vec3& a, const Vec3& b) {
  for (int i = 0; i < 3; ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

// Exact nonnegative-combination test for <= 3 independent generators.
inline std::optional<std::vector<Rat>> cone_coords(
    const std::vector<Vec3>& gens, const Vec3q& p) {
  if (gens.size() == 3) {
    Mat3 m;
    for (int i = 0; i < 3; ++i) m.col(i) = gens[i];
    Int d = det3(m);
    if (d == 0) return std::nullopt;
    Mat3 a = adjugate(m);
    std::vector<Rat> lam(3);
    for (int i = 0; i < 3; ++i) {
      Rat x = Rat(a(i, 0)) * p(0) + Rat(a(i, 1)) * p(1) + Rat(a(i, 2)) * p(2);
      lam[i] = x / Rat(d);
      if (lam[i] < 0) return std::nullopt;
    }
    return lam;
  }
  if (gens.size() == 2) {
    // p = x g0 + y g1 in the plane they span
    Vec3 nrm = gens[0].cross(gens[1]);
    Rat dot = Rat(nrm(0)) * p(0) + Rat(nrm(1)) * p(1) + Rat(nrm(2)) * p(2);
    if (dot != 0) return std::nullopt;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        Int det2 = gens[0](i) * gens[1](j) - gens[0](j) * gens[1](i);
        if (det2 == 0) continue;
        Rat x = (p(i) * Rat(gens[1](j)) - p(j) * Rat(gens[1](i))) / Rat(det2);
        Rat y = (Rat(gens[0](i)) * p(j) - Rat(gens[0](j)) * p(i)) / Rat(det2);
        if (x < 0 || y < 0) return std::nullopt;
        return std::vector<Rat>{x, y};
      }
    return std::nullopt;
  }
  if (gens.size() == 1) {
    // p = x g0
    int nz = 0;
    while (nz < 3 && gens[0](nz) == 0) ++nz;
    if (nz == 3) return std::nullopt;
    Rat x = p(nz) / Rat(gens[0](nz));
    if (x < 0) return std::nullopt;
    for (int i = 0; i < 3; ++i)
      if (Rat(gens[0](i)) * x != p(i)) return std::nullopt;
    return std::vector<Rat>{x};
  }
  return std::nullopt;
}

}  // namespace detail

inline std::vector<Vec3> hilbert_basis(const std::vector<Vec3>& generators) {
  if (generators.empty())
    throw std::invalid_argument("Hilbert basis of the zero cone is empty");
  // primitive generators, deduplicated
  std::vector<Vec3> gens;
  for (const Vec3& g : generators) {
    Vec3 p = primitive(g);
    bool dup = false;
    for (const Vec3& q : gens)
      if (q == p) dup = true;
    if (!dup) gens.push_back(p);
  }
  // pointedness: no nonzero x with x and -x in the cone. For our cones it
  // is enough to reject antipodal generator pairs and mixed-sign
  // combinations detected by a zero sum of two generators.
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (Vec3(gens[i] + gens[j]) == Vec3::Zero())
        throw std::invalid_argument("Hilbert basis undefined for non-pointed cone");

  // a stellar fan from gens[0] only tiles the cone when the rays are in
  // cyclic order around an interior axis; sort them exactly
  if (gens.size() > 3) {
    Vec3 axis = Vec3::Zero();
    for (const Vec3& g : gens) axis += g;
    Vec3 ref = gens[0];
    auto half = [&](const Vec3& u) {
      Mat3 m;
      m.col(0) = axis;
      m.col(1) = ref;
      m.col(2) = u;
      return sign(det3(m));
    };
    std::sort(gens.begin(), gens.end(), [&](const Vec3& u, const Vec3& v) {
      int hu = half(u), hv = half(v);
      if (hu != hv) return hu > hv;  // positive half first, plane last
      Mat3 m;
      m.col(0) = axis;
      m.col(1) = u;
      m.col(2) = v;
      return sign(det3(m)) > 0;
    });
  }

  // candidates: generators plus lattice points in the fundamental
  // parallelepipeds of a simplicial triangulation (fan out from gens[0])
  std::vector<Vec3> cands = gens;
  auto add_parallelepiped = [&](const std::vector<Vec3>& simplex) {
    // enumerate integer points of { sum l_i s_i : 0 <= l_i < 1 } via a
    // bounding box and exact coordinate checks
    Int lo[3], hi[3];
    for (int c = 0; c < 3; ++c) {
      lo[c] = 0;
      hi[c] = 0;
    }
    for (const Vec3& s : simplex)
      for (int c = 0; c < 3; ++c) {
        if (s(c) < 0) lo[c] += s(c);
        if (s(c) > 0) hi[c] += s(c);
      }
    for (Int x = lo[0]; x <= hi[0]; ++x)
      for (Int y = lo[1]; y <= hi[1]; ++y)
        for (Int z = lo[2]; z <= hi[2]; ++z) {
          Vec3 p = vec3(x, y, z);
          if (p == Vec3::Zero()) continue;
          auto lam = detail::cone_coords(simplex, to_rational(p));
          if (!lam) continue;
          bool in_box = true;
          for (const Rat& l : *lam)
            if (l >= 1) in_box = false;
          if (in_box) detail::push_unique(cands, p);
        }
  };
  if (gens.size() <= 3) {
    add_parallelepiped(gens);
  } else {
    for (std::size_t i = 1; i + 1 < gens.size(); ++i)
      add_parallelepiped({gens[0], gens[i], gens[i + 1]});
  }

  // semigroup membership: nonnegative rational cone coordinates and
  // integrality is automatic for candidates constructed above
  auto in_cone = [&](const Vec3& p) -> bool {
    if (gens.size() <= 3) return detail::cone_coords(gens, to_rational(p)).has_value();
    for (std::size_t i = 1; i + 1 < gens.size(); ++i)
      if (detail::cone_coords({gens[0], gens[i], gens[i + 1]},
                              to_rational(p)))
        return true;
    return false;
  };

  // irreducible elements only
  std::vector<Vec3> basis;
  for (const Vec3& c : cands) {
    bool reducible = false;
    for (const Vec3& d : cands) {
      if (d == c) continue;
      Vec3 rest = c - d;
      if (rest == Vec3::Zero()) continue;
      if (in_cone(d) && in_cone(rest)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(c);
  }
  std::sort(basis.begin(), basis.end(), detail::lex_less);
  return basis;
}

// Hilbert bases of the two chart halves of a dual cone. The chart cones
// are produced by inequalities; convert to generators by enumerating the
// extreme rays of the (pointed, <= 4 facet) chart cone.
inline std::vector<Vec3> chart_cone_generators(const ChartCone& cc) {
  // extreme ray candidates: intersections of facet pairs
  std::vector<Vec3> rays;
  const auto& ineqs = cc.ineqs;
  for (std::size_t i = 0; i < ineqs.size(); ++i)
    for (std::size_t j = i + 1; j < ineqs.size(); ++j) {
      Vec3 r = ineqs[i].cross(ineqs[j]);
      if (r == Vec3::Zero()) continue;
      for (int sgn = 0; sgn < 2; ++sgn) {
        Vec3 c = sgn == 0 ? r : Vec3(-r);
        if (!cc.contains(c)) continue;
        // extreme: saturates both defining facets (true by construction)
        detail::push_unique(rays, primitive(c));
      }
    }
  return rays;
}

struct DualHilbert {
  std::vector<Vec3> half1, half2;
  std::vector<DualPoint> glued;  // shared Pi points reported once, in V1
};

inline DualHilbert dual_hilbert(const FlopConfig& cfg, const DualCone& dc) {
  (void)cfg;
  DualHilbert out;
  out.half1 = hilbert_basis(chart_cone_generators(dc.half1));
  out.half2 = hilbert_basis(chart_cone_generators(dc.half2));
  for (const Vec3& v : out.half1) out.glued.push_back(DualPoint(Chart::V1, v));
  for (const Vec3& v : out.half2) {
    if (v(0) == 0) continue;  // already counted through V1
    out.glued.push_back(DualPoint(Chart::V2, v));
  }
  return out;
}

}  // namespace flopcone
