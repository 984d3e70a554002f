#pragma once

// The integral affine manifold trop U: a single singular line
// ell = R(a, nb, b) inside the bending plane H = {y = nz}, monodromy
// M_ell across the half-plane H+, straight-line segments with at most
// two realizations, and sheeted vectors for the developing map.

#include <stdexcept>
#include <vector>

#include "flopcone/lattice.hpp"

namespace flopcone {

struct FlopConfig {
  int n = 1;   // flop width
  Int a = 1;   // ell = R(a, n*b, b)
  Int b = 1;

  FlopConfig() = default;
  FlopConfig(int n_, Int a_, Int b_) : n(n_), a(std::move(a_)), b(std::move(b_)) {
    if (n < 1 || a < 1 || b < 1)
      throw std::invalid_argument("flop config requires n, a, b >= 1");
  }

  // The critical configuration with both flop subdivisions.
  static FlopConfig canonical(int n) { return FlopConfig(n, n, 1); }

  bool critical() const { return a == Int(n) * b; }
};

inline Vec3 ell_generator(const FlopConfig& cfg) {
  return primitive(vec3(cfg.a, Int(cfg.n) * cfg.b, cfg.b));
}

// M_ell = [[1,1,-n],[0,1,0],[0,0,1]]; independent of (a, b).
inline Mat3 monodromy(const FlopConfig& cfg) {
  Mat3 m;
  m << 1, 1, -cfg.n, 0, 1, 0, 0, 0, 1;
  return m;
}

inline Mat3 monodromy_inverse(const FlopConfig& cfg) {
  Mat3 m;
  m << 1, -1, cfg.n, 0, 1, 0, 0, 0, 1;
  return m;
}

// M_ell^k for k of either sign.
inline Mat3 monodromy_power(const FlopConfig& cfg, int k) {
  Mat3 m;
  m << 1, k, Int(-k) * cfg.n, 0, 1, 0, 0, 0, 1;
  return m;
}

// Height function h(x,y,z) = y + z; invariant under the monodromy.
inline Int height(const Vec3& v) { return v(1) + v(2); }
inline Rat height(const Vec3q& v) { return v(1) + v(2); }

// phi(p) = y - n z: zero on H, positive on the side containing d1, d2.
template <typename V>
typename V::Scalar wall_phi(const FlopConfig& cfg, const V& p) {
  return typename V::Scalar(p(1) - p(2) * cfg.n);
}

// s(p) = b x - a z: on H this separates H+ (s > 0), H- (s < 0), ell (s = 0).
template <typename V>
typename V::Scalar ell_side(const FlopConfig& cfg, const V& p) {
  return typename V::Scalar(p(0) * cfg.b - p(2) * cfg.a);
}

enum class HClass { not_on_h, h_plus, h_minus, on_ell };

template <typename V>
HClass classify_on_h(const FlopConfig& cfg, const V& p) {
  if (wall_phi(cfg, p) != 0) return HClass::not_on_h;
  auto s = ell_side(cfg, p);
  if (s > 0) return HClass::h_plus;
  if (s < 0) return HClass::h_minus;
  return HClass::on_ell;
}

template <typename V>
bool on_ell(const FlopConfig& cfg, const V& p) {
  return classify_on_h(cfg, p) == HClass::on_ell;
}

// A lattice vector presented on a developing sheet. The same geometric
// point satisfies (v, s) == (M_ell v, s+1); developed coordinates of
// (v, s) are M_ell^s v and fundamental coordinates are v itself.
struct SheetedVector {
  Vec3 v;
  int sheet = 0;

  SheetedVector() = default;
  SheetedVector(Vec3 vv, int s = 0) : v(std::move(vv)), sheet(s) {}

  Vec3 developed(const FlopConfig& cfg) const {
    return monodromy_power(cfg, sheet) * v;
  }

  SheetedVector transported(const FlopConfig& cfg, int ds) const {
    return SheetedVector(monodromy_power(cfg, ds) * v, sheet + ds);
  }
};

struct SegmentPiece {
  Vec3q from, to;
  Vec3q tangent() const { return to - from; }
};

struct SegmentBend {
  Vec3q at;
  int direction = 0;  // +1: tangent multiplied by M_ell, -1: by M_ell^-1
};

struct Segment {
  Vec3q start, end;
  std::vector<SegmentPiece> pieces;
  std::vector<SegmentBend> bends;
  bool incident_to_ell = false;
};

namespace detail {

// Crossing parameter of the euclidean segment [p,q] with the plane H,
// assuming phi changes sign strictly; returns the crossing point.
inline Vec3q h_crossing(const FlopConfig& cfg, const Vec3q& p, const Vec3q& q) {
  Rat fp = wall_phi(cfg, p);
  Rat fq = wall_phi(cfg, q);
  Rat t = fp / (fp - fq);
  return p + ((q - p) * t).eval();
}

}  // namespace detail

// All straight-line realizations between p and q in trop U. There are at
// most two: the euclidean segment (valid if it misses H or crosses it in
// the closed H- side) and one bent segment whose bend point lies in H+.
// A straight segment passing exactly through ell is returned flagged
// incident_to_ell; a bent candidate whose bend point degenerates onto ell
// is not a segment of trop U \ ell and is dropped.
inline std::vector<Segment> segments_between(const FlopConfig& cfg,
                                             const Vec3q& p, const Vec3q& q) {
  if (on_ell(cfg, p) || on_ell(cfg, q))
    throw std::invalid_argument("segment endpoint on singular locus");

  std::vector<Segment> out;
  Rat fp = wall_phi(cfg, p);
  Rat fq = wall_phi(cfg, q);

  // Straight candidate.
  {
    Segment s;
    s.start = p;
    s.end = q;
    s.pieces.push_back({p, q});
    bool valid = true;
    if (fp == 0 && fq == 0) {
      // Segment inside the plane H; monodromy fixes H pointwise, so it is
      // straight, but flag a crossing of ell.
      Rat sp = ell_side(cfg, p);
      Rat sq = ell_side(cfg, q);
      if ((sp <= 0 && sq >= 0) || (sp >= 0 && sq <= 0)) s.incident_to_ell = true;
    } else if ((fp >= 0 && fq >= 0) || (fp <= 0 && fq <= 0)) {
      // Touches H in at most one endpoint: no interior crossing.
    } else {
      Vec3q c = detail::h_crossing(cfg, p, q);
      Rat sc = ell_side(cfg, c);
      if (sc > 0) {
        valid = false;  // euclidean path breaks at H+: not a segment
      } else if (sc == 0) {
        s.incident_to_ell = true;
      }
    }
    if (valid) out.push_back(std::move(s));
  }

  // Bent candidate: requires a strict crossing of H.
  if ((fp > 0 && fq < 0) || (fp < 0 && fq > 0)) {
    int dir = fp > 0 ? +1 : -1;  // tangent multiplied by M_ell^dir at the bend
    Mat3 lift = dir > 0 ? monodromy_inverse(cfg) : monodromy(cfg);
    Vec3q q_lift = lift.cast<Rat>() * q;
    Vec3q c = detail::h_crossing(cfg, p, q_lift);
    Rat sc = ell_side(cfg, c);
    if (sc > 0) {
      Segment s;
      s.start = p;
      s.end = q;
      s.pieces.push_back({p, c});
      s.pieces.push_back({c, q});
      s.bends.push_back({c, dir});
      out.push_back(std::move(s));
    }
    // sc == 0: bend point on ell, no such segment in trop U \ ell.
  }

  return out;
}

}  // namespace flopcone
