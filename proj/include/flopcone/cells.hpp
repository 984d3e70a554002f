#pragma once

// Cells of trop U as sector chains: each cell is an ordered run of
// simplicial linear sectors in developed coordinates, consecutive sectors
// sharing a 2d facet. Crossing the half-plane H+ moves to an adjacent
// developing sheet; points of H are fixed by the monodromy, so the shared
// cut facets have identical coordinates on both sides. Sheet 0 is the
// chart reached from the interior of tau1 = <rho2, rho3, ell> without
// crossing H+.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flopcone/trop_u.hpp"

namespace flopcone {

struct Sector {
  std::array<Vec3, 3> rays;  // developed coordinates; det != 0
  int sheet = 0;
};

namespace detail {

// Solves p = sum lambda_i rays_i exactly; membership iff all lambda_i >= 0.
inline bool sector_contains(const Sector& s, const Vec3q& p, bool strict) {
  Mat3 m;
  m.col(0) = s.rays[0];
  m.col(1) = s.rays[1];
  m.col(2) = s.rays[2];
  Int d = det3(m);
  Mat3 a = adjugate(m);
  int ds = sign(d);
  for (int i = 0; i < 3; ++i) {
    Rat lam = Rat(a(i, 0)) * p(0) + Rat(a(i, 1)) * p(1) + Rat(a(i, 2)) * p(2);
    int sg = sign(lam) * ds;
    if (sg < 0 || (strict && sg == 0)) return false;
  }
  return true;
}

inline Vec3q mul(const Mat3& m, const Vec3q& p) {
  Vec3q r;
  for (int i = 0; i < 3; ++i)
    r(i) = Rat(m(i, 0)) * p(0) + Rat(m(i, 1)) * p(1) + Rat(m(i, 2)) * p(2);
  return r;
}

}  // namespace detail

class Cell {
 public:
  std::string label;
  std::vector<SheetedVector> generators;  // declared generating rays
  std::vector<Sector> sectors;            // sweep order
  bool full_turn = false;  // closure identified via the monodromy

  // Fundamental-coordinates membership: some sector sees M^sheet * p.
  bool contains(const FlopConfig& cfg, const Vec3q& p) const {
    for (const Sector& s : sectors) {
      Vec3q q = detail::mul(monodromy_power(cfg, s.sheet), p);
      if (detail::sector_contains(s, q, false)) return true;
    }
    return false;
  }

  bool contains(const FlopConfig& cfg, const Vec3& p) const {
    return contains(cfg, to_rational(p));
  }

  // Interior of the cell: contained and away from every boundary facet.
  // A facet is interior when two chain sectors share it (including the
  // closing identification of a full turn); points on interior facets
  // still count as interior points of the cell.
  bool contains_interior(const FlopConfig& cfg, const Vec3q& p) const {
    if (!contains(cfg, p)) return false;
    auto facet_key = [](const Vec3& a, const Vec3& b) {
      auto lex = [](const Vec3& x, const Vec3& y) {
        for (int i = 0; i < 3; ++i)
          if (x(i) != y(i)) return x(i) < y(i);
        return false;
      };
      return lex(a, b) ? std::pair<Vec3, Vec3>(a, b)
                       : std::pair<Vec3, Vec3>(b, a);
    };
    std::vector<std::pair<Vec3, Vec3>> keys;
    std::vector<int> counts;
    auto add = [&](const Vec3& a, const Vec3& b) {
      auto k = facet_key(a, b);
      for (std::size_t i = 0; i < keys.size(); ++i)
        if (keys[i] == k) {
          ++counts[i];
          return;
        }
      keys.push_back(k);
      counts.push_back(1);
    };
    for (const Sector& s : sectors) {
      add(s.rays[0], s.rays[1]);
      add(s.rays[0], s.rays[2]);
      add(s.rays[1], s.rays[2]);
    }
    if (full_turn && sectors.size() >= 2) {
      // the last sector is glued to the transported first sector
      int ds = sectors.back().sheet - sectors.front().sheet;
      Mat3 t = monodromy_power(cfg, ds);
      Mat3 ti = monodromy_power(cfg, -ds);
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          add(Vec3(t * sectors.front().rays[i]),
              Vec3(t * sectors.front().rays[j]));
          add(Vec3(ti * sectors.back().rays[i]),
              Vec3(ti * sectors.back().rays[j]));
        }
    }
    auto shared = [&](const Vec3& a, const Vec3& b) {
      auto k = facet_key(a, b);
      for (std::size_t i = 0; i < keys.size(); ++i)
        if (keys[i] == k) return counts[i] >= 2;
      return false;
    };
    for (const Sector& s : sectors) {
      Vec3q q = detail::mul(monodromy_power(cfg, s.sheet), p);
      if (!detail::sector_contains(s, q, false)) continue;
      Mat3 m;
      m.col(0) = s.rays[0];
      m.col(1) = s.rays[1];
      m.col(2) = s.rays[2];
      Int d = det3(m);
      Mat3 a = adjugate(m);
      int ds = sign(d);
      for (int i = 0; i < 3; ++i) {
        Rat lam =
            Rat(a(i, 0)) * q(0) + Rat(a(i, 1)) * q(1) + Rat(a(i, 2)) * q(2);
        if (sign(lam) * ds != 0) continue;
        // p lies on the facet opposite ray i
        const Vec3& x = s.rays[(i + 1) % 3];
        const Vec3& y = s.rays[(i + 2) % 3];
        if (!shared(x, y)) return false;
      }
    }
    return true;
  }
};

// A developed piece of a cell: one maximal run of sectors on a single
// sheet, presented by its extreme rays in sweep order.
struct DevelopedPiece {
  std::vector<Vec3> rays;  // developed coordinates
  int sheet = 0;
};

namespace detail {

// Crossing ray of the 2d cone <a, b> with the plane H, where phi changes
// sign strictly between a and b; result is primitive.
inline Vec3 h_crossing_ray(const FlopConfig& cfg, const Vec3& a,
                           const Vec3& b) {
  Int fa = wall_phi(cfg, a);
  Int fb = wall_phi(cfg, b);
  Vec3 w = vec3(fa * b(0) - fb * a(0), fa * b(1) - fb * a(1),
                fa * b(2) - fb * a(2));
  if (fa < 0) w = -w;
  return primitive(w);
}

}  // namespace detail

// Piece list of a cell: consecutive sectors merged per sheet.
inline std::vector<DevelopedPiece> pieces_of(const Cell& cell) {
  std::vector<DevelopedPiece> out;
  for (const Sector& s : cell.sectors) {
    if (out.empty() || out.back().sheet != s.sheet) {
      DevelopedPiece p;
      p.sheet = s.sheet;
      p.rays.assign(s.rays.begin(), s.rays.end());
      out.push_back(std::move(p));
    } else {
      for (const Vec3& r : s.rays) {
        bool seen = false;
        for (const Vec3& q : out.back().rays)
          if (q == r) {
            seen = true;
            break;
          }
        if (!seen) out.back().rays.push_back(r);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// develop: present a cone of trop U as linear pieces, one per sheet.
// ---------------------------------------------------------------------------

namespace detail {

struct HSlab {  // the 2d cone (cone of input) ∩ H
  std::vector<Vec3> rays;
  bool touches_plus = false;   // some ray with s > 0
  bool touches_minus = false;  // some ray with s < 0
  bool contains_ell = false;   // s changes sign across the slab
};

inline HSlab h_slab_of_hull(const FlopConfig& cfg,
                            const std::vector<Vec3>& rays) {
  HSlab slab;
  std::vector<Vec3> on_h;
  for (const Vec3& r : rays)
    if (wall_phi(cfg, r) == 0) on_h.push_back(r);
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      Int fi = wall_phi(cfg, rays[i]);
      Int fj = wall_phi(cfg, rays[j]);
      if ((fi > 0 && fj < 0) || (fi < 0 && fj > 0))
        on_h.push_back(detail::h_crossing_ray(cfg, rays[i], rays[j]));
    }
  slab.rays = on_h;
  int smin = 2, smax = -2;
  for (const Vec3& r : on_h) {
    int s = sign(ell_side(cfg, r));
    smin = std::min(smin, s);
    smax = std::max(smax, s);
  }
  slab.touches_plus = smax > 0;
  slab.touches_minus = smin < 0;
  slab.contains_ell = slab.touches_plus && slab.touches_minus;
  return slab;
}

}  // namespace detail

// sigma-like structure: a 3-generator cone whose hull in trop U wraps a
// full turn around ell. With roles (A, B, C): the B-C routes pass through
// the transparent side H-, while every A-C route bends through the cut,
// so the hull sweeps the whole angular neighbourhood of ell. Returns role
// indices or nullopt.
inline std::optional<std::array<int, 3>> sigma_like_roles(
    const FlopConfig& cfg, const std::vector<Vec3>& g) {
  if (g.size() != 3) return std::nullopt;
  Mat3 mi = monodromy_inverse(cfg);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      int k = 3 - i - j;
      if (!(wall_phi(cfg, g[i]) > 0 && wall_phi(cfg, g[j]) < 0)) continue;
      if (!(wall_phi(cfg, g[k]) > 0)) continue;
      // B-C side stays clear of the cut
      Vec3 u = detail::h_crossing_ray(cfg, g[k], g[j]);
      if (!(ell_side(cfg, u) < 0)) continue;
      // the A-C route bends in the open half-plane H+
      Vec3 w = detail::h_crossing_ray(cfg, g[i], Vec3(mi * g[j]));
      if (!(ell_side(cfg, w) > 0)) continue;
      return std::array<int, 3>{i, k, j};
    }
  return std::nullopt;
}

// Presentation of a full-turn cone: the fundamental piece on
// sheet 0 flanked by its one-crossing continuations on sheets -1 and +1.
inline std::vector<DevelopedPiece> develop_sigma_like(const FlopConfig& cfg,
                                                      const Vec3& A,
                                                      const Vec3& B,
                                                      const Vec3& C) {
  Mat3 m = monodromy(cfg);
  Mat3 mi = monodromy_inverse(cfg);
  Vec3 u = detail::h_crossing_ray(cfg, B, C);   // H- boundary of the slab
  Vec3 w = detail::h_crossing_ray(cfg, A, Vec3(mi * C));  // cut corner
  if (!(ell_side(cfg, u) < 0 && ell_side(cfg, w) > 0))
    throw std::invalid_argument("cone is not a sigma-like wrap around ell");
  std::vector<DevelopedPiece> out;
  out.push_back({{Vec3(mi * C), u, w}, -1});              // below, next copy
  out.push_back({{C, u, B, A, w}, 0});                    // fundamental
  out.push_back({{u, Vec3(m * B), Vec3(m * A), w}, +1});  // above, next copy
  return out;
}

// General develop. Input rays are given in fundamental coordinates with
// sheet tags; their developed positions must span a pointed cone. A cone
// whose interior crosses H+ is split along the cut into one piece per
// sheet; a full wrap around ell (sigma form, all tags equal) yields the
// three-sheet collar presentation above.
inline std::vector<DevelopedPiece> develop(
    const FlopConfig& cfg, const std::vector<SheetedVector>& rays) {
  if (rays.size() < 3)
    throw std::invalid_argument("develop needs at least three rays");
  std::vector<Vec3> dev;
  for (const SheetedVector& r : rays) dev.push_back(r.developed(cfg));
  for (std::size_t i = 0; i < dev.size(); ++i)
    for (std::size_t j = i + 1; j < dev.size(); ++j)
      if (parallel(dev[i], dev[j]))
        throw std::invalid_argument("develop requires pairwise non-parallel rays");
  bool full_dim = false;
  for (std::size_t i = 0; i < dev.size() && !full_dim; ++i)
    for (std::size_t j = i + 1; j < dev.size() && !full_dim; ++j)
      for (std::size_t k = j + 1; k < dev.size() && !full_dim; ++k) {
        Mat3 m;
        m.col(0) = dev[i];
        m.col(1) = dev[j];
        m.col(2) = dev[k];
        if (det3(m) != 0) full_dim = true;
      }

  bool same_sheet = true;
  for (const SheetedVector& r : rays)
    if (r.sheet != rays[0].sheet) same_sheet = false;

  if (same_sheet) {
    std::vector<Vec3> fund;
    for (const SheetedVector& r : rays) fund.push_back(r.v);
    if (auto roles = sigma_like_roles(cfg, fund)) {
      auto pieces = develop_sigma_like(cfg, fund[(*roles)[0]],
                                       fund[(*roles)[1]], fund[(*roles)[2]]);
      for (DevelopedPiece& p : pieces) p.sheet += rays[0].sheet;
      return pieces;
    }
  }
  if (!full_dim)
    throw std::invalid_argument("develop requires a full-dimensional cone");

  detail::HSlab slab = detail::h_slab_of_hull(cfg, dev);
  if (slab.contains_ell)
    throw std::invalid_argument("cone exceeds one developing turn");

  if (!slab.touches_plus) {
    // No crossing of the cut: one linear piece, as given.
    if (!same_sheet)
      throw std::invalid_argument("sheet tags disagree on an uncut cone");
    DevelopedPiece p;
    p.rays = dev;
    p.sheet = rays[0].sheet;
    return {p};
  }

  // The cone crosses the cut: split the hull along H.
  int lo = rays[0].sheet, hi = rays[0].sheet;
  for (const SheetedVector& r : rays) {
    lo = std::min(lo, r.sheet);
    hi = std::max(hi, r.sheet);
  }
  if (hi - lo != 1)
    throw std::invalid_argument("cut-crossing cone needs two adjacent sheets");
  // Validate tags: below H and above H must be internally consistent.
  std::optional<int> below_sheet, above_sheet;
  for (const SheetedVector& r : rays) {
    Int f = wall_phi(cfg, r.developed(cfg));
    if (f == 0) continue;
    std::optional<int>& slot = f < 0 ? below_sheet : above_sheet;
    if (slot && *slot != r.sheet)
      throw std::invalid_argument("inconsistent sheet tags across the cut");
    slot = r.sheet;
  }
  if (!below_sheet || !above_sheet)
    throw std::invalid_argument("cut-crossing cone must have rays on both sides");

  DevelopedPiece below, above;
  below.sheet = *below_sheet;
  above.sheet = *above_sheet;
  for (std::size_t i = 0; i < dev.size(); ++i) {
    Int f = wall_phi(cfg, dev[i]);
    if (f <= 0) below.rays.push_back(dev[i]);
    if (f >= 0) above.rays.push_back(dev[i]);
  }
  for (const Vec3& r : slab.rays) {
    bool dup = false;
    for (const Vec3& q : below.rays)
      if (parallel(q, r)) dup = true;
    if (!dup) {
      below.rays.push_back(r);
      above.rays.push_back(r);
    }
  }
  if (below.sheet < above.sheet) return {below, above};
  return {above, below};
}

// ---------------------------------------------------------------------------
// Convexity with respect to the integral affine structure.
// ---------------------------------------------------------------------------

namespace detail {

// Local convexity across the facet shared by two adjacent sectors: the
// far ray of the second sector, written in the basis (facet, flank of the
// first), must have a nonpositive flank coefficient.
inline bool convex_across(const Sector& s1, const Sector& s2) {
  // find the two shared rays
  std::vector<Vec3> shared;
  std::optional<Vec3> p, q;
  for (const Vec3& a : s1.rays) {
    bool in2 = false;
    for (const Vec3& b : s2.rays)
      if (a == b) in2 = true;
    if (in2)
      shared.push_back(a);
    else
      p = a;
  }
  for (const Vec3& b : s2.rays) {
    bool in1 = false;
    for (const Vec3& a : s1.rays)
      if (a == b) in1 = true;
    if (!in1) q = b;
  }
  if (shared.size() != 2 || !p || !q)
    throw std::logic_error("adjacent sectors do not share a facet");
  Mat3 m;
  m.col(0) = shared[0];
  m.col(1) = shared[1];
  m.col(2) = *p;
  Int d = det3(m);
  Mat3 a = adjugate(m);
  // coefficient of p in q = (adj row 2) . q / det
  Int numer = a(2, 0) * (*q)(0) + a(2, 1) * (*q)(1) + a(2, 2) * (*q)(2);
  return sign(numer) * sign(d) <= 0;
}

inline Sector transported(const FlopConfig& cfg, const Sector& s, int ds) {
  Mat3 t = monodromy_power(cfg, ds);
  Sector r;
  r.sheet = s.sheet + ds;
  for (int i = 0; i < 3; ++i) r.rays[i] = t * s.rays[i];
  return r;
}

}  // namespace detail

// Fan-convexity certificate: local convexity across every shared facet of
// the chain (and across the closing facet for a full turn).
inline bool fan_convex(const FlopConfig& cfg, const Cell& cell) {
  const auto& ss = cell.sectors;
  for (std::size_t i = 0; i + 1 < ss.size(); ++i)
    if (!detail::convex_across(ss[i], ss[i + 1])) return false;
  if (cell.full_turn && ss.size() >= 2) {
    int ds = ss.back().sheet - ss.front().sheet;
    Sector closing = detail::transported(cfg, ss.front(), ds);
    if (!detail::convex_across(ss.back(), closing)) return false;
  }
  return true;
}

// Segment cross-check: every unflagged straight-line realization between
// points of the generating rays must stay inside the cell. Pairs are
// sampled at the primitive generators and nearby scalings; each linear
// piece is sampled at its endpoints, midpoint and quarter points.
inline bool segments_inside(const FlopConfig& cfg, const Cell& cell) {
  static const int num_scales[3] = {1, 2, 1};
  static const int den_scales[3] = {1, 1, 2};
  const auto& gen = cell.generators;
  for (std::size_t i = 0; i < gen.size(); ++i)
    for (std::size_t j = i + 1; j < gen.size(); ++j) {
      if (on_ell(cfg, gen[i].v) || on_ell(cfg, gen[j].v)) continue;
      for (int si = 0; si < 3; ++si)
        for (int sj = 0; sj < 3; ++sj) {
          Vec3q p = to_rational(gen[i].v) * rat(num_scales[si], den_scales[si]);
          Vec3q q = to_rational(gen[j].v) * rat(num_scales[sj], den_scales[sj]);
          for (const Segment& seg : segments_between(cfg, p, q)) {
            if (seg.incident_to_ell) continue;
            for (const SegmentPiece& piece : seg.pieces) {
              const Rat quarters[3] = {rat(1, 4), rat(1, 2), rat(3, 4)};
              Vec3q pts[5];
              pts[0] = piece.from;
              pts[4] = piece.to;
              for (int k = 0; k < 3; ++k)
                pts[k + 1] =
                    piece.from + ((piece.to - piece.from) * quarters[k]).eval();
              for (const Vec3q& x : pts)
                if (!cell.contains(cfg, x)) return false;
            }
          }
        }
    }
  return true;
}

// Convexity with respect to the integral affine structure: the fan
// certificate and the segment oracle must both hold (they are asserted to
// agree in the test suite).
inline bool is_convex(const FlopConfig& cfg, const Cell& cell) {
  return fan_convex(cfg, cell) && segments_inside(cfg, cell);
}

}  // namespace flopcone
