#pragma once

// The aggregated identity suite behind `verify --n-max`: every exact
// statement the library asserts about a given width, run for n = 1..n_max
// and reported case by case.

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "flopcone/cone_engine.hpp"
#include "flopcone/dual.hpp"
#include "flopcone/theta.hpp"

namespace flopcone {

struct ReportCase {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<ReportCase> cases;

  bool all_pass() const {
    for (const ReportCase& c : cases)
      if (!c.pass) return false;
    return true;
  }

  int exit_status() const { return all_pass() ? 0 : 1; }
};

// Test hook: lets the suite run against deliberately corrupted inputs so
// that failures are reported rather than masked.
enum class Fault { none, flip_monodromy_entry };

namespace detail {

inline void run_case(Report& rep, const std::string& name,
                     const std::function<bool(std::string&)>& body) {
  ReportCase c;
  c.name = name;
  try {
    c.pass = body(c.detail);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = e.what();
  }
  rep.cases.push_back(std::move(c));
}

}  // namespace detail

inline Report run_verify(int n_max, Fault fault = Fault::none) {
  if (n_max < 1) throw std::invalid_argument("verify needs n_max >= 1");
  Report rep;
  rep.suite = "verify n=1.." + std::to_string(n_max);

  for (int n = 1; n <= n_max; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    std::string tag = "[n=" + std::to_string(n) + "] ";
    Mat3 mono = monodromy(cfg);
    if (fault == Fault::flip_monodromy_entry) mono(0, 2) = -mono(0, 2);

    detail::run_case(rep, tag + "inverse-transpose", [&](std::string& d) {
      Mat3 lhs = dual_monodromy(cfg);
      Mat3 rhs = inverse_transpose(mono);
      if (lhs == rhs) return true;
      d = "dual monodromy is not the inverse transpose of the monodromy";
      return false;
    });

    detail::run_case(rep, tag + "h-invariance", [&](std::string& d) {
      const Vec3 samples[] = {vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1),
                              vec3(3, -2, 5), vec3(-7, 4, 9)};
      for (const Vec3& v : samples)
        if (height(Vec3(mono * v)) != height(v)) {
          d = "h not invariant under the monodromy";
          return false;
        }
      if (Vec3(mono * vec3(0, n, 1)) != vec3(0, n, 1) ||
          Vec3(mono * vec3(1, 0, 0)) != vec3(1, 0, 0)) {
        d = "monodromy does not fix the plane H pointwise";
        return false;
      }
      return det3(mono) == 1;
    });

    detail::run_case(rep, tag + "sigma-convexity", [&](std::string&) {
      SigmaCone s(cfg);
      Cell sigma = build::sigma_like(cfg, s.d1(), s.d2(), s.d3(), "sigma");
      return is_convex(cfg, sigma);
    });

    detail::run_case(rep, tag + "admissible-sides", [&](std::string& d) {
      for (int b = 1; b <= 2; ++b)
        for (Int a = 1; a < 2 * Int(n) * b; ++a) {
          FlopConfig c(n, a, b);
          std::set<Side> s = admissible_sides(c);
          Int nb = Int(n) * b;
          std::set<Side> expect = a < nb ? std::set<Side>{Side::A}
                                 : a > nb ? std::set<Side>{Side::B}
                                          : std::set<Side>{Side::A, Side::B};
          if (s != expect) {
            d = "trichotomy fails at a=" + a.get_str() +
                " b=" + std::to_string(b);
            return false;
          }
        }
      return true;
    });

    detail::run_case(rep, tag + "pagoda-smooth", [&](std::string& d) {
      ConeComplex px = pagoda(cfg);
      if (px.cells.size() != std::size_t(2 * n + 1)) {
        d = "expected " + std::to_string(2 * n + 1) + " cells, got " +
            std::to_string(px.cells.size());
        return false;
      }
      for (const Cell& c : px.cells)
        if (!smooth(c)) {
          d = "cell " + c.label + " is not smooth";
          return false;
        }
      return true;
    });

    if (n >= 2) {
      detail::run_case(rep, tag + "conjugation", [&](std::string&) {
        Mat3 p = pagoda_conjugator();
        Mat3 m_prev = monodromy(FlopConfig::canonical(n - 1));
        return Mat3(p * mono * inverse_unimodular(p)) == m_prev;
      });
    }

    detail::run_case(rep, tag + "wall-relation-ladder", [&](std::string& d) {
      ConeComplex px = pagoda(cfg);
      for (const Wall& w : px.walls) {
        if (w.curve.substr(0, 1) != "C") continue;
        int k = std::stoi(w.curve.substr(1)) + 1;  // wall <f_k, f_{k-1}>
        ComplexWallRelation r = wall_relation_in(px, w);
        if (!(r.rel.a + r.rel.b == 0 &&
              (r.rel.self_ints == std::pair<Int, Int>(Int(2), Int(-2)) ||
               r.rel.self_ints == std::pair<Int, Int>(Int(-2), Int(2))))) {
          d = "ladder fails at k=" + std::to_string(k);
          return false;
        }
      }
      return true;
    });

    detail::run_case(rep, tag + "slice-counts", [&](std::string& d) {
      if (slice_points(cfg, 1).size() != 3) {
        d = "height 1 slice";
        return false;
      }
      if (slice_points(cfg, 2).size() != 7) {
        d = "height 2 slice";
        return false;
      }
      return true;
    });

    detail::run_case(rep, tag + "pairing-table", [&](std::string& d) {
      DualPoint x(Chart::V1, vec3(1, 0, 0)), y(Chart::V1, vec3(0, 1, 0));
      DualPoint z(Chart::V2, vec3(1, 0, 0)), t(Chart::V1, vec3(0, 0, 1));
      Vec3 d1 = vec3(1, 1, 0), d2 = vec3(0, 1, 0), d3 = vec3(0, 0, 1);
      Vec3 v = vec3(n, n, 1);
      const struct {
        Vec3 u;
        Rat ex, ey, ez, et;
      } rows[] = {
          {d2, 0, 1, 1, 0}, {d3, 0, 0, 0, 1}, {v, n, n, n, 1},
          {d1, 1, 1, 0, 0},
      };
      for (const auto& row : rows) {
        if (pair(cfg, row.u, x) != row.ex || pair(cfg, row.u, y) != row.ey ||
            pair(cfg, row.u, z) != row.ez || pair(cfg, row.u, t) != row.et) {
          d = "pairing table row mismatch";
          return false;
        }
      }
      return true;
    });

    detail::run_case(rep, tag + "w1-recovery", [&](std::string& d) {
      std::vector<Vec3> tau1 = {vec3(0, 1, 0), vec3(0, 0, 1), vec3(n, n, 1)};
      DualHilbert h = dual_hilbert(cfg, dual_cone(cfg, tau1));
      std::vector<DualPoint> expect = {
          DualPoint(Chart::V1, vec3(0, 0, 1)),
          DualPoint(Chart::V1, vec3(0, 1, 0)),
          DualPoint(Chart::V1, vec3(1, 0, 0)),
          DualPoint(Chart::V2, vec3(1, -1, 0))};
      if (h.glued.size() != expect.size()) {
        d = "expected 4 generators, got " + std::to_string(h.glued.size());
        return false;
      }
      for (const DualPoint& e : expect) {
        bool found = false;
        for (const DualPoint& g : h.glued)
          if (g == e) found = true;
        if (!found) {
          d = "missing W1 generator";
          return false;
        }
      }
      return true;
    });

    detail::run_case(rep, tag + "mirror-minors", [&](std::string& d) {
      MinorCheck mc = verify_minors(cfg);
      d = mc.failing;
      return mc.ok;
    });

    detail::run_case(rep, tag + "binomial-relations", [&](std::string& d) {
      for (int k = 0; k <= n; ++k)
        if (!binomial_relation(cfg, k)) {
          d = "k=" + std::to_string(k);
          return false;
        }
      return true;
    });

    detail::run_case(rep, tag + "base-relations", [&](std::string& d) {
      IdentityCheck c = base_relations(cfg);
      d = c.failing;
      return c.ok;
    });

    detail::run_case(rep, tag + "chart-identities", [&](std::string& d) {
      IdentityCheck c = chart_identities(cfg);
      d = c.failing;
      return c.ok;
    });
  }
  return rep;
}

inline std::string render(const Report& rep) {
  std::ostringstream os;
  os << rep.suite << "\n";
  for (const ReportCase& c : rep.cases) {
    os << (c.pass ? "  pass  " : "  FAIL  ") << c.name;
    if (!c.pass && !c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  os << (rep.all_pass() ? "all cases passed" : "FAILURES PRESENT") << "\n";
  return os.str();
}

}  // namespace flopcone
