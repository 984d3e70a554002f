#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "flopcone/dual.hpp"

using namespace flopcone;

TEST_CASE("pairing table of the flop chart functions") {
  for (int n = 1; n <= 8; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    DualPoint x(Chart::V1, vec3(1, 0, 0));
    DualPoint y(Chart::V1, vec3(0, 1, 0));
    DualPoint z(Chart::V2, vec3(1, 0, 0));
    DualPoint t(Chart::V1, vec3(0, 0, 1));
    Vec3 d1 = vec3(1, 1, 0), d2 = vec3(0, 1, 0), d3 = vec3(0, 0, 1);
    Vec3 v = vec3(n, n, 1);
    // rows d2, d3, v against columns x, y, z, t
    CHECK(pair(cfg, d2, x) == 0);
    CHECK(pair(cfg, d2, y) == 1);
    CHECK(pair(cfg, d2, z) == 1);
    CHECK(pair(cfg, d2, t) == 0);
    CHECK(pair(cfg, d3, x) == 0);
    CHECK(pair(cfg, d3, y) == 0);
    CHECK(pair(cfg, d3, z) == 0);
    CHECK(pair(cfg, d3, t) == 1);
    CHECK(pair(cfg, v, x) == n);
    CHECK(pair(cfg, v, y) == n);
    CHECK(pair(cfg, v, z) == n);
    CHECK(pair(cfg, v, t) == 1);
    // corner values of the four chart functions at d1, d2, d3
    CHECK(pair(cfg, d1, x) == 1);
    CHECK(pair(cfg, d1, y) == 1);
    CHECK(pair(cfg, d1, z) == 0);
    CHECK(pair(cfg, d1, t) == 0);
  }
}

TEST_CASE("dual monodromy equals A-^{-1} A+ and the inverse transpose") {
  for (int n = 1; n <= 8; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    Mat3 mstar = dual_monodromy(cfg);
    Mat3 expect;
    expect << 1, 0, 0, -1, 1, 0, n, 0, 1;
    CHECK(mstar == expect);
    CHECK(mstar == inverse_transpose(monodromy(cfg)));
  }
  // n = 1 value quoted in the text
  Mat3 m1 = dual_monodromy(FlopConfig::canonical(1));
  Mat3 e1;
  e1 << 1, 0, 0, -1, 1, 0, 1, 0, 1;
  CHECK(m1 == e1);
}

TEST_CASE("transport across Pi") {
  for (int n = 1; n <= 4; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    DualPoint x(Chart::V1, vec3(1, 0, 0));
    DualPoint xp = transport_across_pi(cfg, x, PiSide::plus);
    CHECK(xp.chart == Chart::V2);
    CHECK(xp.exps == vec3(1, -2, 0));  // z -> x^{-1} y^2 shadow
    DualPoint xm = transport_across_pi(cfg, x, PiSide::minus);
    CHECK(xm.chart == Chart::V2);
    CHECK(xm.exps == vec3(1, -1, -n));  // z -> x^{-1} y t^n shadow
    // across Pi+ then back across Pi- composes to M_{ell*}
    DualPoint back = transport_across_pi(cfg, xp, PiSide::minus);
    CHECK(back.chart == Chart::V1);
    CHECK(back.exps == Vec3(dual_monodromy(cfg) * x.exps));
  }
}

TEST_CASE("points on Pi are shared between the charts") {
  DualPoint a(Chart::V1, vec3(0, 3, -2));
  DualPoint b(Chart::V2, vec3(0, 3, -2));
  CHECK(a == b);
  DualPoint c(Chart::V1, vec3(1, 3, -2));
  DualPoint d(Chart::V2, vec3(1, 3, -2));
  CHECK_FALSE(c == d);
  CHECK_THROWS_AS(DualPoint(Chart::V1, vec3(-1, 0, 0)), std::invalid_argument);
}

TEST_CASE("sigma dualizes to the two nonnegative orthants") {
  for (int n = 1; n <= 6; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    std::vector<Vec3> sigma = {vec3(1, 1, 0), vec3(0, 1, 0), vec3(0, 0, 1)};
    DualCone dc = dual_cone(cfg, sigma);
    DualHilbert h = dual_hilbert(cfg, dc);
    std::vector<Vec3> orthant = {vec3(0, 0, 1), vec3(0, 1, 0), vec3(1, 0, 0)};
    CHECK(h.half1 == orthant);
    CHECK(h.half2 == orthant);
  }
}

TEST_CASE("tau1 dualizes to the W1 chart") {
  for (int n = 1; n <= 6; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    std::vector<Vec3> tau1 = {vec3(0, 1, 0), vec3(0, 0, 1), vec3(n, n, 1)};
    DualCone dc = dual_cone(cfg, tau1);
    DualHilbert h = dual_hilbert(cfg, dc);
    // V1 half: x, y, t; V2 half: y, t, y^{-1} z
    std::vector<Vec3> v1 = {vec3(0, 0, 1), vec3(0, 1, 0), vec3(1, 0, 0)};
    std::vector<Vec3> v2 = {vec3(0, 0, 1), vec3(0, 1, 0), vec3(1, -1, 0)};
    CHECK(h.half1 == v1);
    CHECK(h.half2 == v2);
    // glued: 4 theta functions x, y, t, y^{-1}z
    REQUIRE(h.glued.size() == 4);
    CHECK(h.glued[3] == DualPoint(Chart::V2, vec3(1, -1, 0)));
  }
}

TEST_CASE("dual of the apex is everything") {
  FlopConfig cfg = FlopConfig::canonical(2);
  DualCone dc = dual_cone(cfg, {});
  CHECK(dc.contains(DualPoint(Chart::V1, vec3(5, -7, 3))));
  CHECK(dc.contains(DualPoint(Chart::V2, vec3(0, 9, -4))));
}

TEST_CASE("dualizing a non-convex cone is rejected") {
  FlopConfig cfg = FlopConfig::canonical(2);
  ConeComplex a = flop_subdivision(cfg, Side::A);
  std::vector<Vec3> gens;
  for (const SheetedVector& g : a.cells[1].generators) gens.push_back(g.v);
  CHECK_THROWS_AS(dual_cone(cfg, gens, &a.cells[1]), std::invalid_argument);
}

TEST_CASE("duality consistency: pairings of sigma generators vs sigma*") {
  for (int n = 1; n <= 4; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    std::vector<Vec3> sigma = {vec3(1, 1, 0), vec3(0, 1, 0), vec3(0, 0, 1)};
    DualHilbert h = dual_hilbert(cfg, dual_cone(cfg, sigma));
    for (const DualPoint& v : h.glued)
      for (const Vec3& g : sigma) CHECK(pair(cfg, g, v) >= 0);
    // every facet of sigma is cut out by some dual generator
    // facets: x = 0 (d2, d3), z = 0 (d1, d2), bent face (d1, d3)
    auto vanishes_on = [&](const Vec3& g1, const Vec3& g2) {
      for (const DualPoint& v : h.glued)
        if (pair(cfg, g1, v) == 0 && pair(cfg, g2, v) == 0) return true;
      return false;
    };
    CHECK(vanishes_on(vec3(0, 1, 0), vec3(0, 0, 1)));
    CHECK(vanishes_on(vec3(1, 1, 0), vec3(0, 1, 0)));
    CHECK(vanishes_on(vec3(1, 1, 0), vec3(0, 0, 1)));
  }
}

TEST_CASE("concavity of the V2 pairing in u") {
  // min-form concavity on a deterministic pseudo-random sample
  FlopConfig cfg = FlopConfig::canonical(3);
  DualPoint z(Chart::V2, vec3(2, 1, 1));
  std::uint64_t s = 88172645463325252ull;
  auto next = [&]() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return int(s % 21) - 10;
  };
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    Vec3q u1 = vec3q(Rat(next()), Rat(next()), Rat(next()));
    Vec3q u2 = vec3q(Rat(next()), Rat(next()), Rat(next()));
    Vec3q mid = (u1 + u2) * rat(1, 2);
    CHECK(pair(cfg, mid, z) * 2 >= pair(cfg, u1, z) + pair(cfg, u2, z));
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("hilbert basis basics") {
  // nonnegative orthant
  auto orth = hilbert_basis({vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)});
  REQUIRE(orth.size() == 3);
  // A_{n-1} semigroup <(0,1),(n,1)> embedded at z = 0
  for (int n = 1; n <= 6; ++n) {
    auto hb = hilbert_basis({vec3(0, 1, 0), vec3(n, 1, 0)});
    REQUIRE(hb.size() == std::size_t(n + 1));
    for (int k = 0; k <= n; ++k) CHECK(hb[std::size_t(k)] == vec3(k, 1, 0));
  }
  // non-pointed input is rejected
  CHECK_THROWS_AS(hilbert_basis({vec3(1, 0, 0), vec3(-1, 0, 0), vec3(0, 1, 0)}),
                  std::invalid_argument);
}

namespace {

// independent brute-force oracle over machine integers (the coordinates
// in play are tiny): enumerate cone points in a box and keep those that
// are not a sum of two nonzero cone points
std::vector<Vec3> brute_minimal_generators(const ChartCone& cc, int bound) {
  std::vector<std::array<long, 3>> ineqs;
  for (const Vec3& n : cc.ineqs)
    ineqs.push_back({n(0).get_si(), n(1).get_si(), n(2).get_si()});
  auto inside = [&](long a, long b, long c) {
    for (const auto& n : ineqs)
      if (n[0] * a + n[1] * b + n[2] * c < 0) return false;
    return true;
  };
  std::vector<std::array<long, 3>> pts;
  for (long a = 0; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b)
      for (long c = -bound; c <= bound; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        if (inside(a, b, c)) pts.push_back({a, b, c});
      }
  std::vector<Vec3> minimal;
  for (const auto& p : pts) {
    bool reducible = false;
    for (const auto& q : pts) {
      long r0 = p[0] - q[0], r1 = p[1] - q[1], r2 = p[2] - q[2];
      if (r0 == 0 && r1 == 0 && r2 == 0) continue;
      if (inside(r0, r1, r2)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) minimal.push_back(vec3(p[0], p[1], p[2]));
  }
  std::sort(minimal.begin(), minimal.end(), detail::lex_less);
  return minimal;
}

}  // namespace

TEST_CASE("hilbert basis of a square cone, generators in any order") {
  // cone over a unit square (the toric double point); its Hilbert basis
  // is exactly the four corner rays, whatever order they arrive in
  std::vector<Vec3> square = {vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1),
                              vec3(1, -1, 1)};
  std::vector<Vec3> expect = square;
  std::sort(expect.begin(), expect.end(), detail::lex_less);
  std::vector<std::vector<Vec3>> orders = {
      {square[0], square[1], square[2], square[3]},
      {square[0], square[2], square[1], square[3]},
      {square[3], square[1], square[0], square[2]},
  };
  for (const auto& gens : orders) CHECK(hilbert_basis(gens) == expect);
}

TEST_CASE("hilbert basis matches brute-force minimal generators") {
  for (int n = 1; n <= 6; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    std::vector<Vec3> tau1 = {vec3(0, 1, 0), vec3(0, 0, 1), vec3(n, n, 1)};
    DualCone dc = dual_cone(cfg, tau1);
    for (const ChartCone* cc : {&dc.half1, &dc.half2}) {
      auto hb = hilbert_basis(chart_cone_generators(*cc));
      CHECK(hb == brute_minimal_generators(*cc, 4 * n));
    }
  }
}
