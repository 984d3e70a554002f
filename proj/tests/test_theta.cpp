#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flopcone/cone_engine.hpp"
#include "flopcone/theta.hpp"

using namespace flopcone;

TEST_CASE("theta closed form") {
  for (int n = 1; n <= 8; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    // theta_{(0,1,0)} = v(1+u)
    CHECK(theta(cfg, vec3(0, 1, 0)) == v_mono() * one_plus_u());
    // theta_{(i,i,1)} = u^i v^i w for 1 <= i <= n
    for (int i = 1; i <= n; ++i)
      CHECK(theta(cfg, vec3(i, i, 1)) == LaurentPoly::monomial(1, {i, i, 1}));
    CHECK(theta(cfg, vec3(0, 0, 0)) == LaurentPoly::constant(1));
  }
}

TEST_CASE("theta branch agreement on the wall b = nc") {
  for (int n = 1; n <= 6; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    for (int c = -2; c <= 2; ++c)
      for (int a = -2; a <= 2; ++a) {
        Vec3 p = vec3(a, Int(n) * c, c);
        // both branch formulas must agree: (1+u)^0 = 1
        LaurentPoly mono = LaurentPoly::monomial(1, {a, Int(n).get_si() * c, c});
        CHECK(theta(cfg, p) == mono);
      }
  }
}

TEST_CASE("wall crossing automorphism") {
  for (int n = 1; n <= 4; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    FormalFraction f1 = wall_cross(cfg, vec3(0, 1, 0));
    CHECK(f1.is_polynomial());
    CHECK(f1.num == v_mono() * one_plus_u());
    FormalFraction f2 = wall_cross(cfg, vec3(0, 0, 1));
    CHECK(f2.k == n);
    CHECK(f2.num == w_mono());
    FormalFraction f3 = wall_cross(cfg, vec3(0, n, 1));
    CHECK(f3.is_polynomial());
    CHECK(f3.num == LaurentPoly::monomial(1, {0, n, 1}));
  }
}

TEST_CASE("wall crossing is monomial-multiplicative") {
  FlopConfig cfg = FlopConfig::canonical(3);
  const Vec3 ms[] = {vec3(0, 1, 0), vec3(0, 0, 1), vec3(2, -1, 1),
                     vec3(1, 4, -1), vec3(-1, 2, 2)};
  for (const Vec3& m1 : ms)
    for (const Vec3& m2 : ms) {
      FormalFraction lhs = wall_cross(cfg, Vec3(m1 + m2));
      FormalFraction rhs = wall_cross(cfg, m1) * wall_cross(cfg, m2);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("theta reduces to the wall crossing image on b - nc >= 0") {
  FlopConfig cfg = FlopConfig::canonical(2);
  for (int a = -1; a <= 2; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = -1; c <= 1; ++c) {
        if (b - cfg.n * c < 0) continue;
        FormalFraction f = wall_cross(cfg, vec3(a, b, c));
        REQUIRE(f.is_polynomial());
        CHECK(f.num == theta(cfg, vec3(a, b, c)));
      }
}

TEST_CASE("mirror matrix shape and minor count") {
  MirrorIdeal m1 = mirror_ideal(1);
  CHECK(m1.minors.empty());
  CHECK(m1.nvars == 4);

  MirrorIdeal m2 = mirror_ideal(2);
  REQUIRE(m2.minors.size() == 1);
  // (th1+th2)*th4 - th1*th2*th3
  ThetaPoly th1 = ThetaPoly::variable(5, 0), th2 = ThetaPoly::variable(5, 1),
            th3 = ThetaPoly::variable(5, 2), th4 = ThetaPoly::variable(5, 3);
  ThetaPoly expect = (th1 + th2) * th4 - th1 * th2 * th3;
  CHECK((m2.minors[0] - expect).is_zero());

  CHECK(mirror_ideal(3).minors.size() == 3);
  CHECK(mirror_ideal(5).minors.size() == 10);
  CHECK(mirror_ideal(5).codimension == 5);
  CHECK(mirror_ideal(8).minors.size() == 28);
}

TEST_CASE("all minors vanish under the theta substitution") {
  for (int n = 1; n <= 8; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    MinorCheck r = verify_minors(cfg);
    INFO("n = " << n << " failing: " << r.failing);
    CHECK(r.ok);
  }
}

TEST_CASE("binomial relation for all 0 <= k <= n") {
  for (int n = 1; n <= 8; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    for (int k = 0; k <= n; ++k) CHECK(binomial_relation(cfg, k));
    CHECK_THROWS_AS(binomial_relation(cfg, n + 1), std::invalid_argument);
  }
}

TEST_CASE("base relations and chart identities") {
  for (int n = 1; n <= 8; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    IdentityCheck b = base_relations(cfg);
    INFO("base: " << b.failing << " " << b.detail);
    CHECK(b.ok);
    IdentityCheck c = chart_identities(cfg);
    INFO("chart: " << c.failing << " " << c.detail);
    CHECK(c.ok);
    // expected expansions stated explicitly
    CHECK(theta(cfg, vec3(0, 1, 1)) == v_mono() * w_mono());
    CHECK(theta(cfg, vec3(2, 1, 1)) ==
          u_mono() * u_mono() * v_mono() * w_mono());
  }
}

TEST_CASE("theta coefficients are nonnegative on sigma up to height 6") {
  for (int n = 1; n <= 4; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    for (int h = 0; h <= 6; ++h) {
      for (const Vec3& p : slice_points(cfg, h)) {
        LaurentPoly t = theta(cfg, p);
        for (const auto& [e, c] : t.terms()) CHECK(c > 0);
      }
    }
  }
}
