#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flopcone/trop_u.hpp"

using namespace flopcone;

namespace {
Vec3q q3(int x, int y, int z) { return vec3q(Rat(x), Rat(y), Rat(z)); }
}

TEST_CASE("monodromy matrix and its fixed vectors") {
  for (int n = 1; n <= 8; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    Mat3 m = monodromy(cfg);
    Mat3 expect;
    expect << 1, 1, -n, 0, 1, 0, 0, 0, 1;
    CHECK(m == expect);
    CHECK(det3(m) == 1);
    CHECK(Vec3(m * vec3(0, n, 1)) == vec3(0, n, 1));
    CHECK(Vec3(m * vec3(n, n, 1)) == vec3(n, n, 1));
    CHECK(Vec3(m * vec3(1, 0, 0)) == vec3(1, 0, 0));
    // M d2 = d1 and M d1 = (2,1,0)
    CHECK(Vec3(m * vec3(1, 1, 0)) == vec3(2, 1, 0));
    // monodromy does not depend on the singular line position
    CHECK(monodromy(FlopConfig(n, 1, 1)) == expect);
    CHECK(monodromy(FlopConfig(n, 2 * n, 2)) == expect);
  }
}

TEST_CASE("monodromy powers and transport") {
  FlopConfig cfg = FlopConfig::canonical(3);
  CHECK(monodromy_power(cfg, 0) == Mat3::Identity());
  CHECK(monodromy_power(cfg, 1) == monodromy(cfg));
  CHECK(monodromy_power(cfg, -1) == monodromy_inverse(cfg));
  CHECK(Mat3(monodromy(cfg) * monodromy(cfg)) == monodromy_power(cfg, 2));
  SheetedVector d1(vec3(1, 1, 0), 0);
  SheetedVector up = d1.transported(cfg, 1);
  CHECK(up.sheet == 1);
  CHECK(up.v == vec3(2, 1, 0));
  CHECK(up.transported(cfg, -1).v == d1.v);
}

TEST_CASE("h is monodromy invariant") {
  FlopConfig cfg = FlopConfig::canonical(5);
  Mat3 m = monodromy(cfg);
  const Vec3 samples[] = {vec3(1, 2, 3), vec3(-4, 0, 7), vec3(9, -2, 1)};
  for (const Vec3& v : samples) CHECK(height(Vec3(m * v)) == height(v));
}

TEST_CASE("wall classification") {
  FlopConfig cfg = FlopConfig::canonical(2);
  CHECK(classify_on_h(cfg, vec3(1, 1, 1)) == HClass::not_on_h);
  CHECK(classify_on_h(cfg, vec3(5, 2, 1)) == HClass::h_plus);
  CHECK(classify_on_h(cfg, vec3(1, 2, 1)) == HClass::h_minus);
  CHECK(classify_on_h(cfg, vec3(2, 2, 1)) == HClass::on_ell);
  CHECK(classify_on_h(cfg, vec3(4, 4, 2)) == HClass::on_ell);
  CHECK(on_ell(cfg, vec3(-2, -2, -1)));  // ell is a line
  // moved line (a, nb, b) = (1, 2, 1)
  FlopConfig moved(2, 1, 1);
  CHECK(classify_on_h(moved, vec3(2, 2, 1)) == HClass::h_plus);
  CHECK(classify_on_h(moved, vec3(1, 2, 1)) == HClass::on_ell);
}

TEST_CASE("segments: straight through H- only") {
  // (n,a,b) = (2,2,1): d2 -> d3 crosses H at (0, 2/3, 1/3) in H-
  FlopConfig cfg(2, 2, 1);
  auto segs = segments_between(cfg, q3(0, 1, 0), q3(0, 0, 1));
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].pieces.size() == 1);
  CHECK(segs[0].bends.empty());
  CHECK_FALSE(segs[0].incident_to_ell);
  // crossing point of the euclidean segment
  Vec3q c = vec3q(Rat(0), rat(2, 3), rat(1, 3));
  CHECK(wall_phi(cfg, c) == 0);
  CHECK(ell_side(cfg, c) < 0);
}

TEST_CASE("segments: bent realization appears when a < nb") {
  FlopConfig cfg(2, 1, 1);
  auto segs = segments_between(cfg, q3(0, 1, 0), q3(0, 0, 1));
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].bends.empty());
  REQUIRE(segs[1].bends.size() == 1);
  CHECK(segs[1].pieces.size() == 2);
  // bend lies in H+ and on the first piece
  const SegmentBend& b = segs[1].bends[0];
  CHECK(wall_phi(cfg, b.at) == 0);
  CHECK(ell_side(cfg, b.at) > 0);
  CHECK(b.direction == 1);  // crossing from y > nz toward y < nz
  // tangent after the bend = M * tangent before, up to positive scale
  Vec3q t1 = segs[1].pieces[0].tangent();
  Vec3q t2 = segs[1].pieces[1].tangent();
  Mat3 m = monodromy(cfg);
  Vec3q mt1;
  for (int i = 0; i < 3; ++i)
    mt1(i) = Rat(m(i, 0)) * t1(0) + Rat(m(i, 1)) * t1(1) + Rat(m(i, 2)) * t1(2);
  // proportional with positive factor
  CHECK(mt1(0) * t2(1) == mt1(1) * t2(0));
  CHECK(mt1(1) * t2(2) == mt1(2) * t2(1));
}

TEST_CASE("segments: straight through ell is flagged at the critical config") {
  FlopConfig cfg(2, 2, 1);
  auto segs = segments_between(cfg, q3(1, 1, 0), q3(0, 0, 1));
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].incident_to_ell);
  CHECK(segs[0].bends.empty());
  CHECK_FALSE(segs[1].incident_to_ell);
  CHECK(segs[1].bends.size() == 1);
  CHECK(ell_side(cfg, segs[1].bends[0].at) > 0);
}

TEST_CASE("segments: endpoints on ell are rejected") {
  FlopConfig cfg = FlopConfig::canonical(2);
  CHECK_THROWS_AS(segments_between(cfg, q3(2, 2, 1), q3(0, 0, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(segments_between(cfg, q3(0, 1, 0), q3(4, 4, 2)),
                  std::invalid_argument);
}

TEST_CASE("segments: at most two, retracing flips the bend") {
  const FlopConfig cfgs[] = {FlopConfig::canonical(1), FlopConfig::canonical(2),
                             FlopConfig(2, 1, 1), FlopConfig(3, 2, 1),
                             FlopConfig(2, 3, 1)};
  const Vec3q pts[] = {q3(0, 1, 0), q3(0, 0, 1), q3(1, 1, 0), q3(3, 1, 1),
                       q3(1, 0, 1), q3(0, 3, 1), q3(5, 2, 1)};
  for (const FlopConfig& cfg : cfgs)
    for (const Vec3q& p : pts)
      for (const Vec3q& q : pts) {
        if (p == q || on_ell(cfg, p) || on_ell(cfg, q)) continue;
        auto fwd = segments_between(cfg, p, q);
        auto bwd = segments_between(cfg, q, p);
        CHECK(fwd.size() <= 2);
        CHECK(fwd.size() == bwd.size());
        for (const Segment& s : fwd) CHECK(s.bends.size() <= 1);
        // match bent segments: same bend point, inverse direction
        for (const Segment& s : fwd) {
          if (s.bends.empty()) continue;
          bool matched = false;
          for (const Segment& t : bwd) {
            if (t.bends.empty()) continue;
            if (t.bends[0].at == s.bends[0].at &&
                t.bends[0].direction == -s.bends[0].direction)
              matched = true;
          }
          CHECK(matched);
        }
      }
}

TEST_CASE("moved singular line: d1-d3 straight no longer meets ell") {
  // a > nb: the straight rho1-rho3 line passes through H- and is valid
  FlopConfig cfg(2, 3, 1);
  auto segs = segments_between(cfg, q3(1, 1, 0), q3(0, 0, 1));
  REQUIRE(!segs.empty());
  CHECK_FALSE(segs[0].incident_to_ell);
  CHECK(segs[0].bends.empty());
}
