#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flopcone/lattice.hpp"
#include "flopcone/trop_u.hpp"

using namespace flopcone;

TEST_CASE("primitive divides by the gcd") {
  CHECK(primitive(vec3(2, 2, 0)) == vec3(1, 1, 0));
  CHECK(primitive(vec3(6, 4, 2)) == vec3(3, 2, 1));
  for (int n = 1; n <= 8; ++n)
    CHECK(primitive(vec3(n, n, 1)) == vec3(n, n, 1));
  CHECK(primitive(vec3(0, 0, -5)) == vec3(0, 0, -1));
  CHECK_THROWS_AS(primitive(vec3(0, 0, 0)), std::invalid_argument);
}

TEST_CASE("primitive is idempotent and scale invariant") {
  const Vec3 samples[] = {vec3(2, -4, 6), vec3(0, 3, 9), vec3(5, 7, 11),
                          vec3(-8, 0, 12)};
  for (const Vec3& v : samples) {
    Vec3 p = primitive(v);
    CHECK(primitive(p) == p);
    for (int k = 1; k <= 4; ++k) CHECK(primitive((v * Int(k)).eval()) == p);
    CHECK(gcd_of(p) == 1);
  }
}

TEST_CASE("inverse_transpose on the monodromy and gluing matrices") {
  Mat3 id = Mat3::Identity();
  CHECK(inverse_transpose(id) == id);

  for (int n = 1; n <= 8; ++n) {
    Mat3 m;
    m << 1, 1, -n, 0, 1, 0, 0, 0, 1;
    Mat3 expect;  // computed by hand: invert then transpose
    expect << 1, 0, 0, -1, 1, 0, n, 0, 1;
    CHECK(inverse_transpose(m) == expect);
    // (M^-1)^t * M^t = identity
    CHECK(Mat3(inverse_transpose(m) * Mat3(m.transpose())) == id);
  }

  Mat3 a_plus;
  a_plus << 1, 0, 0, -2, 1, 0, 0, 0, 1;
  Mat3 expect;
  expect << 1, 2, 0, 0, 1, 0, 0, 0, 1;
  CHECK(inverse_transpose(a_plus) == expect);

  Mat3 bad;
  bad << 2, 0, 0, 0, 1, 0, 0, 0, 1;
  CHECK_THROWS_AS(inverse_transpose(bad), std::invalid_argument);
}

TEST_CASE("inverse_transpose is an involution on unimodular matrices") {
  std::vector<Mat3> ms;
  for (int n = 1; n <= 5; ++n) {
    Mat3 m;
    m << 1, 1, -n, 0, 1, 0, 0, 0, 1;
    ms.push_back(m);
  }
  Mat3 a_minus;
  a_minus << 1, 0, 0, -1, 1, 0, -3, 0, 1;
  ms.push_back(a_minus);
  Mat3 p;
  p << 1, 0, -1, 0, 1, -1, 0, 0, 1;
  ms.push_back(p);
  for (const Mat3& m : ms) {
    CHECK(inverse_transpose(inverse_transpose(m)) == m);
    CHECK(is_unimodular(m));
  }
}

TEST_CASE("cone_index_2d") {
  for (int n = 1; n <= 8; ++n)
    CHECK(cone_index_2d(vec2(0, 1), vec2(n, 1)) == n);
  CHECK(cone_index_2d(vec2(1, 0), vec2(0, 1)) == 1);
  CHECK(cone_index_2d(vec2(1, 1), vec2(-1, 1)) == 2);
  CHECK_THROWS_AS(cone_index_2d(vec2(2, 4), vec2(1, 2)),
                  std::invalid_argument);
}

TEST_CASE("adjugate inverse is exact") {
  Mat3 m;
  m << 1, 2, 3, 0, 1, 4, 0, 0, 1;
  CHECK(is_unimodular(m));
  CHECK(Mat3(inverse_unimodular(m) * m) == Mat3::Identity());
  Mat3 neg;
  neg << 0, 1, 0, 1, 0, 0, 0, 0, 1;
  CHECK(det3(neg) == -1);
  CHECK(Mat3(inverse_unimodular(neg) * neg) == Mat3::Identity());
}

TEST_CASE("complete_ray_to_basis sends the ray to e3") {
  const Vec3 samples[] = {vec3(0, 1, 0),  vec3(0, 0, 1), vec3(0, 0, -1),
                          vec3(1, 1, 0),  vec3(2, 2, 1), vec3(3, -5, 7),
                          vec3(-4, 6, 9), vec3(1, 0, 0)};
  for (const Vec3& v : samples) {
    Vec3 p = primitive(v);
    Mat3 u = complete_ray_to_basis(p);
    Int d = det3(u);
    CHECK((d == 1 || d == -1));
    CHECK(Vec3(u * p) == vec3(0, 0, 1));
  }
  // the standard rays get the evident quotient charts
  Mat3 u2 = complete_ray_to_basis(vec3(0, 1, 0));
  CHECK(Vec3(u2 * vec3(0, 0, 1)).head(2) == vec2(0, 1).eval());
  CHECK(Vec3(u2 * vec3(1, 1, 0)).head(2) == vec2(1, 0).eval());
}

TEST_CASE("wall lattice index") {
  CHECK(wall_lattice_index(vec3(1, 0, 0), vec3(0, 1, 0)) == 1);
  CHECK(wall_lattice_index(vec3(2, 0, 0), vec3(0, 2, 0)) == 4);
  CHECK(wall_lattice_index(vec3(1, 1, 0), vec3(2, 2, 1)) == 1);
}

TEST_CASE("dual monodromy equals the inverse transpose of the monodromy") {
  // lattice-level statement of the duality; the dual module recomputes
  // the left side from the gluing matrices.
  for (int n = 1; n <= 8; ++n) {
    FlopConfig cfg = FlopConfig::canonical(n);
    Mat3 m_star = inverse_transpose(monodromy(cfg));
    Mat3 expect;
    expect << 1, 0, 0, -1, 1, 0, n, 0, 1;
    CHECK(m_star == expect);
  }
}
