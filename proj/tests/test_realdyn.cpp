#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "pkdyn/error.hpp"
#include "pkdyn/realdyn.hpp"

using namespace pkdyn;

static const double kA7 = -0.49949650974264650;
static const double kB7 = -0.41576068676670353;

TEST_CASE("iterate_segment n=0 returns the input unchanged") {
  auto seg = make_segment(0, -1, 0, 1);
  auto out = iterate_segment({Scalar(kA7), Scalar(kB7)}, seg, 0, 100000);
  REQUIRE(out.size() == 1);
  REQUIRE(out[0].vertices.size() == 2);
  CHECK(out[0].vertices[0].x == 0);
  CHECK(out[0].vertices[0].y == -1);
  CHECK(out[0].vertices[1].y == 1);
  CHECK(out[0].length == doctest::Approx(seg.length));
}

TEST_CASE("V7 length growth approaches the dynamical degree") {
  auto seg = make_segment(0, -1, 0, 1);
  auto lines = iterate_segment({Scalar(kA7), Scalar(kB7)}, seg, 20, 2000000, 0.01);
  REQUIRE(lines.size() == 21);
  for (const auto& l : lines) {
    CHECK_FALSE(l.truncated);
    for (const auto& v : l.vertices) {
      CHECK(std::isfinite(v.x));
      CHECK(std::isfinite(v.y));
    }
  }
  auto rows = length_growth_report(lines);
  double mean = 0, sd = 0;
  for (int i = 16; i <= 20; i++) mean += rows[i].ratio;
  mean /= 5;
  for (int i = 16; i <= 20; i++) sd += (rows[i].ratio - mean) * (rows[i].ratio - mean);
  sd = std::sqrt(sd / 5);
  CHECK(mean == doctest::Approx(1.17628081826).epsilon(0.03));
  CHECK(sd < 0.02);
}

TEST_CASE("refinement stability: halving the tolerance moves lengths < 1%") {
  auto seg = make_segment(0, -1, 0, 1);
  LfParams p{Scalar(kA7), Scalar(kB7)};
  auto c1 = iterate_segment(p, seg, 10, 2000000, 0.01);
  auto c2 = iterate_segment(p, seg, 10, 4000000, 0.005);
  CHECK(std::abs(c1[10].length - c2[10].length) < 0.01 * c2[10].length);
}

TEST_CASE("pole crossing produces a break, never a non-finite vertex") {
  auto seg = make_segment(-kB7 - 0.1, 0.3, -kB7 + 0.1, 0.3);
  auto out = iterate_segment({Scalar(kA7), Scalar(kB7)}, seg, 1, 100000, 0.01);
  bool brk = false;
  for (const auto& v : out[1].vertices) {
    CHECK(std::isfinite(v.x));
    CHECK(std::isfinite(v.y));
    brk = brk || v.brk;
  }
  CHECK(brk);
}

TEST_CASE("vertex budget exhaustion flags truncation") {
  auto seg = make_segment(0, -1, 0, 1);
  auto out = iterate_segment({Scalar(kA7), Scalar(kB7)}, seg, 12, 5, 0.0001);
  CHECK(out[12].truncated);
}

TEST_CASE("length_growth_report on synthetic sequences") {
  std::vector<Polyline> constant(5);
  for (auto& l : constant) l.length = 2.5;
  for (const auto& r : length_growth_report(constant))
    if (r.n >= 1) CHECK(r.ratio == doctest::Approx(1.0));

  std::vector<Polyline> geom(6);
  for (int i = 0; i < 6; i++) geom[i].length = 0.3 * std::pow(1.17628, i);
  for (const auto& r : length_growth_report(geom))
    if (r.n >= 1) CHECK(r.ratio == doctest::Approx(1.17628).epsilon(1e-9));

  CHECK_THROWS_AS(length_growth_report(std::vector<Polyline>(2)), Error);
}

TEST_CASE("to_polar") {
  auto pts = to_polar({{0, 0}, {1, 0}, {0, -1}, {1e300, 0}});
  CHECK(pts[0].rho == 0);
  CHECK(pts[0].theta == 0);
  CHECK(pts[1].rho == doctest::Approx(M_PI / 4));
  CHECK(pts[1].theta == 0);
  CHECK(pts[2].theta == doctest::Approx(3 * M_PI / 2));
  CHECK(pts[3].rho == doctest::Approx(M_PI / 2));
}

TEST_CASE("real fixed points satisfy the map equation") {
  LfParams p{Scalar(kA7), Scalar(kB7)};
  auto fp = real_fixed_points(p);
  REQUIRE(!fp.empty());
  for (auto [x, y] : fp) {
    CHECK(y == doctest::Approx(x));
    CHECK((y + kA7) / (x + kB7) == doctest::Approx(y).epsilon(1e-10));
  }
}

TEST_CASE("polar csv shape") {
  auto seg = make_segment(0, -1, 0, 1);
  auto out = iterate_segment({Scalar(kA7), Scalar(kB7)}, seg, 2, 100000, 0.05);
  auto csv = polar_csv(out);
  CHECK(csv.rfind("iterate,theta,rho,brk\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') > 3);
}

TEST_CASE("complex parameters are rejected") {
  LfParams p{Scalar(std::complex<double>(0.1, 0.5)), Scalar(0.2)};
  CHECK_THROWS_AS(iterate_segment(p, make_segment(0, -1, 0, 1), 2, 1000), Error);
}
