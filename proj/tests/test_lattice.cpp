#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "pkdyn/error.hpp"
#include "pkdyn/lattice.hpp"

using namespace pkdyn;

TEST_CASE("cremona pullback matrix for k=2") {
  auto m = cremona_pullback(2);
  // first row 2 1 1 1, first column 2 -1 -1 -1, off-diagonal -1 in the E block
  CHECK(m.at(0, 0) == 2);
  for (int j = 1; j < 4; j++) {
    CHECK(m.at(0, j) == 1);
    CHECK(m.at(j, 0) == -1);
    for (int i = 1; i < 4; i++) CHECK(m.at(i, j) == (i == j ? 0 : -1));
  }
}

TEST_CASE("cremona pullback is an involution for k=2..6") {
  for (int k = 2; k <= 6; k++) {
    auto m = cremona_pullback(k);
    CHECK(m * m == IntMatrix::identity(k + 2));
  }
}

TEST_CASE("orbit data with all lengths 1 reduces to the cremona pullback") {
  OrbitData d;
  d.k = 2;
  d.lengths = {1, 1, 1};
  d.sigma = {0, 1, 2};
  CHECK(orbit_data_pullback(d) == cremona_pullback(2));
}

TEST_CASE("chi_N identity for N = 1..12") {
  for (int N = 1; N <= 12; N++) {
    OrbitData d;
    d.k = 2;
    d.lengths = {1, 1, N + 1};
    d.sigma = {1, 2, 0};
    auto m = orbit_data_pullback(d);
    CHECK(char_poly(m) == UniPoly::chi(N));
  }
}

TEST_CASE("N=7 matrix: Lehmer radius, isometry, reciprocal roots") {
  OrbitData d;
  d.k = 2;
  d.lengths = {1, 1, 8};
  d.sigma = {1, 2, 0};
  auto m = orbit_data_pullback(d);
  CHECK(delta1_from_lattice(m) == doctest::Approx(1.17628081826).epsilon(1e-9));
  CHECK(is_isometry(m, lorentz_form(m.rows())));

  auto z = roots(char_poly(m));
  double lam = 0, smallest = 1e9;
  for (auto& x : z) {
    if (std::abs(x.imag()) < 1e-9 && x.real() > 0) {
      lam = std::max(lam, x.real());
      smallest = std::min(smallest, x.real());
    }
  }
  CHECK(lam * smallest == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("orbit pullbacks are Lorentz isometries") {
  std::vector<OrbitData> cases;
  for (int N : {1, 3, 7, 10}) {
    OrbitData d;
    d.k = 2;
    d.lengths = {1, 1, N + 1};
    d.sigma = {1, 2, 0};
    cases.push_back(d);
  }
  OrbitData mixed;
  mixed.k = 2;
  mixed.lengths = {2, 3, 4};
  mixed.sigma = {2, 0, 1};
  cases.push_back(mixed);
  for (const auto& d : cases) {
    auto m = orbit_data_pullback(d);
    CHECK(is_isometry(m, lorentz_form(m.rows())));
  }
}

TEST_CASE("orbit data validation") {
  OrbitData bad;
  bad.k = 2;
  bad.lengths = {1, 1, 1};
  bad.sigma = {0, 0, 2};
  CHECK_THROWS_AS(orbit_data_pullback(bad), Error);
  bad.sigma = {0, 1, 2};
  bad.lengths = {1, 0, 1};
  CHECK_THROWS_AS(orbit_data_pullback(bad), Error);
  bad.lengths = {1, 1};
  CHECK_THROWS_AS(orbit_data_pullback(bad), Error);
}

TEST_CASE("is_isometry rejects a scaled identity") {
  IntMatrix two = IntMatrix::identity(4);
  for (int i = 0; i < 4; i++) two.at(i, i) = 2;
  CHECK_FALSE(is_isometry(two, lorentz_form(4)));
}

TEST_CASE("coxeter element spectral radii") {
  // W(3,2,10): Lehmer's number
  CHECK(delta1_from_lattice(coxeter_element(3, 2, 10)) ==
        doctest::Approx(1.17628081826).epsilon(1e-8));
  // W(3,2,9): affine E9, all roots on the unit circle; the repeated unit
  // eigenvalue caps the root-finder accuracy well below the simple-root case
  CHECK(delta1_from_lattice(coxeter_element(3, 2, 9)) == doctest::Approx(1.0).epsilon(1e-4));
  // exact confirmation: char poly is (t-1)^3 (t+1)(t^2+t+1)(t^4+t^3+t^2+t+1)
  auto p9 = char_poly(coxeter_element(3, 2, 9));
  auto want = UniPoly::from_longs({-1, 0, 0, 0, 0, 1}) *  // t^5 - 1
              UniPoly::from_longs({-1, 0, 1}) *           // t^2 - 1
              UniPoly::from_longs({-1, 0, 0, 1});         // t^3 - 1
  CHECK(p9 == want);
  // W(3,2,3): finite
  CHECK(delta1_from_lattice(coxeter_element(3, 2, 3)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("coxeter char poly is rotation invariant") {
  auto p0 = char_poly(coxeter_element(3, 2, 10, 0));
  for (int rot : {1, 3, 7}) CHECK(char_poly(coxeter_element(3, 2, 10, rot)) == p0);
}

TEST_CASE("coxeter W(3,2,N+3) matches the orbit matrix spectrum") {
  // the N=7 orbit pullback acts in the Weyl group W(3,2,10)
  OrbitData d;
  d.k = 2;
  d.lengths = {1, 1, 8};
  d.sigma = {1, 2, 0};
  auto rad_orbit = delta1_from_lattice(orbit_data_pullback(d));
  auto rad_cox = delta1_from_lattice(coxeter_element(3, 2, 10));
  CHECK(rad_orbit == doctest::Approx(rad_cox).epsilon(1e-9));
}

TEST_CASE("coxeter element with q > 2") {
  // W(3,3,5) corresponds to the finite E6 diagram: the Coxeter element has
  // order 12 and char poly (t-1)(t^2+t+1)(t^4-t^2+1)
  auto c = coxeter_element(3, 3, 5);
  CHECK(delta1_from_lattice(c) == doctest::Approx(1.0).epsilon(1e-6));
  auto p0 = char_poly(c);
  auto want = UniPoly::from_longs({-1, 0, 0, 1}) *      // t^3 - 1
              UniPoly::from_longs({1, 0, -1, 0, 1});    // t^4 - t^2 + 1
  CHECK(p0 == want);
  CHECK(c.pow(12) == IntMatrix::identity(c.rows()));
  CHECK(char_poly(coxeter_element(3, 3, 5, 2)) == p0);
}

TEST_CASE("coxeter element validation") {
  CHECK_THROWS_AS(coxeter_element(1, 2, 5), Error);
  CHECK_THROWS_AS(coxeter_element(6, 2, 5), Error);
}
