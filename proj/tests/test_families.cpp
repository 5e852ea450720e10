#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "pkdyn/error.hpp"
#include "pkdyn/families.hpp"
#include "pkdyn/lattice.hpp"
#include "pkdyn/unipoly.hpp"

using namespace pkdyn;
using Cd = std::complex<double>;

// 90-digit V_7 parameters, frozen after the refinement stabilized
static const char* kA7 =
    "-0."
    "499496509742646501264693846023824807843275052732536921755221942156165482535184833728593053"
    "72";
static const char* kB7 =
    "-0."
    "415760686766703528543889018824627273697432657313291746214702696150116490551426273508384130"
    "42";

TEST_CASE("lf_map structure") {
  auto f = lf_map({Scalar(Rational(2, 3)), Scalar(Rational(5, 7))});
  f.validate();
  CHECK(f.degree() == 2);
  CHECK(f.self_map());
}

TEST_CASE("vn_check exact: N=1 at (a,b) = (1,0)") {
  auto r = vn_check({Scalar(1), Scalar(0)}, 1, 1e-9);
  CHECK(r.ok);
  CHECK(r.trace.terminal == Terminal::Landed);
  CHECK(r.trace.points.size() == 2);
}

TEST_CASE("vn_check hits the indeterminacy line when -a + b = 0") {
  auto r = vn_check({Scalar(0), Scalar(0)}, 3, 1e-9);
  CHECK_FALSE(r.ok);
  CHECK(r.trace.terminal == Terminal::HitIndeterminacy);
  CHECK(r.trace.hit_step == 0);
}

TEST_CASE("vn_search finds the real V_7 parameters") {
  auto p = vn_search(7, Cd(-0.5, 0), Cd(-0.4, 0), 1e-12, 100);
  Cd a = p.a.to_complex(), b = p.b.to_complex();
  CHECK(std::abs(a.imag()) < 1e-9);
  CHECK(std::abs(b.imag()) < 1e-9);
  CHECK(a.real() == doctest::Approx(-0.49949650974).epsilon(1e-9));
  CHECK(b.real() == doctest::Approx(-0.41576068677).epsilon(1e-9));
  CHECK(vn_check(p, 7, 1e-8).ok);
}

TEST_CASE("vn_search rejects a bad tolerance") {
  CHECK_THROWS_AS(vn_search(7, Cd(-0.5, 0), Cd(-0.4, 0), -1.0, 50), Error);
}

TEST_CASE("lf_map_refined reproduces the 90-digit V_7 parameters") {
  auto r = lf_map_refined(7, -0.4995, -0.41576);
  CHECK(abs(r.a - MpReal(kA7)) < MpReal("1e-80"));
  CHECK(abs(r.b - MpReal(kB7)) < MpReal("1e-80"));
  REQUIRE(r.map.mp != nullptr);
}

TEST_CASE("V_7 degree sequence drops below the generic one") {
  auto r = lf_map_refined(7, -0.4995, -0.41576);
  auto seq = degree_sequence(r.map, 18);
  std::vector<long> want = {2,  2,  3,  4,  5,  7,  9,  12, 15,
                            19, 23, 29, 35, 43, 52, 62, 75, 89};
  CHECK(seq.degrees == want);
  CHECK(delta_estimate(seq) == doctest::Approx(1.17628081826).epsilon(0.01));
}

TEST_CASE("generic parameters keep the generic degree sequence") {
  auto f = lf_map({Scalar(Rational(2, 3)), Scalar(Rational(5, 7))});
  auto seq = degree_sequence(f, 18);
  std::vector<long> want = {2,  2,  3,  4,  5,  7,  9,  12, 16,
                            21, 28, 37, 49, 65, 86, 114, 151, 200};
  CHECK(seq.degrees == want);
  CHECK(delta_estimate(seq) == doctest::Approx(1.32471795724).epsilon(0.008));
}

TEST_CASE("periodic maps") {
  CHECK(verify_period(lyness8a_map(), 8));
  CHECK_FALSE(verify_period(lyness8a_map(), 4));
  CHECK(verify_period(lyness8b_map(), 8));
  CHECK(verify_period(period12_map(), 12));
  CHECK_FALSE(verify_period(period12_map(), 6));
  CHECK(verify_period(cremona(2), 2));
  CHECK_FALSE(verify_period(cremona(2), 1));
  CHECK(verify_period(identity_map(Ambient({2})), 1));
}

TEST_CASE("verify_period rejects float coefficients") {
  auto f = lf_map({Scalar(0.5), Scalar(0.25)});
  CHECK_THROWS_AS(verify_period(f, 8), Error);
}

TEST_CASE("fa_map degree sequence and growth") {
  auto f = fa_map(Scalar(Rational(5, 7)));
  auto seq = degree_sequence(f, 20);
  std::vector<long> want = {2,  3,  3,  4,  6,  8,   10,  13,  18,  24,
                            31, 40, 52, 68, 87, 111, 144, 186, 238, 305};
  CHECK(seq.degrees == want);
  CHECK(delta_estimate(seq) == doctest::Approx(1.28151).epsilon(0.005));
  CHECK_THROWS_AS(fa_map(Scalar(0)), Error);
}

TEST_CASE("bck_params solves the constraint") {
  auto p = bck_params(2, Scalar(1));
  Cd a = p.a.to_complex();
  Cd res = 2.0 * a * a + 3.0 * a + 2.0;
  CHECK(std::abs(res) < 1e-12);
  CHECK(std::abs(a.imag()) > 0.1);  // complex for n >= 2
  CHECK_THROWS_AS(bck_params(1, Scalar(1)), Error);
}

TEST_CASE("bck_map carries a working inverse") {
  auto f = bck_map(bck_params(2, Scalar(1)));
  f.validate();
  CHECK(f.degree() == 3);
  REQUIRE(f.inverse != nullptr);
  ProjectivePoint q(Ambient({3}), {Scalar(1), Scalar(2), Scalar(3), Scalar(5)});
  auto img = evaluate(f, q);
  REQUIRE(img.has_value());
  auto back = evaluate(*f.inverse, *img);
  REQUIRE(back.has_value());
  CHECK(back->distance(q) < 1e-9);
}

TEST_CASE("bck_map rejects parameters off the constraint surface") {
  BCKParams bad{2, Scalar(0.5), Scalar(1)};
  CHECK_THROWS_AS(bck_map(bad), Error);
}

TEST_CASE("bck long orbit lands on e0 at step 4n") {
  for (int n : {2, 3}) {
    auto tr = bck_orbit_landing(bck_params(n, Scalar(1)), 1e-8);
    CHECK(tr.terminal == Terminal::Landed);
    CHECK(tr.label == "e0");
    CHECK(tr.hit_step == 4 * n);
  }
}

TEST_CASE("plain certification fails on bck: the orbit transits blow-ups") {
  auto p = bck_params(2, Scalar(1));
  std::vector<std::vector<Scalar>> L = {{Scalar(0), Scalar(0), Scalar(0), Scalar(1)},
                                        {Scalar(1), Scalar(0), Scalar(0), p.a},
                                        {Scalar(0), Scalar(1), Scalar(0), Scalar(0)},
                                        {Scalar(0), Scalar(0), Scalar(1), p.c}};
  auto res = pseudo_auto_certify(L, 3, 20);
  CHECK_FALSE(res.ok);
  CHECK(res.failure == "on_exceptional");
  CHECK(res.orbit == 3);
}

TEST_CASE("bck hyperbolicity probe mod p") {
  auto pr = bck_hyperbolicity_probe(2, Rational(1), 15);
  std::vector<long> want = {3,  3,  5,   7,   11,  15,  23, 33,
                            49, 69, 101, 143, 205, 293, 419};
  CHECK(pr.d1 == want);
  CHECK(pr.d2 == want);
  CHECK(pr.delta1 == doctest::Approx(1.42642).epsilon(0.01));
  CHECK(pr.delta2 == doctest::Approx(1.42642).epsilon(0.01));

  auto p3 = bck_hyperbolicity_probe(3, Rational(1), 15);
  CHECK(p3.delta1 == doctest::Approx(1.45990).epsilon(0.01));
  CHECK(p3.delta2 == doctest::Approx(1.45990).epsilon(0.01));
}

TEST_CASE("bdk_newton recovers the known k=2, n=7 solution") {
  auto r = bdk_newton(2, 7, {0.75, 3.0});
  REQUIRE(r.has_value());
  CHECK(std::abs((*r)[0] - Cd(0.7478562212, 0)) < 1e-6);
  CHECK(std::abs((*r)[1] - Cd(3.0111817124, 0)) < 1e-6);
}

TEST_CASE("bdk certification yields the chi_7 orbit data") {
  auto r = bdk_newton(2, 7, {0.75, 3.0});
  REQUIRE(r.has_value());
  auto L = bdk_companion(*r);
  auto cert = pseudo_auto_certify(L, 2, 12);
  REQUIRE(cert.ok);
  CHECK(cert.data.lengths == std::vector<int>{1, 1, 8});
  CHECK(cert.data.sigma == std::vector<int>{1, 2, 0});
  auto M = orbit_data_pullback(cert.data);
  CHECK(char_poly(M) == UniPoly::chi(7));
  CHECK(delta1_from_lattice(M) == doctest::Approx(1.17628081826).epsilon(1e-9));
}

TEST_CASE("refined bdk map tracks the dropped degree branch") {
  auto f = bdk_map_refined(7, 0.7478562212, 3.0111817124);
  auto seq = degree_sequence(f, 18);
  // equals (M^n)_{0,0} for the (1,1,8) orbit-data pullback M, n = 1..18
  std::vector<long> want = {2, 2, 3, 4, 5, 7, 9, 12, 15, 19, 23, 29, 35, 43, 52, 62, 75, 89};
  CHECK(seq.degrees == want);
  CHECK(delta_estimate(seq) == doctest::Approx(1.17628081826).epsilon(2e-4));
}

TEST_CASE("bdk_candidate multistart finds a genuine solution for k=2, n=7") {
  auto L = bdk_candidate(2, 7, 1e-9);
  auto cert = pseudo_auto_certify(L, 2, 12);
  REQUIRE(cert.ok);
  CHECK(cert.data.lengths == std::vector<int>{1, 1, 8});
}

TEST_CASE("bdk k=3, n=5 solution from a nearby start") {
  auto r = bdk_newton(3, 5, {-3.9, 0.48, 0.53});
  REQUIRE(r.has_value());
  double im = 0;
  for (auto& x : *r) im = std::max(im, std::abs(x.imag()));
  CHECK(im < 1e-8);
  CHECK(std::abs((*r)[0] - Cd(-3.93509438, 0)) < 1e-4);
  auto cert = pseudo_auto_certify(bdk_companion(*r), 3, 10);
  REQUIRE(cert.ok);
  CHECK(cert.data.lengths == std::vector<int>{1, 1, 1, 6});
  CHECK(cert.data.sigma == std::vector<int>{1, 2, 3, 0});
}

TEST_CASE("l_compose_j inverse is exact for an integer matrix") {
  std::vector<std::vector<Scalar>> L = {{Scalar(0), Scalar(0), Scalar(1)},
                                        {Scalar(1), Scalar(0), Scalar(0)},
                                        {Scalar(0), Scalar(1), Scalar(1)}};
  auto f = l_compose_j(L);
  REQUIRE(f.inverse != nullptr);
  CHECK(is_identity(compose_reduce(*f.inverse, f)));
  CHECK(is_identity(compose_reduce(f, *f.inverse)));
}

TEST_CASE("cohomological hyperbolicity probe") {
  auto j = cremona(2);
  auto pr = cohom_hyperbolicity_probe(j, 12);
  CHECK(pr.delta1 == 1.0);
  CHECK(pr.delta2 == 1.0);
  CHECK(pr.d1[0] == 2);
  CHECK(pr.d1[1] == 1);

  auto f = lf_map({Scalar(Rational(2, 3)), Scalar(Rational(5, 7))});
  CHECK_THROWS_AS(cohom_hyperbolicity_probe(f, 10), Error);
}
