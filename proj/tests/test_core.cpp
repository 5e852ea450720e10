#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>

#include "doctest.h"
#include "pkdyn/cyclotomic.hpp"
#include "pkdyn/error.hpp"
#include "pkdyn/intmatrix.hpp"
#include "pkdyn/multipoly.hpp"
#include "pkdyn/unipoly.hpp"

using namespace pkdyn;

static const std::vector<std::string> XYZ = {"x0", "x1", "x2"};

TEST_CASE("rational parsing and canonical form") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("cyclotomic field relations") {
  auto w = Cyclotomic::zeta(3);
  CHECK(w * w * w == Cyclotomic(1L));
  CHECK(w * w + w + Cyclotomic(1L) == Cyclotomic(0L));

  auto z6 = Cyclotomic::zeta(6);
  Cyclotomic z6_3 = z6 * z6 * z6;
  CHECK(z6_3 == Cyclotomic(-1L));
  Cyclotomic p = z6;
  for (int i = 0; i < 5; i++) p = p * z6;
  CHECK(p == Cyclotomic(1L));

  auto i4 = Cyclotomic::zeta(4);
  CHECK(i4 * i4 == Cyclotomic(-1L));

  // eta = zeta6 satisfies eta/(1-eta) = eta^2
  auto eta = z6;
  CHECK(eta / (Cyclotomic(1L) - eta) == eta * eta);

  // inverse round trip
  auto v = Cyclotomic(6, Rational(2, 3), Rational(-5, 7));
  CHECK(v * v.inverse() == Cyclotomic(1L));

  // cross-order promotion: zeta3 == zeta6^2
  CHECK(Cyclotomic::zeta(3) == z6 * z6);
  CHECK_THROWS_AS(Cyclotomic::zeta(4) * z6, Error);
  CHECK_THROWS_AS(Cyclotomic::zeta(5), Error);
}

TEST_CASE("multipoly arithmetic and parsing") {
  auto p = parse_poly("x1*x2 - 3/2*x0^2", XYZ);
  CHECK(p.total_degree() == 2);
  CHECK(p.is_homogeneous());
  CHECK(p.term_count() == 2);
  auto q = parse_poly("-3/2*x0^2 + x2*x1", XYZ);
  CHECK(p == q);
  CHECK(parse_poly("(x0+x1)^2", XYZ) == parse_poly("x0^2 + 2*x0*x1 + x1^2", XYZ));
  CHECK(parse_poly("w^3", XYZ) == MultiPoly::constant(3, Scalar(1)));

  auto v = p.eval({Scalar(1), Scalar(2), Scalar(3)});
  CHECK(v == Scalar(Rational(9, 2)));
}

TEST_CASE("poly_gcd basic") {
  auto a = parse_poly("x0*x1", XYZ);
  auto b = parse_poly("x0*x2", XYZ);
  CHECK(poly_gcd(a, b) == parse_poly("x0", XYZ));

  auto z = MultiPoly(3);
  CHECK(poly_gcd(a, z) == a.normalized());

  // gcd of homogeneous inputs is homogeneous and divides both
  auto c = parse_poly("x0^2 + x1*x2", XYZ);
  auto g = poly_gcd(a * c, b * c);
  CHECK(g.is_homogeneous());
  MultiPoly q(3);
  CHECK(try_divide_exact(g, c.normalized(), q));
}

TEST_CASE("poly_gcd J composed with itself") {
  // J applied twice: components share the factor x0*x1*x2
  auto common = parse_poly("x0*x1*x2", XYZ);
  auto f0 = common * parse_poly("x1*x2", XYZ);
  auto f1 = common * parse_poly("x0*x2", XYZ);
  auto g = poly_gcd(f0, f1);
  MultiPoly q(3);
  CHECK(try_divide_exact(g, common, q));
  CHECK(q.total_degree() == 1);
}

TEST_CASE("poly_gcd random cofactor property") {
  // for random homogeneous a, b, c: gcd(a*c, b*c) divisible by c
  std::vector<std::string> polys = {"x0^2+x1*x2", "x0*x1 - x2^2", "x0+x1+x2", "x1^2 - 3*x0*x2"};
  for (size_t i = 0; i < polys.size(); i++)
    for (size_t j = 0; j < polys.size(); j++) {
      if (i == j) continue;
      auto a = parse_poly(polys[i], XYZ);
      auto b = parse_poly(polys[j], XYZ);
      auto c = parse_poly("x0*x2 + x1^2 + x0*x1", XYZ);
      auto g = poly_gcd(a * c, b * c);
      MultiPoly q(3);
      CHECK(try_divide_exact(g, c.normalized(), q));
    }
}

TEST_CASE("gcd rejects float coefficients") {
  auto a = parse_poly("1.5*x0", XYZ);
  auto b = parse_poly("x0", XYZ);
  CHECK_THROWS_AS(poly_gcd(a, b), Error);
}

TEST_CASE("char_poly identity and small cases") {
  auto m = IntMatrix::identity(2);
  auto p = char_poly(m);
  CHECK(p == UniPoly::from_longs({1, -2, 1}));  // (t-1)^2

  IntMatrix fib(2, 2);
  fib.at(0, 0) = 1;
  fib.at(0, 1) = 1;
  fib.at(1, 0) = 1;
  CHECK(char_poly(fib) == UniPoly::from_longs({-1, -1, 1}));
  CHECK(spectral_radius(fib) == doctest::Approx(1.61803398875).epsilon(1e-9));
  CHECK(spectral_radius(fib.transpose()) == doctest::Approx(spectral_radius(fib)).epsilon(1e-12));
}

TEST_CASE("char_poly non-square errors") {
  IntMatrix m(2, 3);
  CHECK_THROWS_AS(char_poly(m), Error);
}

TEST_CASE("cayley-hamilton on random matrices") {
  unsigned long seed = 12345;
  auto next = [&seed]() {
    seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    return (long)((seed >> 33) % 7) - 3;
  };
  for (int trial = 0; trial < 5; trial++) {
    int n = 3 + trial % 4;
    IntMatrix m(n, n);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) m.at(i, j) = next();
    auto p = char_poly(m);
    IntMatrix acc(n, n);
    IntMatrix pw = IntMatrix::identity(n);
    for (int d = 0; d <= p.degree(); d++) {
      mpz_class cd(p.coeffs()[d].get_num());
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) acc.at(i, j) += cd * pw.at(i, j);
      if (d < p.degree()) pw = pw * m;
    }
    CHECK(acc == IntMatrix(n, n));
  }
}

TEST_CASE("roots of simple polynomials") {
  auto z = roots(UniPoly::from_longs({-1, 0, 1}));  // t^2 - 1
  CHECK(z.size() == 2);
  CHECK(std::abs(z[0]) == doctest::Approx(1.0));
  CHECK(std::abs(z[1]) == doctest::Approx(1.0));

  auto z2 = roots(UniPoly::from_longs({-1, -1, 0, 1}));  // t^3 - t - 1
  CHECK(std::abs(z2[0]) == doctest::Approx(1.3247179572).epsilon(1e-8));

  auto z3 = roots(UniPoly::chi(7));
  CHECK(std::abs(z3[0]) == doctest::Approx(1.17628081826).epsilon(1e-8));

  CHECK_THROWS_AS(roots(UniPoly()), Error);
}

TEST_CASE("roots satisfy coefficient symmetric functions") {
  UniPoly p = UniPoly::from_longs({6, -5, -2, 1});  // t^3 - 2t^2 - 5t + 6 = (t-1)(t+2)(t-3)
  auto z = roots(p);
  std::complex<double> sum(0), prod(1);
  for (auto& x : z) {
    sum += x;
    prod *= x;
  }
  CHECK(sum.real() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(prod.real() == doctest::Approx(-6.0).epsilon(1e-9));
}

TEST_CASE("chi polynomial text form") {
  // chi_1 = t^2(t^3-t-1) + t^3+t^2-1 = t^5 - t^3 - t^2 + t^3 + t^2 - 1 = t^5 - 1
  CHECK(UniPoly::chi(1) == UniPoly::from_longs({-1, 0, 0, 0, 0, 1}));
}

TEST_CASE("det and unimodular inverse") {
  IntMatrix m(2, 2);
  m.at(0, 0) = 2;
  m.at(0, 1) = 1;
  m.at(1, 0) = 1;
  m.at(1, 1) = 1;
  CHECK(det(m) == 1);
  auto inv = inverse_unimodular(m);
  CHECK(m * inv == IntMatrix::identity(2));
  m.at(0, 0) = 4;
  CHECK_THROWS_AS(inverse_unimodular(m), Error);  // det 3
}
