#pragma once
#include <mpfr.h>

#include <string>
#include <vector>

#include "pkdyn/projective.hpp"

namespace pkdyn {

// 280-bit real. Double precision is not enough to track degree sequences of
// maps with algebraic parameters: roundoff in the coefficients moves the map
// onto the generic branch of the family after a handful of iterates.
class MpReal {
public:
  static constexpr int kPrec = 280;

  MpReal() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
  MpReal(double d) { mpfr_init2(v_, kPrec); mpfr_set_d(v_, d, MPFR_RNDN); }
  MpReal(long n) { mpfr_init2(v_, kPrec); mpfr_set_si(v_, n, MPFR_RNDN); }
  explicit MpReal(const std::string& s) {
    mpfr_init2(v_, kPrec);
    mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN);
  }
  MpReal(const MpReal& o) { mpfr_init2(v_, kPrec); mpfr_set(v_, o.v_, MPFR_RNDN); }
  MpReal(MpReal&& o) noexcept { mpfr_init2(v_, kPrec); mpfr_swap(v_, o.v_); }
  MpReal& operator=(const MpReal& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator=(MpReal&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  std::string str(int digits = 90) const;

  MpReal operator-() const { MpReal r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
  MpReal& operator+=(const MpReal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  MpReal& operator-=(const MpReal& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  MpReal& operator*=(const MpReal& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  MpReal& operator/=(const MpReal& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  friend MpReal operator+(MpReal a, const MpReal& b) { return a += b; }
  friend MpReal operator-(MpReal a, const MpReal& b) { return a -= b; }
  friend MpReal operator*(MpReal a, const MpReal& b) { return a *= b; }
  friend MpReal operator/(MpReal a, const MpReal& b) { return a /= b; }
  friend bool operator<(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator==(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

  friend MpReal abs(const MpReal& a) {
    MpReal r;
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

private:
  mpfr_t v_;
};

// Dense bivariate polynomial in the affine chart x0 = 1 of P^2; row index is
// the x1 exponent, column index the x2 exponent.
using Mp2Poly = std::vector<std::vector<MpReal>>;

Mp2Poly mp2_trim(const Mp2Poly& a);
int mp2_totdeg(const Mp2Poly& a);
Mp2Poly mp2_mul(const Mp2Poly& a, const Mp2Poly& b);
Mp2Poly mp2_add(const Mp2Poly& a, const Mp2Poly& b);
Mp2Poly mp2_norm1(const Mp2Poly& a);

// High-precision side channel attached to a HomogeneousMap on P^2: the three
// components in chart form, the homogeneous degree, and the lines (besides
// x0 = 0) that iterates can pick up as common factors.
struct MpMapData {
  std::vector<Mp2Poly> comps;  // 3 components
  int degree = 0;
  // (axis, c): axis 0 is the line c*x0 + x1, axis 1 is c*x0 + x2
  std::vector<std::pair<int, MpReal>> strip_lines;
};

// Degrees of the reduced iterates f, f^2, ..., f^nmax, tracked by repeated
// right-composition with gcd stripping limited to x0 and the listed lines.
std::vector<long> mp_degree_sequence(const MpMapData& f, int nmax);

}  // namespace pkdyn
