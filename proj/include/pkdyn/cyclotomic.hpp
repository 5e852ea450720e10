#pragma once
#include <complex>
#include <string>

#include "pkdyn/rational.hpp"

namespace pkdyn {

// Element of the m-th cyclotomic field in the power basis {1, zeta_m},
// restricted to m in {1, 3, 4, 6} (phi(m) <= 2). Order 1 holds a plain
// rational; arithmetic auto-promotes 1 -> m and 3 -> 6. Orders 4 and 3/6
// do not embed in a common supported field and refuse to mix.
class Cyclotomic {
public:
  Cyclotomic() : m_(1), a_(0), b_(0) {}
  Cyclotomic(const Rational& r) : m_(1), a_(r), b_(0) {}
  Cyclotomic(long n) : m_(1), a_(n), b_(0) {}
  Cyclotomic(int order, const Rational& c0, const Rational& c1);
  static Cyclotomic zeta(int order);

  int order() const { return m_; }
  const Rational& c0() const { return a_; }
  const Rational& c1() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  const Rational& rat() const;  // requires is_rational()

  Cyclotomic operator-() const;
  Cyclotomic conj() const;
  Cyclotomic inverse() const;
  std::complex<double> to_complex() const;
  std::string str() const;

  friend Cyclotomic operator+(const Cyclotomic&, const Cyclotomic&);
  friend Cyclotomic operator-(const Cyclotomic&, const Cyclotomic&);
  friend Cyclotomic operator*(const Cyclotomic&, const Cyclotomic&);
  friend Cyclotomic operator/(const Cyclotomic&, const Cyclotomic&);
  friend bool operator==(const Cyclotomic&, const Cyclotomic&);

private:
  int m_;
  Rational a_, b_;  // a + b * zeta_m

  void demote();  // drop to order 1 when the zeta coefficient vanishes
  static void align(Cyclotomic& x, Cyclotomic& y);
  Cyclotomic lifted(int order) const;
};

}  // namespace pkdyn
