#pragma once
#include <complex>
#include <string>
#include <variant>

#include "pkdyn/cyclotomic.hpp"

namespace pkdyn {

// Coefficient domain for polynomials and points: an exact cyclotomic-field
// element or a complex double. Exact values promote to complex when mixed;
// never the reverse.
class Scalar {
public:
  Scalar() : v_(Cyclotomic()) {}
  Scalar(long n) : v_(Cyclotomic(n)) {}
  Scalar(int n) : v_(Cyclotomic((long)n)) {}
  Scalar(const Rational& r) : v_(Cyclotomic(r)) {}
  Scalar(const Cyclotomic& c) : v_(c) {}
  Scalar(std::complex<double> z) : v_(z) {}
  Scalar(double d) : v_(std::complex<double>(d, 0.0)) {}

  bool exact() const { return std::holds_alternative<Cyclotomic>(v_); }
  const Cyclotomic& cyc() const;
  std::complex<double> to_complex() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar inverse() const;
  std::string str() const;

  friend Scalar operator+(const Scalar&, const Scalar&);
  friend Scalar operator-(const Scalar&, const Scalar&);
  friend Scalar operator*(const Scalar&, const Scalar&);
  friend Scalar operator/(const Scalar&, const Scalar&);
  friend bool operator==(const Scalar&, const Scalar&);

private:
  std::variant<Cyclotomic, std::complex<double>> v_;
};

}  // namespace pkdyn
