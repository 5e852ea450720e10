#pragma once
#include <complex>
#include <string>
#include <vector>

#include "pkdyn/rational.hpp"

namespace pkdyn {

// Dense univariate polynomial over the rationals, lowest degree first.
class UniPoly {
public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly from_longs(const std::vector<long>& coeffs);

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return (int)c_.size() - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool integer_coeffs() const;

  Rational eval(const Rational& x) const;
  std::complex<double> eval(std::complex<double> x) const;
  UniPoly derivative() const;

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly&, const UniPoly&);
  friend UniPoly operator-(const UniPoly&, const UniPoly&);
  friend UniPoly operator*(const UniPoly&, const UniPoly&);
  friend bool operator==(const UniPoly&, const UniPoly&);

  std::string str(const std::string& var = "t") const;

  // chi_N(t) = t^{N+1}(t^3 - t - 1) + t^3 + t^2 - 1
  static UniPoly chi(int N);

private:
  std::vector<Rational> c_;
  void trim();
};

// All complex roots with multiplicity, Durand-Kerner on the monic polynomial,
// ordered by descending modulus.
std::vector<std::complex<double>> roots(const UniPoly& p, double tol = 1e-12);

}  // namespace pkdyn
