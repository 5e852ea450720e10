#pragma once
#include <vector>

#include "pkdyn/unipoly.hpp"

namespace pkdyn {

class IntMatrix {
public:
  IntMatrix() : r_(0), c_(0) {}
  IntMatrix(int rows, int cols);
  static IntMatrix identity(int n);

  int rows() const { return r_; }
  int cols() const { return c_; }
  bool square() const { return r_ == c_ && r_ > 0; }
  mpz_class& at(int i, int j) { return e_[(size_t)i * c_ + j]; }
  const mpz_class& at(int i, int j) const { return e_[(size_t)i * c_ + j]; }

  IntMatrix transpose() const;
  IntMatrix pow(int e) const;

  friend IntMatrix operator*(const IntMatrix&, const IntMatrix&);
  friend IntMatrix operator+(const IntMatrix&, const IntMatrix&);
  friend IntMatrix operator-(const IntMatrix&, const IntMatrix&);
  friend bool operator==(const IntMatrix&, const IntMatrix&);

private:
  int r_, c_;
  std::vector<mpz_class> e_;
};

// Exact characteristic polynomial det(tI - m), Faddeev-LeVerrier over mpq.
UniPoly char_poly(const IntMatrix& m);

double spectral_radius(const IntMatrix& m, double tol = 1e-12);

mpz_class det(const IntMatrix& m);

// Inverse for det = +-1 matrices (adjugate); fails otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

}  // namespace pkdyn
