#include "pkdyn/intmatrix.hpp"

#include <algorithm>
#include <cmath>

#include "pkdyn/error.hpp"

namespace pkdyn {

IntMatrix::IntMatrix(int rows, int cols) : r_(rows), c_(cols) {
  if (rows <= 0 || cols <= 0) fail(Errc::dimension, "matrix dimensions must be positive");
  e_.assign((size_t)rows * cols, mpz_class(0));
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; i++) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(c_, r_);
  for (int i = 0; i < r_; i++)
    for (int j = 0; j < c_; j++) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.c_ != b.r_) fail(Errc::dimension, "matrix product shape mismatch");
  IntMatrix m(a.r_, b.c_);
  for (int i = 0; i < a.r_; i++)
    for (int k = 0; k < a.c_; k++) {
      if (a.at(i, k) == 0) continue;
      for (int j = 0; j < b.c_; j++) m.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) fail(Errc::dimension, "matrix sum shape mismatch");
  IntMatrix m = a;
  for (size_t i = 0; i < m.e_.size(); i++) m.e_[i] += b.e_[i];
  return m;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) fail(Errc::dimension, "matrix difference shape mismatch");
  IntMatrix m = a;
  for (size_t i = 0; i < m.e_.size(); i++) m.e_[i] -= b.e_[i];
  return m;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.r_ == b.r_ && a.c_ == b.c_ && a.e_ == b.e_;
}

IntMatrix IntMatrix::pow(int e) const {
  if (!square()) fail(Errc::dimension, "power of a non-square matrix");
  if (e < 0) fail(Errc::invalid_argument, "negative matrix power");
  IntMatrix r = identity(r_);
  IntMatrix base = *this;
  while (e) {
    if (e & 1) r = r * base;
    if (e > 1) base = base * base;
    e >>= 1;
  }
  return r;
}

UniPoly char_poly(const IntMatrix& m) {
  if (!m.square()) fail(Errc::dimension, "char_poly needs a square matrix");
  int n = m.rows();
  // Faddeev-LeVerrier over rationals; coefficients come out integral.
  std::vector<std::vector<Rational>> B(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; i++) B[i][i] = 1;  // M_0 = I
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  std::vector<std::vector<Rational>> AB(n, std::vector<Rational>(n));
  for (int k = 1; k <= n; k++) {
    // AB = A * B
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        Rational s(0);
        for (int t = 0; t < n; t++)
          if (m.at(i, t) != 0) s += Rational(m.at(i, t)) * B[t][j];
        AB[i][j] = s;
      }
    Rational tr(0);
    for (int i = 0; i < n; i++) tr += AB[i][i];
    c[n - k] = -tr / Rational((long)k);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) B[i][j] = AB[i][j] + (i == j ? c[n - k] : Rational(0));
  }
  UniPoly p((std::vector<Rational>(c)));
  if (!p.integer_coeffs()) fail(Errc::internal, "characteristic polynomial not integral");
  return p;
}

double spectral_radius(const IntMatrix& m, double tol) {
  UniPoly p = char_poly(m);
  auto z = roots(p, tol);
  double r = 0;
  for (auto& x : z) r = std::max(r, std::abs(x));
  return r;
}

mpz_class det(const IntMatrix& m) {
  if (!m.square()) fail(Errc::dimension, "det needs a square matrix");
  // Bareiss fraction-free elimination
  int n = m.rows();
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) a[i][j] = m.at(i, j);
  mpz_class prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; k++) {
    if (a[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; i++)
        if (a[i][k] != 0) { p = i; break; }
      if (p < 0) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; i++)
      for (int j = k + 1; j < n; j++) {
        mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  mpz_class d = det(m);
  if (d != 1 && d != -1) fail(Errc::invalid_argument, "matrix is not unimodular");
  int n = m.rows();
  IntMatrix inv(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      // cofactor C_ji
      IntMatrix minor(n - 1 > 0 ? n - 1 : 1, n - 1 > 0 ? n - 1 : 1);
      if (n == 1) {
        inv.at(0, 0) = d;
        continue;
      }
      int r = 0;
      for (int a = 0; a < n; a++) {
        if (a == j) continue;
        int c = 0;
        for (int b = 0; b < n; b++) {
          if (b == i) continue;
          minor.at(r, c) = m.at(a, b);
          c++;
        }
        r++;
      }
      mpz_class cof = det(minor);
      if ((i + j) % 2) cof = -cof;
      inv.at(i, j) = cof * d;  // divide by det = multiply by +-1
    }
  return inv;
}

}  // namespace pkdyn
