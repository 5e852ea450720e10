#include "pkdyn/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "pkdyn/error.hpp"

namespace pkdyn {

namespace {

std::vector<std::vector<int>> subsets(int k, int l) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(l);
  for (int i = 0; i < l; i++) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    int pos = l - 1;
    while (pos >= 0 && cur[pos] == k - l + pos) pos--;
    if (pos < 0) break;
    cur[pos]++;
    for (int i = pos + 1; i < l; i++) cur[i] = cur[i - 1] + 1;
  }
  return out;
}

}  // namespace

IntMatrix exterior_power(const IntMatrix& A, int l) {
  if (!A.square()) fail(Errc::dimension, "exterior power needs a square matrix");
  int k = A.rows();
  if (l < 1 || l > k) fail(Errc::invalid_argument, "exterior power index out of range");
  auto idx = subsets(k, l);
  int n = (int)idx.size();
  IntMatrix M(n, n);
  for (int r = 0; r < n; r++)
    for (int c = 0; c < n; c++) {
      IntMatrix sub(l, l);
      for (int i = 0; i < l; i++)
        for (int j = 0; j < l; j++) sub.at(i, j) = A.at(idx[r][i], idx[c][j]);
      M.at(r, c) = det(sub);
    }
  return M;
}

std::vector<double> monomial_degrees(const IntMatrix& A, double tol) {
  if (!A.square()) fail(Errc::dimension, "monomial_degrees needs a square matrix");
  int k = A.rows();
  auto ev = roots(char_poly(A));  // descending modulus
  std::vector<double> deg(k + 1);
  deg[0] = 1.0;
  double prod = 1.0;
  for (int l = 1; l <= k; l++) {
    deg[l] = spectral_radius(exterior_power(A, l));
    prod *= std::abs(ev[l - 1]);
    if (std::abs(deg[l] - prod) > tol * std::max(1.0, prod))
      fail(Errc::internal, "exterior-power radius disagrees with the eigenvalue product");
  }
  return deg;
}

HomogeneousMap monomial_map(const IntMatrix& A) {
  if (!A.square()) fail(Errc::dimension, "monomial_map needs a square matrix");
  int k = A.rows();
  if (det(A) == 0) fail(Errc::degenerate, "exponent matrix is singular: the map is not dominant");
  // exponent table over the homogeneous coordinates x_0..x_k; row 0 is the
  // cleared denominator 1
  std::vector<std::vector<long>> e(k + 1, std::vector<long>(k + 1, 0));
  for (int i = 1; i <= k; i++) {
    long rs = 0;
    for (int j = 1; j <= k; j++) {
      long a = A.at(i - 1, j - 1).get_si();
      e[i][j] = a;
      rs += a;
    }
    e[i][0] = -rs;
  }
  for (int j = 0; j <= k; j++) {
    long mn = 0;
    for (int i = 0; i <= k; i++) mn = std::min(mn, e[i][j]);
    for (int i = 0; i <= k; i++) e[i][j] -= mn;
  }
  Ambient amb({k});
  HomogeneousMap f;
  f.source = f.target = amb;
  f.blocks.resize(1);
  for (int i = 0; i <= k; i++) {
    std::vector<int> exp(e[i].begin(), e[i].end());
    f.blocks[0].push_back(MultiPoly::monomial(k + 1, exp, Scalar(1)));
  }
  f.validate();
  return f;
}

}  // namespace pkdyn
