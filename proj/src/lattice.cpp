#include "pkdyn/lattice.hpp"

#include <algorithm>
#include <map>

#include "pkdyn/error.hpp"

namespace pkdyn {

IntMatrix cremona_pullback(int k) {
  if (k < 2) fail(Errc::invalid_argument, "cremona_pullback needs k >= 2");
  int n = k + 2;
  IntMatrix m(n, n);
  m.at(0, 0) = k;
  for (int j = 1; j < n; j++) {
    m.at(j, 0) = -(k - 1);
    m.at(0, j) = 1;
    for (int i = 1; i < n; i++)
      if (i != j) m.at(i, j) = -1;
  }
  return m;
}

IntMatrix orbit_data_pullback(const OrbitData& d) {
  int k = d.k;
  if (k < 2) fail(Errc::invalid_argument, "orbit data needs k >= 2");
  if ((int)d.lengths.size() != k + 1 || (int)d.sigma.size() != k + 1)
    fail(Errc::invalid_argument, "orbit data needs k+1 lengths and a permutation of 0..k");
  std::vector<bool> seen(k + 1, false);
  for (int s : d.sigma) {
    if (s < 0 || s > k || seen[s]) fail(Errc::invalid_argument, "sigma is not a permutation");
    seen[s] = true;
  }
  for (int m : d.lengths)
    if (m < 1) fail(Errc::invalid_argument, "orbit lengths must be >= 1");

  // basis: H, then per orbit j the classes C_j[m_j-1] (landing point) ... C_j[0]
  std::map<std::pair<int, int>, int> idx;
  int pos = 1;
  for (int j = 0; j <= k; j++)
    for (int i = d.lengths[j] - 1; i >= 0; i--) idx[{j, i}] = pos++;
  int n = pos;
  IntMatrix M(n, n);
  std::vector<int> endpoint(k + 1);
  for (int j = 0; j <= k; j++) endpoint[j] = idx[{j, d.lengths[j] - 1}];

  // f*H = kH - (k-1) * sum of endpoint classes
  M.at(0, 0) = k;
  for (int j = 0; j <= k; j++) M.at(endpoint[j], 0) = -(k - 1);

  std::vector<int> sig_inv(k + 1);
  for (int a = 0; a <= k; a++) sig_inv[d.sigma[a]] = a;

  for (int j = 0; j <= k; j++) {
    // orbit shift: f* C_j[i] = C_j[i-1]
    for (int i = 1; i < d.lengths[j]; i++) M.at(idx[{j, i - 1}], idx[{j, i}]) = 1;
    // f* C_j[0] = strict transform of Sigma_j = H - sum over the other
    // vertices of the class lying over them (the endpoint of the orbit
    // landing there)
    int col = idx[{j, 0}];
    M.at(0, col) = 1;
    for (int t = 0; t <= k; t++)
      if (t != j) M.at(endpoint[sig_inv[t]], col) -= 1;
  }
  return M;
}

IntMatrix lorentz_form(int dim) {
  if (dim < 1) fail(Errc::dimension, "lorentz_form needs positive dimension");
  IntMatrix q(dim, dim);
  q.at(0, 0) = 1;
  for (int i = 1; i < dim; i++) q.at(i, i) = -1;
  return q;
}

bool is_isometry(const IntMatrix& m, const IntMatrix& q) {
  if (m.rows() != q.rows() || m.cols() != q.cols() || !m.square())
    fail(Errc::dimension, "isometry check needs matching square matrices");
  return m.transpose() * q * m == q;
}

IntMatrix coxeter_element(int p, int q, int r, int rot) {
  if (p < 2 || q < 2 || r < 2) fail(Errc::invalid_argument, "W(p,q,r) needs p,q,r >= 2");
  if (p > r) fail(Errc::invalid_argument, "need p <= r for the T-shaped chain");
  int nh = q - 1, n = nh + r;
  // intersection form: h-block has p-2 on the diagonal and p-1 off it,
  // blow-up classes square to -1
  IntMatrix Q(n, n);
  for (int a = 0; a < nh; a++)
    for (int b = 0; b < nh; b++) Q.at(a, b) = a == b ? p - 2 : p - 1;
  for (int i = 0; i < r; i++) Q.at(nh + i, nh + i) = -1;

  auto unit = [n](int i) {
    std::vector<long> v(n, 0);
    v[i] = 1;
    return v;
  };
  std::vector<std::vector<long>> roots;
  // chain roots e_i - e_{i+1}
  std::vector<std::vector<long>> chain;
  for (int i = 0; i + 1 < r; i++) {
    std::vector<long> v(n, 0);
    v[nh + i] = 1;
    v[nh + i + 1] = -1;
    chain.push_back(v);
  }
  // branch node: h_1 - e_1 - ... - e_p
  std::vector<long> alpha0(n, 0);
  alpha0[0] = 1;
  for (int i = 0; i < p; i++) alpha0[nh + i] = -1;
  // q-arm: h_{a+1} - h_a
  std::vector<std::vector<long>> qarm;
  for (int a = 0; a + 1 < nh; a++) {
    std::vector<long> v(n, 0);
    v[a + 1] = 1;
    v[a] = -1;
    qarm.push_back(v);
  }
  for (int i = 0; i < p - 1; i++) roots.push_back(chain[i]);
  roots.push_back(alpha0);
  for (auto& v : qarm) roots.push_back(v);
  for (int i = p - 1; i < (int)chain.size(); i++) roots.push_back(chain[i]);

  rot = ((rot % (int)roots.size()) + (int)roots.size()) % (int)roots.size();
  std::rotate(roots.begin(), roots.begin() + rot, roots.end());

  IntMatrix C = IntMatrix::identity(n);
  for (const auto& al : roots) {
    // s(x) = x + <x, al> al, valid for al^2 = -2
    mpz_class sq(0);
    std::vector<mpz_class> Qal(n, 0);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) Qal[i] += Q.at(i, j) * al[j];
    for (int i = 0; i < n; i++) sq += al[i] * Qal[i];
    if (sq != -2) fail(Errc::internal, "root does not square to -2");
    IntMatrix S = IntMatrix::identity(n);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) S.at(i, j) += al[i] * Qal[j];
    C = S * C;
  }
  return C;
}

double delta1_from_lattice(const IntMatrix& m) { return spectral_radius(m); }

}  // namespace pkdyn
