#include "pkdyn/unipoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pkdyn/error.hpp"

namespace pkdyn {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::from_longs(const std::vector<long>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (long x : coeffs) c.emplace_back(x);
  return UniPoly(std::move(c));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool UniPoly::integer_coeffs() const {
  for (const auto& x : c_)
    if (x.get_den() != 1) return false;
  return true;
}

Rational UniPoly::eval(const Rational& x) const {
  Rational r(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

std::complex<double> UniPoly::eval(std::complex<double> x) const {
  std::complex<double> r(0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->get_d();
  return r;
}

UniPoly UniPoly::derivative() const {
  std::vector<Rational> d;
  for (size_t i = 1; i < c_.size(); i++) d.push_back(c_[i] * Rational((long)i));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::operator-() const {
  auto c = c_;
  for (auto& x : c) x = -x;
  return UniPoly(std::move(c));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (size_t i = 0; i < a.c_.size(); i++) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); i++) c[i] += b.c_[i];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); i++)
    for (size_t j = 0; j < b.c_.size(); j++) c[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(c));
}

bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

UniPoly UniPoly::chi(int N) {
  if (N < 1) fail(Errc::invalid_argument, "chi_N needs N >= 1");
  std::vector<Rational> c(N + 5, Rational(0));
  // t^{N+1}(t^3 - t - 1)
  c[N + 4] += 1;
  c[N + 2] -= 1;
  c[N + 1] -= 1;
  // + t^3 + t^2 - 1
  c[3] += 1;
  c[2] += 1;
  c[0] -= 1;
  return UniPoly(std::move(c));
}

std::string UniPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; i--) {
    if (c_[i] == 0) continue;
    Rational a = c_[i];
    if (!first) os << (a < 0 ? " - " : " + ");
    else if (a < 0) os << "-";
    Rational m = abs(a);
    if (m != 1 || i == 0) os << rational_str(m);
    if (i > 0) {
      if (m != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

namespace {

void upoly_divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
  std::vector<Rational> rem = a.coeffs();
  int db = b.degree();
  std::vector<Rational> quot(std::max(0, (int)rem.size() - db), 0);
  for (int i = (int)rem.size() - 1; i >= db; i--) {
    Rational c = rem[i] / b.coeffs()[db];
    if (c == 0) continue;
    quot[i - db] = c;
    for (int j = 0; j <= db; j++) rem[i - db + j] -= c * b.coeffs()[j];
  }
  q = UniPoly(quot);
  r = UniPoly(rem);
}

UniPoly upoly_gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly q, r;
    upoly_divmod(a, b, q, r);
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  std::vector<Rational> c = a.coeffs();
  Rational lead = c.back();
  for (auto& x : c) x /= lead;
  return UniPoly(c);
}

UniPoly upoly_div(const UniPoly& a, const UniPoly& b) {
  UniPoly q, r;
  upoly_divmod(a, b, q, r);
  return q;
}

// square-free decomposition (Yun): list of (factor, multiplicity)
std::vector<std::pair<UniPoly, int>> square_free(const UniPoly& f) {
  std::vector<std::pair<UniPoly, int>> out;
  UniPoly g = upoly_gcd(f, f.derivative());
  if (g.degree() < 1) {
    out.push_back({f, 1});
    return out;
  }
  UniPoly c = upoly_div(f, g);
  UniPoly d = upoly_div(f.derivative(), g) - c.derivative();
  for (int i = 1; c.degree() > 0; i++) {
    UniPoly fi = upoly_gcd(c, d);
    if (fi.degree() > 0) out.push_back({fi, i});
    c = upoly_div(c, fi);
    d = upoly_div(d, fi) - c.derivative();
  }
  return out;
}

std::vector<std::complex<double>> dk_roots(const UniPoly& p, double tol);

}  // namespace

// multiple roots would cap Durand-Kerner accuracy near tol^(1/mult), so the
// polynomial is split into exact square-free factors first
std::vector<std::complex<double>> roots(const UniPoly& p, double tol) {
  if (p.is_zero()) fail(Errc::invalid_argument, "roots of the zero polynomial are undefined");
  if (p.degree() < 1) fail(Errc::invalid_argument, "roots need degree >= 1");
  if (tol <= 0) fail(Errc::invalid_argument, "tol must be positive");
  std::vector<std::complex<double>> z;
  for (const auto& [f, mult] : square_free(p)) {
    auto zf = dk_roots(f, tol);
    for (int m = 0; m < mult; m++) z.insert(z.end(), zf.begin(), zf.end());
  }
  std::sort(z.begin(), z.end(),
            [](const std::complex<double>& x, const std::complex<double>& y) { return std::abs(x) > std::abs(y); });
  return z;
}

namespace {

std::vector<std::complex<double>> dk_roots(const UniPoly& p, double tol) {
  int n = p.degree();
  std::vector<std::complex<double>> a(n + 1);
  double lead = p.coeffs()[n].get_d();
  double maxc = 0;
  for (int i = 0; i <= n; i++) {
    a[i] = p.coeffs()[i].get_d() / lead;
    maxc = std::max(maxc, std::abs(a[i]));
  }
  auto ev = [&](std::complex<double> x) {
    std::complex<double> r = 1.0;
    for (int i = n - 1; i >= 0; i--) r = r * x + a[i];
    return r;
  };
  double R = 1.0 + maxc;
  const double offset = 0.70710678118654752;  // fixed irrational angular offset
  std::vector<std::complex<double>> z(n);
  for (int k = 0; k < n; k++) {
    double th = 2.0 * M_PI * k / n + offset;
    z[k] = R * std::complex<double>(std::cos(th), std::sin(th));
  }
  for (int iter = 0; iter < 500; iter++) {
    double move = 0;
    for (int k = 0; k < n; k++) {
      std::complex<double> num = ev(z[k]);
      std::complex<double> den = 1.0;
      for (int j = 0; j < n; j++)
        if (j != k) den *= (z[k] - z[j]);
      if (den == 0.0) den = 1e-300;
      std::complex<double> d = num / den;
      z[k] -= d;
      move = std::max(move, std::abs(d));
    }
    if (move < tol) break;
  }
  return z;
}

}  // namespace

}  // namespace pkdyn
