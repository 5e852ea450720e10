#include "pkdyn/cyclotomic.hpp"

#include <cmath>

#include "pkdyn/error.hpp"

namespace pkdyn {

static bool supported_order(int m) { return m == 1 || m == 3 || m == 4 || m == 6; }

Cyclotomic::Cyclotomic(int order, const Rational& c0, const Rational& c1)
    : m_(order), a_(c0), b_(c1) {
  if (!supported_order(order)) fail(Errc::field, "unsupported cyclotomic order " + std::to_string(order));
  if (order == 1 && b_ != 0) fail(Errc::field, "order-1 cyclotomic cannot carry a zeta coefficient");
  demote();
}

Cyclotomic Cyclotomic::zeta(int order) {
  if (!supported_order(order)) fail(Errc::field, "unsupported cyclotomic order " + std::to_string(order));
  if (order == 1) return Cyclotomic(Rational(1));
  return Cyclotomic(order, Rational(0), Rational(1));
}

const Rational& Cyclotomic::rat() const {
  if (!is_rational()) fail(Errc::field, "cyclotomic value is not rational");
  return a_;
}

void Cyclotomic::demote() {
  if (m_ != 1 && b_ == 0) m_ = 1;
}

Cyclotomic Cyclotomic::lifted(int order) const {
  if (m_ == order) return *this;
  if (m_ == 1) {
    Cyclotomic r = *this;
    r.m_ = order;
    return r;
  }
  if (m_ == 3 && order == 6) {
    // zeta3 = zeta6^2 = zeta6 - 1
    Cyclotomic r;
    r.m_ = 6;
    r.a_ = a_ - b_;
    r.b_ = b_;
    return r;
  }
  fail(Errc::field, "incompatible cyclotomic orders");
}

void Cyclotomic::align(Cyclotomic& x, Cyclotomic& y) {
  if (x.m_ == y.m_) return;
  int join;
  int lo = std::min(x.m_, y.m_), hi = std::max(x.m_, y.m_);
  if (lo == 1) join = hi;
  else if (lo == 3 && hi == 6) join = 6;
  else fail(Errc::field, "incompatible cyclotomic orders " + std::to_string(lo) + " and " + std::to_string(hi));
  x = x.lifted(join);
  y = y.lifted(join);
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

Cyclotomic operator+(const Cyclotomic& x0, const Cyclotomic& y0) {
  Cyclotomic x = x0, y = y0;
  Cyclotomic::align(x, y);
  Cyclotomic r;
  r.m_ = x.m_;
  r.a_ = x.a_ + y.a_;
  r.b_ = x.b_ + y.b_;
  r.demote();
  return r;
}

Cyclotomic operator-(const Cyclotomic& x, const Cyclotomic& y) { return x + (-y); }

Cyclotomic operator*(const Cyclotomic& x0, const Cyclotomic& y0) {
  Cyclotomic x = x0, y = y0;
  Cyclotomic::align(x, y);
  Cyclotomic r;
  r.m_ = x.m_;
  Rational z2a, z2b;  // zeta^2 = z2a + z2b * zeta
  switch (x.m_) {
    case 1: z2a = 0; z2b = 0; break;
    case 3: z2a = -1; z2b = -1; break;
    case 4: z2a = -1; z2b = 0; break;
    case 6: z2a = -1; z2b = 1; break;
  }
  Rational hi = x.b_ * y.b_;
  r.a_ = x.a_ * y.a_ + hi * z2a;
  r.b_ = x.a_ * y.b_ + x.b_ * y.a_ + hi * z2b;
  r.demote();
  return r;
}

Cyclotomic Cyclotomic::conj() const {
  // image of zeta under the nontrivial field automorphism (complex conjugation)
  Cyclotomic r = *this;
  switch (m_) {
    case 1: break;
    case 3: r.a_ = a_ - b_; r.b_ = -b_; break;  // conj(z3) = -1 - z3
    case 4: r.b_ = -b_; break;                  // conj(i) = -i
    case 6: r.a_ = a_ + b_; r.b_ = -b_; break;  // conj(z6) = 1 - z6
  }
  r.demote();
  return r;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) fail(Errc::invalid_argument, "division by zero");
  Cyclotomic cj = conj();
  Cyclotomic n = (*this) * cj;
  if (!n.is_rational()) fail(Errc::internal, "cyclotomic norm not rational");
  Rational inv = 1 / n.rat();
  Cyclotomic r = cj;
  r.a_ *= inv;
  r.b_ *= inv;
  return r;
}

Cyclotomic operator/(const Cyclotomic& x, const Cyclotomic& y) { return x * y.inverse(); }

bool operator==(const Cyclotomic& x0, const Cyclotomic& y0) {
  if (x0.m_ != y0.m_) {
    // orders differ: equal only if both sides lift to a common order and match
    if ((x0.m_ == 3 && y0.m_ == 6) || (x0.m_ == 6 && y0.m_ == 3) ||
        x0.m_ == 1 || y0.m_ == 1) {
      Cyclotomic x = x0, y = y0;
      Cyclotomic::align(x, y);
      return x.a_ == y.a_ && x.b_ == y.b_;
    }
    return false;
  }
  return x0.a_ == y0.a_ && x0.b_ == y0.b_;
}

std::complex<double> Cyclotomic::to_complex() const {
  if (m_ == 1) return {a_.get_d(), 0.0};
  double ang = 2.0 * M_PI / m_;
  std::complex<double> z(std::cos(ang), std::sin(ang));
  return std::complex<double>(a_.get_d(), 0.0) + std::complex<double>(b_.get_d(), 0.0) * z;
}

std::string Cyclotomic::str() const {
  if (m_ == 1) return rational_str(a_);
  std::string zn = m_ == 3 ? "w" : (m_ == 4 ? "i" : "z6");
  std::string s;
  if (a_ != 0) s += rational_str(a_);
  if (b_ != 0) {
    if (!s.empty() && b_ > 0) s += "+";
    if (b_ == -1) s += "-";
    else if (b_ != 1) s += rational_str(b_) + "*";
    s += zn;
  }
  if (s.empty()) s = "0";
  return s;
}

}  // namespace pkdyn
