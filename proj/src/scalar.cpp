#include "pkdyn/scalar.hpp"

#include <sstream>

#include "pkdyn/error.hpp"

namespace pkdyn {

const Cyclotomic& Scalar::cyc() const {
  if (!exact()) fail(Errc::field, "expected exact coefficient, found float");
  return std::get<Cyclotomic>(v_);
}

std::complex<double> Scalar::to_complex() const {
  if (exact()) return std::get<Cyclotomic>(v_).to_complex();
  return std::get<std::complex<double>>(v_);
}

bool Scalar::is_zero() const {
  if (exact()) return std::get<Cyclotomic>(v_).is_zero();
  return std::get<std::complex<double>>(v_) == 0.0;
}

bool Scalar::is_one() const {
  if (exact()) return std::get<Cyclotomic>(v_) == Cyclotomic(1L);
  return std::get<std::complex<double>>(v_) == std::complex<double>(1.0, 0.0);
}

Scalar Scalar::operator-() const {
  if (exact()) return Scalar(-std::get<Cyclotomic>(v_));
  return Scalar(-std::get<std::complex<double>>(v_));
}

Scalar Scalar::inverse() const {
  if (exact()) return Scalar(std::get<Cyclotomic>(v_).inverse());
  auto z = std::get<std::complex<double>>(v_);
  if (z == 0.0) fail(Errc::invalid_argument, "division by zero");
  return Scalar(1.0 / z);
}

#define PKDYN_SCALAR_BINOP(op)                                              \
  Scalar operator op(const Scalar& x, const Scalar& y) {                    \
    if (x.exact() && y.exact())                                             \
      return Scalar(std::get<Cyclotomic>(x.v_) op std::get<Cyclotomic>(y.v_)); \
    return Scalar(x.to_complex() op y.to_complex());                        \
  }

PKDYN_SCALAR_BINOP(+)
PKDYN_SCALAR_BINOP(-)
PKDYN_SCALAR_BINOP(*)
#undef PKDYN_SCALAR_BINOP

Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

bool operator==(const Scalar& x, const Scalar& y) {
  if (x.exact() && y.exact()) return std::get<Cyclotomic>(x.v_) == std::get<Cyclotomic>(y.v_);
  return x.to_complex() == y.to_complex();
}

std::string Scalar::str() const {
  if (exact()) return std::get<Cyclotomic>(v_).str();
  auto z = std::get<std::complex<double>>(v_);
  std::ostringstream os;
  os.precision(17);
  if (z.imag() == 0.0) {
    os << z.real();
  } else {
    os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
  }
  return os.str();
}

}  // namespace pkdyn
