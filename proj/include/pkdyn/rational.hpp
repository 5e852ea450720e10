#pragma once
#include <gmpxx.h>
#include <string>

namespace pkdyn {

// Canonical arbitrary-precision rational (mpq keeps gcd(num,den)=1, den>0).
using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& r);

inline double rational_to_double(const Rational& r) { return r.get_d(); }

}  // namespace pkdyn
