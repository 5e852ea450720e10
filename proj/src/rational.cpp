#include "pkdyn/rational.hpp"

#include "pkdyn/error.hpp"

namespace pkdyn {

Rational parse_rational(const std::string& s) {
  if (s.empty()) fail(Errc::parse, "empty rational literal");
  try {
    Rational r(s, 10);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    fail(Errc::parse, "bad rational literal: " + s);
  }
}

std::string rational_str(const Rational& r) {
  return r.get_str();
}

}  // namespace pkdyn
