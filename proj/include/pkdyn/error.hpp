#pragma once
#include <stdexcept>
#include <string>

namespace pkdyn {

enum class Errc {
  invalid_argument = 1,
  dimension,
  field,
  degenerate,
  no_convergence,
  indeterminate,
  inconclusive,
  budget,
  parse,
  internal,
};

class Error : public std::runtime_error {
public:
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  Errc code;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

}  // namespace pkdyn
