#pragma once
#include <string>

#include "pkdyn/projective.hpp"

namespace pkdyn {

// JSON request -> JSON response for every library operation; the C API and
// the CLI sit on top of this. Requests are {"op": ..., parameters...};
// responses carry "schema", the echoed "op", and an "ok" verdict for
// verification-style operations. Malformed requests throw Error.
std::string run_json(const std::string& request);

// Shared builtin registry (lyness8a, lyness8b, period12, fa, lf, v7, bck,
// cremona) plus custom component lists.
HomogeneousMap map_from_spec(const std::string& json_spec);

}  // namespace pkdyn
