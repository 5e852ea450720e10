#pragma once
#include <vector>

#include "pkdyn/intmatrix.hpp"
#include "pkdyn/projective.hpp"

namespace pkdyn {

struct DegreeSequence {
  std::vector<long> degrees;             // reduced degree of f^1..f^n
  std::vector<IntMatrix> multidegrees;   // per iterate, for product ambients
  bool product = false;
};

// Degrees of the reduced iterates. Product ambients are composed symbolically
// with blockwise reduction. Single-factor exact maps are tracked mod a large
// prime by restriction to a random line (two independent lines must agree;
// a third breaks ties), which gives the same degrees as symbolic reduction
// at a tiny fraction of the cost. Maps carrying a high-precision coefficient
// side channel use the 280-bit chart engine instead.
// budget > 0 caps the internal multiplication count (budget error beyond it).
DegreeSequence degree_sequence(const HomogeneousMap& f, int n, long budget = 0);

// lim d_n^{1/n}, estimated by least squares over the trailing half of the
// sequence against the model d_n = c * t^n + e. A sequence with no growth
// returns exactly 1.0.
double delta_estimate(const DegreeSequence& seq);

}  // namespace pkdyn
