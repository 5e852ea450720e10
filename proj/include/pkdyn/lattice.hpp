#pragma once
#include <vector>

#include "pkdyn/intmatrix.hpp"

namespace pkdyn {

// Orbit data for a quadratic-type map on a blow-up of P^k: each exceptional
// hyperplane Sigma_j is contracted, its image travels m_j - 1 steps and lands
// on the vertex e_{sigma_j}, and all points along the way are blown up.
struct OrbitData {
  int k = 2;
  std::vector<int> lengths;  // m_0..m_k, all >= 1
  std::vector<int> sigma;    // permutation of 0..k
};

// Pullback on <H, E_0..E_k> for the Cremona involution blown up at the
// coordinate vertices: H -> kH - (k-1) sum E_j, E_j -> H - sum_{i != j} E_i.
IntMatrix cremona_pullback(int k);

// Pullback on <H> + orbit classes (each orbit listed landing-point-first).
IntMatrix orbit_data_pullback(const OrbitData& d);

IntMatrix lorentz_form(int dim);  // diag(1, -1, ..., -1)

bool is_isometry(const IntMatrix& m, const IntMatrix& q);

// Product of the simple reflections of the T-shaped root system of W(p,q,r),
// taken in the fixed order: the p-side chain, the branch node, the q-arm,
// then the rest of the chain. rot cyclically rotates that order; the
// characteristic polynomial does not depend on it.
IntMatrix coxeter_element(int p, int q, int r, int rot = 0);

double delta1_from_lattice(const IntMatrix& m);

}  // namespace pkdyn
