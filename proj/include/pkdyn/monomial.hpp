#pragma once
#include <vector>

#include "pkdyn/intmatrix.hpp"
#include "pkdyn/projective.hpp"

namespace pkdyn {

// l-th exterior power of a square integer matrix: the C(k,l) x C(k,l) matrix
// of l x l minors, rows and columns indexed by sorted index subsets in
// lexicographic order.
IntMatrix exterior_power(const IntMatrix& A, int l);

// Intermediate degrees delta_0..delta_k of the monomial map x -> x^A:
// delta_l is the spectral radius of the l-th exterior power, cross-checked
// against the product of the l largest eigenvalue moduli of A.
std::vector<double> monomial_degrees(const IntMatrix& A, double tol = 1e-6);

// The torus map x -> x^A homogenized to P^k: negative exponents are cleared
// by the minimal monomial, so the result is reduced.
HomogeneousMap monomial_map(const IntMatrix& A);

}  // namespace pkdyn
