#pragma once
#include <cstdint>
#include <vector>

#include "pkdyn/projective.hpp"

namespace pkdyn {

// Arithmetic mod a word-size prime. Used to track degree sequences of exact
// maps by restriction to a random line: substituting x_i = a_i + b_i t turns
// each iterate into a univariate polynomial whose degree, after removing the
// gcd of the components, is the degree of the reduced iterate.
struct GfpCtx {
  uint64_t p;

  uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
  uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b % p) % p; }
  uint64_t mul(uint64_t a, uint64_t b) const { return (uint64_t)((__uint128_t)a * b % p); }
  uint64_t pow(uint64_t a, uint64_t e) const;
  uint64_t inv(uint64_t a) const;
  uint64_t neg(uint64_t a) const { return a % p == 0 ? 0 : p - a % p; }
  bool is_qr(uint64_t a) const;
  uint64_t sqrt(uint64_t a) const;        // Tonelli-Shanks
  uint64_t root_of_unity(int m) const;    // primitive m-th root; requires m | p-1
  uint64_t from_rational(const Rational& r) const;
  uint64_t from_cyclotomic(const Cyclotomic& c) const;
};

bool is_prime_u64(uint64_t n);

// Smallest prime >= start such that every listed integer is a nonzero
// quadratic residue and every listed order divides p-1.
uint64_t find_prime(const std::vector<long>& needed_qrs, const std::vector<int>& needed_unity_orders,
                    uint64_t start = (1ULL << 61));

// A self-map of P^k with coefficients reduced mod p, in term form.
struct GfpMap {
  GfpCtx F;
  int nvars = 0;
  // comps[i] = list of (coefficient, exponent vector)
  std::vector<std::vector<std::pair<uint64_t, std::vector<int>>>> comps;
};

// Embed an exact single-factor map; picks the prime from the coefficients.
GfpMap compile_gfp(const HomogeneousMap& f, const std::vector<long>& extra_qrs = {});

// Degrees of the reduced iterates f, f^2, ..., f^nmax along one random line.
std::vector<long> gfp_degree_sequence_once(const GfpMap& f, int nmax, uint64_t seed);

// Univariate polynomial helpers mod p (lowest coefficient first, trimmed).
using GfpPoly = std::vector<uint64_t>;
GfpPoly gfp_pmul(const GfpCtx& F, const GfpPoly& a, const GfpPoly& b);
GfpPoly gfp_pgcd(const GfpCtx& F, GfpPoly a, GfpPoly b);
GfpPoly gfp_pdiv_exact(const GfpCtx& F, const GfpPoly& a, const GfpPoly& b);

}  // namespace pkdyn
