#pragma once
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "pkdyn/degseq.hpp"
#include "pkdyn/lattice.hpp"
#include "pkdyn/mpreal.hpp"
#include "pkdyn/projective.hpp"

namespace pkdyn {

// ---- quadratic family on P^2 ----

struct LfParams {
  Scalar a, b;
};

// [x0(b x0 + x1) : x2(b x0 + x1) : x0(a x0 + x2)], the homogeneous form of
// the affine recurrence (x, y) -> (y, (y+a)/(x+b)).
HomogeneousMap lf_map(const LfParams& p);

enum class Terminal { Regular, HitIndeterminacy, Landed };

struct OrbitTrace {
  std::vector<ProjectivePoint> points;
  Terminal terminal = Terminal::Regular;
  std::string label;  // landing target, e.g. "e0"
  int hit_step = -1;  // step of the indeterminacy hit, if any
};

struct VnResult {
  bool ok = false;
  OrbitTrace trace;
};

// Does f^N send q = (-a, 0) to p = (-b, -a)?
VnResult vn_check(const LfParams& p, int N, double tol);

// Damped Newton over (a, b) in double precision for the V_N condition.
LfParams vn_search(int N, std::complex<double> seed_a, std::complex<double> seed_b, double tol,
                   int max_iter);

// V_N parameters refined to 280-bit precision from a double seed, with the
// resulting map carrying the high-precision side channel that the degree
// tracker needs (double-precision parameters drift onto the generic branch
// of the family after a few iterates).
struct VnRefined {
  MpReal a, b;
  HomogeneousMap map;
};
VnRefined lf_map_refined(int N, double seed_a, double seed_b);

// ---- periodic maps (P^3) ----

// f^p = id with no smaller period; exact coefficients required.
bool verify_period(const HomogeneousMap& f, int p);

HomogeneousMap lyness8a_map();  // (x,y,z) -> (y, z, (1+y+z)/x)
HomogeneousMap lyness8b_map();  // (x,y,z) -> (y, z, (-1-y+z)/x)
HomogeneousMap period12_map();  // (x,y,z) -> (y, z, (c+hy+z)/(c+x)), h = zeta6, c = h^2

// (x,y,z) -> (y, z, (a + w y + z)/x) homogenized, w = zeta3.
HomogeneousMap fa_map(const Scalar& a);

// ---- BCK family on P^3 ----

struct BCKParams {
  int n = 2;
  Scalar a, c;
};

// Solves n a^2 + (n+1) a c + n c^2 = 0 for a given c (complex for n >= 2).
BCKParams bck_params(int n, const Scalar& c);

// f = L o J with the companion-shaped L; carries its inverse J o L^{-1}.
HomogeneousMap bck_map(const BCKParams& p);

// Orbit of p = [1:a:0:c] through the blow-up charts of the landed-on
// vertices; must reach e0 at step 4n.
OrbitTrace bck_orbit_landing(const BCKParams& p, double tol, int max_steps = 0);

// ---- pseudo-automorphism certification (L o J on P^k) ----

struct CertifyResult {
  bool ok = false;
  OrbitData data;       // valid when ok
  std::string failure;  // "on_exceptional" or "no_landing"
  int orbit = -1;       // offending orbit index
  int step = -1;
};

CertifyResult pseudo_auto_certify(const std::vector<std::vector<Scalar>>& L, int k, int max_steps,
                                  double tol = 1e-9);

// One Newton solve for the beta parameters of the companion-shaped L whose
// long orbit lands on e0 after n steps; nullopt when it fails.
std::optional<std::vector<std::complex<double>>> bdk_newton(int k, int n,
                                                            const std::vector<double>& start);

// Grid multistart around the origin; returns the companion L of the first
// genuine real solution (orbit staying clear of vertices and Sigma planes).
std::vector<std::vector<Scalar>> bdk_candidate(int k, int n, double tol);

std::vector<std::vector<Scalar>> bdk_companion(const std::vector<std::complex<double>>& beta);

// k = 2 only: beta refined to 280 bits from a double seed, with the
// high-precision side channel attached so the degree tracker stays on the
// dropped branch (double coefficients drift onto the generic branch after
// about eight iterates).
HomogeneousMap bdk_map_refined(int n, double beta1, double beta2);

// L o J as a homogeneous map with attached inverse J o L^{-1}.
HomogeneousMap l_compose_j(const std::vector<std::vector<Scalar>>& L);

// ---- cohomological hyperbolicity ----

struct HyperbolicityProbe {
  std::vector<long> d1, d2;
  double delta1 = 0, delta2 = 0;
};

// delta1 from degree_sequence(f), delta2 as delta1 of the attached inverse.
HyperbolicityProbe cohom_hyperbolicity_probe(const HomogeneousMap& f, int n);

// Exact mod-p variant for the BCK family (its parameter a is a quadratic
// irrationality, so the constraint is solved inside GF(p) instead).
HyperbolicityProbe bck_hyperbolicity_probe(int n_param, const Rational& c, int iterates);

}  // namespace pkdyn
