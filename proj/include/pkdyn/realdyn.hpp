#pragma once
#include <utility>
#include <vector>

#include "pkdyn/families.hpp"

namespace pkdyn {

struct RealVertex {
  double x = 0, y = 0;   // affine chart coordinates
  bool brk = false;      // starts a new piece (pole / line-at-infinity crossing)
};

struct Polyline {
  std::vector<RealVertex> vertices;
  double length = 0;      // chordal length on RP^2
  bool truncated = false; // vertex budget ran out before the tolerance was met
};

Polyline make_segment(double x0, double y0, double x1, double y1);

// Successive images of the segment under the real map (x,y) -> (y, (y+a)/(x+b)),
// entry [0] being the input. Each image is refined until adjacent vertices are
// within tol in the chordal metric of RP^2; max_vertices caps the refinement.
std::vector<Polyline> iterate_segment(const LfParams& p, const Polyline& segment, int n,
                                      long max_vertices, double tol = 0.01);

struct GrowthRow {
  int n = 0;
  double length = 0;
  // n=1: l_1/l_0; n>=2: the two-step geometric mean sqrt(l_n / l_{n-2}),
  // which damps the parity oscillation of the raw successive ratios
  double ratio = 0;
};

std::vector<GrowthRow> length_growth_report(const std::vector<Polyline>& lines);

struct PolarPoint {
  double rho = 0;    // arctan of the affine radius, in [0, pi/2]
  double theta = 0;  // [0, 2*pi)
};

std::vector<PolarPoint> to_polar(const std::vector<std::pair<double, double>>& pts);

// Real fixed points of the affine map: y = x and x^2 + (b-1)x - a = 0.
std::vector<std::pair<double, double>> real_fixed_points(const LfParams& p);

// CSV emitter for the plot data: iterate,theta,rho,brk
std::string polar_csv(const std::vector<Polyline>& lines);

}  // namespace pkdyn
