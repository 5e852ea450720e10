#include "pkdyn/realdyn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pkdyn/error.hpp"

namespace pkdyn {

namespace {

struct Sph {
  double v[3];  // unit representative of a point of RP^2
};

double chord(const Sph& a, const Sph& b) {
  double dm = 0, dp = 0;
  for (int i = 0; i < 3; i++) {
    dm += (a.v[i] - b.v[i]) * (a.v[i] - b.v[i]);
    dp += (a.v[i] + b.v[i]) * (a.v[i] + b.v[i]);
  }
  return std::sqrt(std::min(dm, dp));
}

double real_param(const Scalar& s, const char* what) {
  auto z = s.to_complex();
  if (std::abs(z.imag()) > 1e-12) fail(Errc::field, std::string(what) + " must be real");
  return z.real();
}

}  // namespace

Polyline make_segment(double x0, double y0, double x1, double y1) {
  Polyline p;
  p.vertices = {{x0, y0, false}, {x1, y1, false}};
  Sph a{{1, x0, y0}}, b{{1, x1, y1}};
  for (auto* s : {&a, &b}) {
    double n = std::sqrt(s->v[0] * s->v[0] + s->v[1] * s->v[1] + s->v[2] * s->v[2]);
    for (int i = 0; i < 3; i++) s->v[i] /= n;
  }
  p.length = chord(a, b);
  return p;
}

std::vector<Polyline> iterate_segment(const LfParams& p, const Polyline& segment, int n,
                                      long max_vertices, double tol) {
  if (n < 0) fail(Errc::invalid_argument, "need n >= 0");
  if (max_vertices < 4) fail(Errc::invalid_argument, "vertex budget too small");
  if (tol <= 0) fail(Errc::invalid_argument, "tolerance must be positive");
  if (segment.vertices.size() < 2) fail(Errc::invalid_argument, "segment needs >= 2 vertices");
  double a = real_param(p.a, "a"), b = real_param(p.b, "b");

  // homogeneous orbit of the chart point (1, x, y), max-normalized each step
  auto orbit = [a, b](double x, double y, int steps) {
    double v0 = 1, v1 = x, v2 = y;
    for (int s = 0; s < steps; s++) {
      double lb = b * v0 + v1;
      double w0 = v0 * lb, w1 = v2 * lb, w2 = v0 * (a * v0 + v2);
      double m = std::max({std::abs(w0), std::abs(w1), std::abs(w2)});
      if (m == 0 || !std::isfinite(m)) return Sph{{0, 0, 0}};
      v0 = w0 / m;
      v1 = w1 / m;
      v2 = w2 / m;
    }
    double nrm = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
    return Sph{{v0 / nrm, v1 / nrm, v2 / nrm}};
  };

  std::vector<Polyline> out;
  {
    Polyline base = segment;
    base.length = 0;
    base.truncated = false;
    for (size_t i = 0; i + 1 < segment.vertices.size(); i++) {
      Sph u{{1, segment.vertices[i].x, segment.vertices[i].y}};
      Sph v{{1, segment.vertices[i + 1].x, segment.vertices[i + 1].y}};
      for (auto* s : {&u, &v}) {
        double nn = std::sqrt(s->v[0] * s->v[0] + s->v[1] * s->v[1] + s->v[2] * s->v[2]);
        for (int j = 0; j < 3; j++) s->v[j] /= nn;
      }
      base.length += chord(u, v);
    }
    out.push_back(std::move(base));
  }

  for (int it = 1; it <= n; it++) {
    Polyline img;
    long budget = max_vertices;
    for (size_t e = 0; e + 1 < segment.vertices.size(); e++) {
      double x0 = segment.vertices[e].x, y0 = segment.vertices[e].y;
      double x1 = segment.vertices[e + 1].x, y1 = segment.vertices[e + 1].y;
      auto at = [&](double t) {
        return orbit(x0 + t * (x1 - x0), y0 + t * (y1 - y0), it);
      };
      auto emit = [&img](double t, const Sph& s, bool brk) {
        RealVertex v;
        // near the line at infinity the affine coordinates blow up; keep them
        // finite and mark the break for the plot
        double den = s.v[0];
        bool far = std::abs(den) < 1e-9;
        if (far) den = den < 0 ? -1e-9 : 1e-9;
        v.x = s.v[1] / den;
        v.y = s.v[2] / den;
        v.brk = brk || far;
        (void)t;
        img.vertices.push_back(v);
      };
      // stack of parameter intervals with their endpoint images
      struct Piece {
        double t0, t1;
        Sph p0, p1;
      };
      std::vector<Piece> stack;
      const int kInit = 16;
      for (int i = kInit - 1; i >= 0; i--) {
        double t0 = (double)i / kInit, t1 = (double)(i + 1) / kInit;
        stack.push_back({t0, t1, at(t0), at(t1)});
      }
      bool first = true;
      while (!stack.empty()) {
        Piece pc = stack.back();
        stack.pop_back();
        bool bad0 = pc.p0.v[0] == 0 && pc.p0.v[1] == 0 && pc.p0.v[2] == 0;
        bool bad1 = pc.p1.v[0] == 0 && pc.p1.v[1] == 0 && pc.p1.v[2] == 0;
        if (bad0 || bad1) continue;  // indeterminacy hit: drop the sliver
        double d = chord(pc.p0, pc.p1);
        if (d > tol && pc.t1 - pc.t0 > 1e-13 && budget > 0) {
          double tm = 0.5 * (pc.t0 + pc.t1);
          Sph pm = at(tm);
          budget--;
          stack.push_back({tm, pc.t1, pm, pc.p1});
          stack.push_back({pc.t0, tm, pc.p0, pm});
          continue;
        }
        if (budget <= 0 && d > tol) img.truncated = true;
        if (first) {
          emit(pc.t0, pc.p0, e > 0);
          first = false;
        }
        emit(pc.t1, pc.p1, false);
        img.length += d;
      }
    }
    out.push_back(std::move(img));
  }
  return out;
}

std::vector<GrowthRow> length_growth_report(const std::vector<Polyline>& lines) {
  if (lines.size() < 3) fail(Errc::invalid_argument, "need at least 3 polylines");
  std::vector<GrowthRow> rows;
  for (size_t i = 0; i < lines.size(); i++) {
    GrowthRow r;
    r.n = (int)i;
    r.length = lines[i].length;
    if (i == 1)
      r.ratio = lines[1].length / lines[0].length;
    else if (i >= 2)
      r.ratio = std::sqrt(lines[i].length / lines[i - 2].length);
    rows.push_back(r);
  }
  return rows;
}

std::vector<PolarPoint> to_polar(const std::vector<std::pair<double, double>>& pts) {
  std::vector<PolarPoint> out;
  for (const auto& [x, y] : pts) {
    PolarPoint p;
    double r = std::hypot(x, y);
    p.rho = std::isfinite(r) ? std::atan(r) : M_PI / 2;
    p.theta = (x == 0 && y == 0) ? 0.0 : std::atan2(y, x);
    if (p.theta < 0) p.theta += 2 * M_PI;
    out.push_back(p);
  }
  return out;
}

std::vector<std::pair<double, double>> real_fixed_points(const LfParams& p) {
  double a = real_param(p.a, "a"), b = real_param(p.b, "b");
  double disc = (b - 1) * (b - 1) + 4 * a;
  std::vector<std::pair<double, double>> out;
  if (disc < 0) return out;
  double s = std::sqrt(disc);
  for (double x : {(1 - b + s) / 2, (1 - b - s) / 2}) out.push_back({x, x});
  if (disc == 0) out.pop_back();
  return out;
}

std::string polar_csv(const std::vector<Polyline>& lines) {
  std::ostringstream os;
  os << "iterate,theta,rho,brk\n";
  for (size_t n = 0; n < lines.size(); n++)
    for (const auto& v : lines[n].vertices) {
      auto pp = to_polar({{v.x, v.y}})[0];
      os << n << "," << pp.theta << "," << pp.rho << "," << (v.brk ? 1 : 0) << "\n";
    }
  return os.str();
}

}  // namespace pkdyn
