#include "pkdyn/degseq.hpp"

#include <algorithm>
#include <cmath>

#include "pkdyn/error.hpp"
#include "pkdyn/gfp.hpp"
#include "pkdyn/mpreal.hpp"

namespace pkdyn {

namespace {

DegreeSequence degseq_symbolic(const HomogeneousMap& f, int n, long budget) {
  DegreeSequence out;
  out.product = !f.source.single();
  HomogeneousMap g = f;
  long work = 0;
  for (int i = 1; i <= n; i++) {
    for (const auto& blk : g.blocks) {
      bool blockzero = true;
      for (const auto& c : blk)
        if (!c.is_zero()) blockzero = false;
      if (blockzero) fail(Errc::degenerate, "iterate has an identically zero block");
      for (const auto& c : blk) work += (long)c.term_count();
    }
    if (budget > 0 && work > budget) fail(Errc::budget, "iteration budget exceeded");
    auto md = g.multidegree();
    if (out.product) {
      IntMatrix m(md.size(), md[0].size());
      for (size_t r = 0; r < md.size(); r++)
        for (size_t c = 0; c < md[r].size(); c++) m.at(r, c) = md[r][c];
      out.multidegrees.push_back(m);
      long mx = 0;
      for (const auto& row : md)
        for (int v : row) mx = std::max(mx, (long)v);
      out.degrees.push_back(mx);
    } else {
      out.degrees.push_back(g.degree());
    }
    if (i < n) g = compose_reduce(g, f);
  }
  return out;
}

DegreeSequence degseq_gfp(const HomogeneousMap& f, int n) {
  GfpMap g = compile_gfp(f);
  auto run = [&](uint64_t seed) { return gfp_degree_sequence_once(g, n, seed); };
  auto s1 = run(101), s2 = run(202);
  std::vector<long> degs;
  if (s1 == s2) {
    degs = s1;
  } else {
    auto s3 = run(303);
    if (s3 == s1) degs = s1;
    else if (s3 == s2) degs = s2;
    else fail(Errc::internal, "degree sequences disagree across three random lines");
  }
  DegreeSequence out;
  out.degrees = std::move(degs);
  return out;
}

}  // namespace

DegreeSequence degree_sequence(const HomogeneousMap& f, int n, long budget) {
  if (!f.self_map()) fail(Errc::dimension, "degree_sequence needs a self-map");
  if (n < 1) fail(Errc::invalid_argument, "need n >= 1");
  if (f.source.single() && f.mp) {
    DegreeSequence out;
    out.degrees = mp_degree_sequence(*f.mp, n);
    return out;
  }
  if (f.source.single() && f.exact()) return degseq_gfp(f, n);
  return degseq_symbolic(f, n, budget);
}

double delta_estimate(const DegreeSequence& seq) {
  std::vector<double> d;
  if (seq.product && !seq.multidegrees.empty()) {
    for (const auto& m : seq.multidegrees) {
      long mx = 0;
      for (int i = 0; i < m.rows(); i++)
        for (int j = 0; j < m.cols(); j++) mx = std::max(mx, (long)mpz_get_si(m.at(i, j).get_mpz_t()));
      d.push_back((double)mx);
    }
  } else {
    for (long v : seq.degrees) d.push_back((double)v);
  }
  int n = (int)d.size();
  if (n < 4) fail(Errc::invalid_argument, "need at least 4 degrees");
  // no growth over the second half: the degrees are bounded, the limit is 1
  double head = *std::max_element(d.begin(), d.begin() + n / 2);
  double tail = *std::max_element(d.begin() + n / 2, d.end());
  if (tail <= head) return 1.0;

  // least squares of d_k = c * t^k + e over the trailing half, best t by
  // grid scan plus golden-section refinement
  int lo = n / 2;
  auto sse = [&](double t) {
    // normal equations for (c, e) given t
    double s1 = 0, st = 0, stt = 0, sd = 0, std_ = 0;
    int m = 0;
    for (int k = lo; k < n; k++) {
      double tk = std::pow(t, k + 1);
      s1 += 1;
      st += tk;
      stt += tk * tk;
      sd += d[k];
      std_ += tk * d[k];
      m++;
    }
    double det = stt * s1 - st * st;
    double c, e;
    if (std::abs(det) < 1e-300) {
      c = sd / st;
      e = 0;
    } else {
      c = (std_ * s1 - sd * st) / det;
      e = (stt * sd - st * std_) / det;
    }
    double err = 0;
    for (int k = lo; k < n; k++) {
      double r = c * std::pow(t, k + 1) + e - d[k];
      err += r * r;
    }
    return err;
  };
  double best = 1.0, bestv = sse(1.0);
  for (int i = 0; i <= 400; i++) {
    double t = 1.0 + 2.0 * i / 400.0;
    double v = sse(t);
    if (v < bestv) { bestv = v; best = t; }
  }
  double a = std::max(1.0, best - 0.01), b = std::min(3.0, best + 0.01);
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = sse(x1), f2 = sse(x2);
  for (int it = 0; it < 80; it++) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = sse(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = sse(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace pkdyn
