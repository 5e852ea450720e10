#include "pkdyn/projective.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "pkdyn/error.hpp"

namespace pkdyn {

int Ambient::nvars() const {
  int n = 0;
  for (int k : factors) n += k + 1;
  return n;
}

int Ambient::block_offset(int b) const {
  int n = 0;
  for (int i = 0; i < b; i++) n += factors[i] + 1;
  return n;
}

std::vector<std::string> Ambient::var_names() const {
  static const char* prefix = "xyzuvw";
  std::vector<std::string> names;
  for (int b = 0; b < blocks(); b++) {
    char p = prefix[b % 6];
    for (int i = 0; i <= factors[b]; i++) names.push_back(std::string(1, p) + std::to_string(i));
  }
  return names;
}

// ---- points ----

ProjectivePoint::ProjectivePoint(Ambient amb, std::vector<Scalar> coords)
    : amb_(std::move(amb)), x_(std::move(coords)) {
  if ((int)x_.size() != amb_.nvars()) fail(Errc::dimension, "coordinate count does not match ambient");
  canonicalize();
}

bool ProjectivePoint::exact() const {
  for (const auto& c : x_)
    if (!c.exact()) return false;
  return true;
}

void ProjectivePoint::canonicalize() {
  for (int b = 0; b < amb_.blocks(); b++) {
    int off = amb_.block_offset(b), sz = amb_.block_size(b);
    bool ex = true;
    for (int i = 0; i < sz; i++)
      if (!x_[off + i].exact()) ex = false;
    if (ex) {
      int piv = -1;
      for (int i = 0; i < sz; i++)
        if (!x_[off + i].is_zero()) { piv = i; break; }
      if (piv < 0) fail(Errc::invalid_argument, "projective point has an identically zero block");
      Scalar inv = x_[off + piv].inverse();
      for (int i = 0; i < sz; i++) x_[off + i] = x_[off + i] * inv;
    } else {
      double maxa = 0;
      for (int i = 0; i < sz; i++) maxa = std::max(maxa, std::abs(x_[off + i].to_complex()));
      if (maxa == 0) fail(Errc::invalid_argument, "projective point has an identically zero block");
      int piv = -1;
      for (int i = 0; i < sz; i++)
        if (std::abs(x_[off + i].to_complex()) > 1e-13 * maxa) { piv = i; break; }
      double norm = 0;
      for (int i = 0; i < sz; i++) norm += std::norm(x_[off + i].to_complex());
      norm = std::sqrt(norm);
      std::complex<double> ph = x_[off + piv].to_complex();
      ph /= std::abs(ph);
      std::complex<double> scale = 1.0 / (norm * ph);
      for (int i = 0; i < sz; i++) x_[off + i] = Scalar(x_[off + i].to_complex() * scale);
    }
  }
}

bool ProjectivePoint::equals(const ProjectivePoint& o) const {
  if (!(amb_ == o.amb_)) return false;
  for (size_t i = 0; i < x_.size(); i++)
    if (!(x_[i] == o.x_[i])) return false;
  return true;
}

double ProjectivePoint::distance(const ProjectivePoint& o) const {
  if (!(amb_ == o.amb_)) fail(Errc::dimension, "distance between points of different ambients");
  // exact and float points canonicalize differently, so renormalize both
  // sides into the float convention (unit norm, real positive pivot)
  double d = 0;
  for (int b = 0; b < amb_.blocks(); b++) {
    int off = amb_.block_offset(b), sz = amb_.block_size(b);
    auto canon = [&](const std::vector<Scalar>& x) {
      std::vector<std::complex<double>> v(sz);
      double maxa = 0;
      for (int i = 0; i < sz; i++) {
        v[i] = x[off + i].to_complex();
        maxa = std::max(maxa, std::abs(v[i]));
      }
      int piv = 0;
      for (int i = 0; i < sz; i++)
        if (std::abs(v[i]) > 1e-13 * maxa) { piv = i; break; }
      double norm = 0;
      for (int i = 0; i < sz; i++) norm += std::norm(v[i]);
      std::complex<double> ph = v[piv] / std::abs(v[piv]);
      std::complex<double> scale = 1.0 / (std::sqrt(norm) * ph);
      for (int i = 0; i < sz; i++) v[i] *= scale;
      return v;
    };
    auto a = canon(x_), c = canon(o.x_);
    for (int i = 0; i < sz; i++) d = std::max(d, std::abs(a[i] - c[i]));
  }
  return d;
}

std::string ProjectivePoint::str() const {
  std::ostringstream os;
  for (int b = 0; b < amb_.blocks(); b++) {
    int off = amb_.block_offset(b), sz = amb_.block_size(b);
    os << "[";
    for (int i = 0; i < sz; i++) os << (i ? ":" : "") << x_[off + i].str();
    os << "]";
  }
  return os.str();
}

// ---- maps ----

bool HomogeneousMap::exact() const {
  for (const auto& blk : blocks)
    for (const auto& c : blk)
      if (!c.exact()) return false;
  return true;
}

int HomogeneousMap::degree() const {
  if (!source.single() || !target.single()) fail(Errc::dimension, "degree of a product-space map is a matrix");
  return blocks[0][0].total_degree();
}

std::vector<std::vector<int>> HomogeneousMap::multidegree() const {
  std::vector<std::vector<int>> md(target.blocks(), std::vector<int>(source.blocks(), 0));
  for (int b = 0; b < target.blocks(); b++)
    for (const auto& c : blocks[b])
      for (int a = 0; a < source.blocks(); a++) {
        int off = source.block_offset(a);
        md[b][a] = std::max(md[b][a], c.degree_in_range(off, off + source.block_size(a)));
      }
  return md;
}

void HomogeneousMap::validate() const {
  if ((int)blocks.size() != target.blocks()) fail(Errc::dimension, "component block count mismatch");
  for (int b = 0; b < target.blocks(); b++) {
    if ((int)blocks[b].size() != target.block_size(b)) fail(Errc::dimension, "component count mismatch in a block");
    // each component must be homogeneous per source block, of a common multi-degree
    std::vector<int> ref;
    for (const auto& c : blocks[b]) {
      if (c.nvars() != source.nvars()) fail(Errc::dimension, "component variable count mismatch");
      if (c.is_zero()) continue;
      std::vector<int> md;
      for (int a = 0; a < source.blocks(); a++) {
        int off = source.block_offset(a), sz = source.block_size(a);
        int d = -1;
        for (const auto& [e, cf] : c.terms()) {
          int s = 0;
          for (int i = 0; i < sz; i++) s += e[off + i];
          if (d < 0) d = s;
          else if (d != s) fail(Errc::invalid_argument, "component not multi-homogeneous");
        }
        md.push_back(d);
      }
      if (ref.empty()) ref = md;
      else if (ref != md) fail(Errc::invalid_argument, "components of a block differ in multi-degree");
    }
  }
}

HomogeneousMap cremona(int k) {
  if (k < 1) fail(Errc::invalid_argument, "cremona needs k >= 1");
  Ambient amb({k});
  HomogeneousMap f;
  f.source = f.target = amb;
  f.blocks.resize(1);
  for (int j = 0; j <= k; j++) {
    std::vector<int> e(k + 1, 1);
    e[j] = 0;
    f.blocks[0].push_back(MultiPoly::monomial(k + 1, e, Scalar(1)));
  }
  f.inverse = std::make_shared<HomogeneousMap>();
  f.inverse->source = f.inverse->target = amb;
  f.inverse->blocks = f.blocks;
  return f;
}

HomogeneousMap cremona_product(int k, int d) {
  if (k < 1 || d < 2) fail(Errc::invalid_argument, "cremona_product needs k >= 1, d >= 2");
  std::vector<int> factors(d, k);
  Ambient amb(factors);
  int nv = amb.nvars();
  HomogeneousMap f;
  f.source = f.target = amb;
  f.blocks.resize(d);
  // block 0: 1/x clearing denominators
  for (int j = 0; j <= k; j++) {
    std::vector<int> e(nv, 0);
    for (int i = 0; i <= k; i++)
      if (i != j) e[i] = 1;
    f.blocks[0].push_back(MultiPoly::monomial(nv, e, Scalar(1)));
  }
  // block m >= 1: x/y^{(m)} coordinatewise, cleared blockwise
  for (int m = 1; m < d; m++) {
    int off = amb.block_offset(m);
    for (int j = 0; j <= k; j++) {
      std::vector<int> e(nv, 0);
      e[j] = 1;
      for (int i = 0; i <= k; i++)
        if (i != j) e[off + i] = 1;
      f.blocks[m].push_back(MultiPoly::monomial(nv, e, Scalar(1)));
    }
  }
  return f;
}

HomogeneousMap identity_map(const Ambient& amb) {
  HomogeneousMap f;
  f.source = f.target = amb;
  f.blocks.resize(amb.blocks());
  for (int b = 0; b < amb.blocks(); b++)
    for (int i = 0; i < amb.block_size(b); i++)
      f.blocks[b].push_back(MultiPoly::variable(amb.nvars(), amb.block_offset(b) + i));
  return f;
}

bool is_identity(const HomogeneousMap& f) {
  if (!f.self_map()) return false;
  for (int b = 0; b < f.target.blocks(); b++) {
    int off = f.source.block_offset(b);
    Scalar ref(0);
    for (int i = 0; i < (int)f.blocks[b].size(); i++) {
      const auto& c = f.blocks[b][i];
      if (c.term_count() != 1) return false;
      const auto& [e, cf] = *c.terms().begin();
      std::vector<int> want(f.source.nvars(), 0);
      want[off + i] = 1;
      if (e != want) return false;
      if (i == 0) ref = cf;
      else if (!(cf == ref)) return false;
    }
  }
  return true;
}

std::optional<ProjectivePoint> evaluate(const HomogeneousMap& f, const ProjectivePoint& p) {
  if (!(f.source == p.ambient())) fail(Errc::dimension, "point ambient does not match map source");
  std::vector<Scalar> out;
  bool exact_all = p.exact() && f.exact();
  for (int b = 0; b < f.target.blocks(); b++) {
    std::vector<Scalar> vals;
    bool all_zero = true;
    double maxmag = 0, scale = 0;
    for (const auto& c : f.blocks[b]) {
      Scalar v = c.eval(p.coords());
      if (exact_all) {
        if (!v.is_zero()) all_zero = false;
      } else {
        maxmag = std::max(maxmag, std::abs(v.to_complex()));
        // termwise magnitude bound, for a relative zero test
        for (const auto& [e, cf] : c.terms()) {
          double t = std::abs(cf.to_complex());
          for (int i = 0; i < c.nvars(); i++)
            for (int j = 0; j < e[i]; j++) t *= std::abs(p.coords()[i].to_complex());
          scale = std::max(scale, t);
        }
      }
      vals.push_back(v);
    }
    if (!exact_all) all_zero = maxmag <= 1e-10 * std::max(scale, 1e-300);
    if (all_zero) return std::nullopt;
    for (auto& v : vals) out.push_back(v);
  }
  return ProjectivePoint(f.target, std::move(out));
}

HomogeneousMap compose_reduce(const HomogeneousMap& f, const HomogeneousMap& g) {
  if (!(g.target == f.source)) fail(Errc::dimension, "composition ambient mismatch");
  std::vector<MultiPoly> subs;
  for (const auto& blk : g.blocks)
    for (const auto& c : blk) subs.push_back(c);
  HomogeneousMap h;
  h.source = g.source;
  h.target = f.target;
  h.blocks.resize(f.target.blocks());
  for (int b = 0; b < f.target.blocks(); b++) {
    for (const auto& c : f.blocks[b]) h.blocks[b].push_back(c.subst(subs));
    bool ex = true;
    for (const auto& c : h.blocks[b])
      if (!c.exact()) ex = false;
    if (ex) {
      MultiPoly gcd(g.source.nvars());
      for (const auto& c : h.blocks[b]) {
        gcd = gcd.is_zero() ? c : poly_gcd(gcd, c);
        if (gcd.is_constant() && !gcd.is_zero()) break;
      }
      if (!gcd.is_zero() && !gcd.is_constant()) {
        gcd = gcd.normalized();
        for (auto& c : h.blocks[b]) c = divide_exact(c, gcd);
      }
    } else {
      // float coefficients: strip the common monomial content only
      std::vector<int> mn;
      for (const auto& c : h.blocks[b])
        for (const auto& [e, cf] : c.terms()) {
          if (mn.empty()) mn = e;
          else
            for (size_t i = 0; i < mn.size(); i++) mn[i] = std::min(mn[i], e[i]);
        }
      bool any = false;
      for (int v : mn) any = any || v > 0;
      if (any) {
        MultiPoly mono = MultiPoly::monomial(g.source.nvars(), mn, Scalar(1));
        for (auto& c : h.blocks[b]) c = divide_exact(c, mono);
      }
    }
  }
  return h;
}

MultiPoly jacobian_det(const HomogeneousMap& f) {
  if (!f.source.single() || !f.target.single()) fail(Errc::dimension, "jacobian_det needs a single-factor ambient");
  int n = f.source.nvars();
  if ((int)f.blocks[0].size() != n) fail(Errc::dimension, "jacobian_det needs k+1 components");
  std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly(n)));
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) m[i][j] = f.blocks[0][i].derivative(j);
  return poly_determinant(std::move(m));
}

// ---- linear factor extraction ----

namespace {

// divide p, viewed as a polynomial in variable v, by the monic linear form
// (x_v - r) where r = -sum of the other terms of the factor; returns the
// remainder (p with x_v := r substituted along Horner).
void divide_monic_linear(const MultiPoly& p, int v, const MultiPoly& r, MultiPoly& quot, MultiPoly& rem) {
  int dv = 0;
  for (const auto& [e, c] : p.terms()) dv = std::max(dv, e[v]);
  std::vector<MultiPoly> coef(dv + 1, MultiPoly(p.nvars()));
  for (const auto& [e, c] : p.terms()) {
    auto e2 = e;
    int k = e2[v];
    e2[v] = 0;
    coef[k].add_term(e2, c);
  }
  MultiPoly acc = coef.empty() ? MultiPoly(p.nvars()) : coef[dv];
  std::vector<MultiPoly> q;
  for (int k = dv - 1; k >= 0; k--) {
    q.push_back(acc);
    acc = acc * r + coef[k];
  }
  rem = acc;
  std::reverse(q.begin(), q.end());
  quot = MultiPoly(p.nvars());
  for (size_t k = 0; k < q.size(); k++) {
    for (const auto& [e, c] : q[k].terms()) {
      auto e2 = e;
      e2[v] += (int)k;
      quot.add_term(e2, c);
    }
  }
}

double poly_max_coeff(const MultiPoly& p) {
  double m = 0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(c.to_complex()));
  return m;
}

// try to recognize a numeric root as an exact scalar in the field spanned by
// the polynomial's coefficients (rational, or rational + rational * zeta)
bool reconstruct_exact(std::complex<double> z, int cyc_order, Scalar& out) {
  auto recon_rat = [](double x, Rational& r) {
    // continued fractions, denominator capped
    double a = x;
    long p0 = 0, p1 = 1, q0 = 1, q1 = 0;
    for (int it = 0; it < 40; it++) {
      double fl = std::floor(a);
      long ai = (long)fl;
      long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
      if (std::abs(q2) > 1000000) return false;
      p0 = p1; p1 = p2; q0 = q1; q1 = q2;
      if (q1 != 0 && std::abs(x - (double)p1 / (double)q1) < 1e-6 * std::max(1.0, std::abs(x))) {
        r = Rational(p1, q1);
        r.canonicalize();
        return true;
      }
      double frac = a - fl;
      if (std::abs(frac) < 1e-12) return false;
      a = 1.0 / frac;
    }
    return false;
  };
  if (std::abs(z.imag()) < 1e-6 * std::max(1.0, std::abs(z))) {
    Rational r;
    if (recon_rat(z.real(), r)) {
      out = Scalar(r);
      return true;
    }
    // fall through: a real value can still need the zeta basis (e.g. m=6 has irrational reals)
  }
  if (cyc_order > 1) {
    auto zm = Cyclotomic::zeta(cyc_order).to_complex();
    // z = a + b*zeta: solve the 2x2 real system
    double det = zm.imag();
    if (std::abs(det) < 1e-12) return false;
    double b = z.imag() / det;
    double a = z.real() - b * zm.real();
    Rational ra, rb;
    if (recon_rat(a, ra) && recon_rat(b, rb)) {
      out = Scalar(Cyclotomic(cyc_order, ra, rb));
      return true;
    }
  }
  return false;
}

int coeff_cyc_order(const MultiPoly& p) {
  int m = 1;
  for (const auto& [e, c] : p.terms()) {
    if (!c.exact()) continue;
    int o = c.cyc().order();
    if (o == 1) continue;
    if (m == 1) m = o;
    else if (m != o) {
      if ((m == 3 && o == 6) || (m == 6 && o == 3)) m = 6;
    }
  }
  return m;
}

}  // namespace

LinearFactors linear_factors(const MultiPoly& p) {
  if (!p.is_homogeneous()) fail(Errc::invalid_argument, "linear_factors expects a homogeneous polynomial");
  LinearFactors out;
  out.cofactor = p;
  if (p.is_zero() || p.total_degree() == 0) return out;
  int nv = p.nvars();
  bool exact = p.exact();
  int cyc = exact ? coeff_cyc_order(p) : 1;

  // coordinate hyperplanes first
  for (int v = 0; v < nv; v++) {
    int mult = 0;
    while (!out.cofactor.is_constant()) {
      int mn = INT32_MAX;
      for (const auto& [e, c] : out.cofactor.terms()) mn = std::min(mn, e[v]);
      if (mn < 1) break;
      MultiPoly mono = MultiPoly::variable(nv, v);
      out.cofactor = divide_exact(out.cofactor, mono);
      mult++;
    }
    if (mult) out.factors.push_back({MultiPoly::variable(nv, v), mult});
  }

  // general linear forms, leading variable v, coefficients on later variables
  for (int v = 0; v < nv && !out.cofactor.is_constant(); v++) {
    // candidate coefficient values per later variable, read off 2-variable probes
    std::vector<std::vector<Scalar>> cand(nv);
    bool probe_ok = true;
    for (int i = v + 1; i < nv; i++) {
      MultiPoly b(nv);
      for (const auto& [e, c] : out.cofactor.terms()) {
        bool keep = true;
        for (int j = 0; j < nv; j++)
          if (j != v && j != i && e[j] != 0) keep = false;
        if (keep) b.add_term(e, c);
      }
      cand[i].push_back(Scalar(0));
      if (b.is_zero()) continue;
      // roots of b(s, 1) in s; factor x_v + c x_i vanishes at s = -c
      int dv = 0;
      for (const auto& [e, c] : b.terms()) dv = std::max(dv, e[v]);
      if (dv == 0) continue;
      std::vector<std::complex<double>> u(dv + 1, 0.0);
      for (const auto& [e, c] : b.terms()) u[e[v]] += c.to_complex();
      // Durand-Kerner on the dense complex polynomial
      int n = dv;
      while (n > 0 && std::abs(u[n]) < 1e-300) n--;
      if (n == 0) continue;
      std::vector<std::complex<double>> a(u.begin(), u.begin() + n + 1);
      for (auto& x : a) x /= a[n];
      double R = 1.0;
      for (int k = 0; k < n; k++) R = std::max(R, 1.0 + std::abs(a[k]));
      std::vector<std::complex<double>> zr(n);
      for (int k = 0; k < n; k++) {
        double th = 2.0 * M_PI * k / n + 0.7071067811865475;
        zr[k] = R * std::complex<double>(std::cos(th), std::sin(th));
      }
      for (int iter = 0; iter < 500; iter++) {
        double move = 0;
        for (int k = 0; k < n; k++) {
          std::complex<double> num = 1.0;
          for (int d = n - 1; d >= 0; d--) num = num * zr[k] + a[d];
          std::complex<double> den = 1.0;
          for (int j = 0; j < n; j++)
            if (j != k) den *= (zr[k] - zr[j]);
          if (den == 0.0) den = 1e-300;
          auto dd = num / den;
          zr[k] -= dd;
          move = std::max(move, std::abs(dd));
        }
        if (move < 1e-13) break;
      }
      // a multiple root shows up as a cluster; take the centroid, then polish
      // it with Newton on the derivative of matching order, where it is simple
      std::vector<std::complex<double>> centers;
      std::vector<bool> used(n, false);
      for (int k = 0; k < n; k++) {
        if (used[k]) continue;
        std::complex<double> sum = zr[k];
        int cnt = 1;
        for (int j = k + 1; j < n; j++)
          if (!used[j] && std::abs(zr[j] - zr[k]) < 1e-3 * std::max(1.0, std::abs(zr[k]))) {
            used[j] = true;
            sum += zr[j];
            cnt++;
          }
        std::complex<double> z0 = sum / (double)cnt;
        std::vector<std::complex<double>> d(a);
        for (int t = 1; t < cnt; t++) {
          for (size_t j = 1; j < d.size(); j++) d[j - 1] = d[j] * (double)j;
          d.pop_back();
        }
        for (int it = 0; it < 30 && d.size() >= 2; it++) {
          std::complex<double> fv = 0, fp = 0;
          for (int j = (int)d.size() - 1; j >= 0; j--) {
            if (j < (int)d.size() - 1) fp = fp * z0 + fv;
            fv = fv * z0 + d[j];
          }
          // fp computed via synthetic scheme above is f'(z0)
          if (std::abs(fp) < 1e-300) break;
          auto step = fv / fp;
          z0 -= step;
          if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(z0))) break;
        }
        centers.push_back(z0);
      }
      for (auto& root : centers) {
        std::complex<double> c = -root;
        if (exact) {
          Scalar s(0);
          if (reconstruct_exact(c, cyc, s)) cand[i].push_back(s);
        } else {
          cand[i].push_back(Scalar(c));
        }
      }
    }
    if (!probe_ok) continue;
    // assemble candidate tuples (capped) and verify by division
    std::vector<std::vector<Scalar>> tuples = {{}};
    for (int i = v + 1; i < nv; i++) {
      std::vector<std::vector<Scalar>> next;
      for (const auto& t : tuples)
        for (const auto& c : cand[i]) {
          auto t2 = t;
          t2.push_back(c);
          next.push_back(std::move(t2));
          if (next.size() > 400) break;
        }
      tuples = std::move(next);
    }
    for (const auto& t : tuples) {
      bool trivial = true;
      for (const auto& c : t)
        if (!c.is_zero()) trivial = false;
      if (trivial) continue;  // plain x_v already handled
      MultiPoly lin = MultiPoly::variable(nv, v);
      MultiPoly r(nv);  // substitution x_v := r for Horner division
      for (int i = v + 1; i < nv; i++) {
        if (t[i - v - 1].is_zero()) continue;
        lin = lin + MultiPoly::variable(nv, i).scaled(t[i - v - 1]);
        r = r - MultiPoly::variable(nv, i).scaled(t[i - v - 1]);
      }
      int mult = 0;
      while (!out.cofactor.is_constant()) {
        MultiPoly q(nv), rem(nv);
        divide_monic_linear(out.cofactor, v, r, q, rem);
        bool divides = exact ? rem.is_zero()
                             : poly_max_coeff(rem) <= 1e-8 * std::max(poly_max_coeff(out.cofactor), 1e-300);
        if (!divides) break;
        out.cofactor = q;
        mult++;
      }
      if (mult) out.factors.push_back({lin, mult});
    }
  }
  return out;
}

std::optional<ProjectivePoint> contracts_to(const HomogeneousMap& f, const MultiPoly& hyperplane,
                                            int samples, double tol) {
  if (!f.source.single()) fail(Errc::dimension, "contracts_to needs a single-factor source");
  if (hyperplane.is_zero() || hyperplane.total_degree() != 1)
    fail(Errc::invalid_argument, "hyperplane must be a nonzero linear form");
  if (samples < 1) fail(Errc::invalid_argument, "samples must be positive");
  int nv = f.source.nvars();
  // pivot: leading variable of the form
  int piv = -1;
  Scalar cpiv(0);
  std::vector<Scalar> coef(nv, Scalar(0));
  for (const auto& [e, c] : hyperplane.terms())
    for (int i = 0; i < nv; i++)
      if (e[i] == 1) {
        coef[i] = c;
        if (piv < 0) { piv = i; cpiv = c; }
      }
  std::mt19937 rng(20240817u);
  std::uniform_int_distribution<int> dist(-10, 10);
  std::optional<ProjectivePoint> ref;
  int usable = 0;
  for (int s = 0; s < samples; s++) {
    std::vector<Scalar> x(nv, Scalar(0));
    bool nonzero = false;
    for (int i = 0; i < nv; i++) {
      if (i == piv) continue;
      long vv = dist(rng);
      x[i] = Scalar(Rational(vv));
      nonzero = nonzero || vv != 0;
    }
    if (!nonzero) { s--; continue; }
    Scalar acc(0);
    for (int i = 0; i < nv; i++)
      if (i != piv && !coef[i].is_zero()) acc = acc + coef[i] * x[i];
    x[piv] = -(acc / cpiv);
    bool allz = true;
    for (auto& v : x)
      if (!v.is_zero()) allz = false;
    if (allz) continue;
    ProjectivePoint pt(f.source, x);
    auto img = evaluate(f, pt);
    if (!img) continue;
    usable++;
    if (!ref) {
      ref = img;
    } else {
      bool same = ref->exact() && img->exact() ? ref->equals(*img) : ref->distance(*img) < tol;
      if (!same) return std::nullopt;
    }
  }
  if (!ref) fail(Errc::inconclusive, "all sample points were indeterminate");
  (void)usable;
  return ref;
}

HomogeneousMap map_from_components(const Ambient& amb, const std::vector<std::vector<std::string>>& comps) {
  HomogeneousMap f;
  f.source = f.target = amb;
  auto names = amb.var_names();
  for (const auto& blk : comps) {
    std::vector<MultiPoly> b;
    for (const auto& s : blk) b.push_back(parse_poly(s, names));
    f.blocks.push_back(std::move(b));
  }
  f.validate();
  return f;
}

}  // namespace pkdyn
