#include "pkdyn/mpreal.hpp"

#include <algorithm>

#include "pkdyn/error.hpp"

namespace pkdyn {

std::string MpReal::str(int digits) const {
  char buf[256];
  mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
  return buf;
}

static MpReal mp2_maxabs(const Mp2Poly& a) {
  MpReal m(0L);
  for (const auto& row : a)
    for (const auto& v : row)
      if (abs(v) > m) m = abs(v);
  return m;
}

Mp2Poly mp2_trim(const Mp2Poly& a) {
  static const MpReal tol("1e-55");
  MpReal mx = mp2_maxabs(a);
  if (mx.is_zero()) return {{MpReal(0L)}};
  MpReal cut = tol * mx;
  int rmax = 0, cmax = 0;
  Mp2Poly b = a;
  for (size_t i = 0; i < b.size(); i++)
    for (size_t j = 0; j < b[i].size(); j++) {
      if (abs(b[i][j]) > cut) {
        rmax = std::max(rmax, (int)i);
        cmax = std::max(cmax, (int)j);
      } else {
        b[i][j] = MpReal(0L);
      }
    }
  b.resize(rmax + 1);
  for (auto& row : b) row.resize(cmax + 1, MpReal(0L));
  return b;
}

int mp2_totdeg(const Mp2Poly& a) {
  int d = 0;
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < a[i].size(); j++)
      if (!a[i][j].is_zero()) d = std::max(d, (int)(i + j));
  return d;
}

Mp2Poly mp2_mul(const Mp2Poly& a, const Mp2Poly& b) {
  int ra = a.size(), ca = a[0].size(), rb = b.size(), cb = b[0].size();
  Mp2Poly c(ra + rb - 1, std::vector<MpReal>(ca + cb - 1, MpReal(0L)));
  for (int i = 0; i < ra; i++)
    for (int p = 0; p < ca; p++) {
      if (a[i][p].is_zero()) continue;
      for (int j = 0; j < rb; j++)
        for (int q = 0; q < cb; q++)
          if (!b[j][q].is_zero()) c[i + j][p + q] += a[i][p] * b[j][q];
    }
  return c;
}

Mp2Poly mp2_add(const Mp2Poly& a, const Mp2Poly& b) {
  size_t r = std::max(a.size(), b.size());
  size_t c = std::max(a[0].size(), b[0].size());
  Mp2Poly out(r, std::vector<MpReal>(c, MpReal(0L)));
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < a[i].size(); j++) out[i][j] += a[i][j];
  for (size_t i = 0; i < b.size(); i++)
    for (size_t j = 0; j < b[i].size(); j++) out[i][j] += b[i][j];
  return out;
}

static Mp2Poly mp2_scale(const Mp2Poly& a, const MpReal& s) {
  Mp2Poly b = a;
  for (auto& row : b)
    for (auto& v : row) v *= s;
  return b;
}

Mp2Poly mp2_norm1(const Mp2Poly& a) {
  MpReal mx = mp2_maxabs(a);
  if (mx.is_zero()) return a;
  return mp2_scale(a, MpReal(1L) / mx);
}

// G(F0, F1, F2) with G homogeneous of degree dG: sum over terms
// G[i][j] * F1^i * F2^j * F0^(dG-i-j), Horner over rows then columns.
static Mp2Poly mp2_compose(const Mp2Poly& G, const Mp2Poly& F0, const Mp2Poly& F1,
                           const Mp2Poly& F2, int dG) {
  std::vector<Mp2Poly> F0pow = {{{MpReal(1L)}}};
  for (int i = 0; i < dG; i++) F0pow.push_back(mp2_mul(F0pow.back(), F0));
  Mp2Poly out;
  bool have_out = false;
  for (int i = (int)G.size() - 1; i >= 0; i--) {
    int mi = dG - i;
    Mp2Poly S;
    bool have_s = false;
    int jtop = std::min(mi, (int)G[i].size() - 1);
    for (int j = jtop; j >= 0; j--) {
      const MpReal& coeff = G[i][j];
      if (!have_s) {
        S = coeff.is_zero() ? Mp2Poly{{MpReal(0L)}} : mp2_scale(F0pow[mi - j], coeff);
        have_s = true;
      } else {
        S = mp2_mul(S, F2);
        if (!coeff.is_zero()) S = mp2_add(S, mp2_scale(F0pow[mi - j], coeff));
      }
    }
    if (!have_s) S = {{MpReal(0L)}};
    if (!have_out) {
      out = S;
      have_out = true;
    } else {
      out = mp2_add(mp2_mul(out, F1), S);
    }
  }
  return out;
}

// synthetic division by (c0 + u), u = row direction; returns relative remainder
static bool mp2_divline_u(const Mp2Poly& a, const MpReal& c0, Mp2Poly& quot, MpReal& rel) {
  int r = a.size(), c = a[0].size();
  if (r == 1) return false;
  Mp2Poly Q(r - 1, std::vector<MpReal>(c, MpReal(0L)));
  Mp2Poly R = a;
  for (int i = r - 1; i > 0; i--)
    for (int j = 0; j < c; j++) {
      MpReal q = R[i][j];
      Q[i - 1][j] = q;
      R[i][j] = MpReal(0L);
      R[i - 1][j] -= c0 * q;
    }
  MpReal rem(0L);
  for (int j = 0; j < c; j++)
    if (abs(R[0][j]) > rem) rem = abs(R[0][j]);
  MpReal mx = mp2_maxabs(a);
  quot = std::move(Q);
  rel = rem / mx;
  return true;
}

static Mp2Poly mp2_transpose(const Mp2Poly& a) {
  Mp2Poly t(a[0].size(), std::vector<MpReal>(a.size(), MpReal(0L)));
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < a[i].size(); j++) t[j][i] = a[i][j];
  return t;
}

static bool mp2_divline_v(const Mp2Poly& a, const MpReal& c0, Mp2Poly& quot, MpReal& rel) {
  Mp2Poly q;
  if (!mp2_divline_u(mp2_transpose(a), c0, q, rel)) return false;
  quot = mp2_transpose(q);
  return true;
}

std::vector<long> mp_degree_sequence(const MpMapData& f, int nmax) {
  if (f.comps.size() != 3) fail(Errc::dimension, "high-precision engine handles P^2 maps");
  static const MpReal thresh("1e-40");
  const Mp2Poly &F0 = f.comps[0], &F1 = f.comps[1], &F2 = f.comps[2];
  std::vector<Mp2Poly> G = f.comps;
  int D = f.degree;
  std::vector<long> degs = {D};
  for (int n = 2; n <= nmax; n++) {
    std::vector<Mp2Poly> comps;
    for (const auto& Gc : G) comps.push_back(mp2_trim(mp2_compose(Gc, F0, F1, F2, D)));
    // x0 comes out via the total-degree deficit of the chart representation
    int newD = 0;
    for (const auto& c : comps) newD = std::max(newD, mp2_totdeg(c));
    for (auto& c : comps) c = mp2_norm1(c);
    // other contracted lines divide out exactly (to working precision)
    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& [axis, c0] : f.strip_lines) {
        std::vector<Mp2Poly> qs(comps.size());
        bool all = true;
        for (size_t i = 0; i < comps.size() && all; i++) {
          MpReal rel;
          bool ok = axis == 0 ? mp2_divline_u(comps[i], c0, qs[i], rel)
                              : mp2_divline_v(comps[i], c0, qs[i], rel);
          all = ok && rel < thresh;
        }
        if (all) {
          for (size_t i = 0; i < comps.size(); i++) comps[i] = mp2_norm1(mp2_trim(qs[i]));
          newD--;
          progress = true;
        }
      }
    }
    D = newD;
    G = std::move(comps);
    degs.push_back(D);
  }
  return degs;
}

}  // namespace pkdyn
