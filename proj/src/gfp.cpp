#include "pkdyn/gfp.hpp"

#include <algorithm>
#include <random>

#include "pkdyn/error.hpp"

namespace pkdyn {

uint64_t GfpCtx::pow(uint64_t a, uint64_t e) const {
  uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

uint64_t GfpCtx::inv(uint64_t a) const {
  a %= p;
  if (a == 0) fail(Errc::internal, "division by zero mod p");
  return pow(a, p - 2);
}

bool GfpCtx::is_qr(uint64_t a) const {
  a %= p;
  if (a == 0) return true;
  return pow(a, (p - 1) / 2) == 1;
}

uint64_t GfpCtx::sqrt(uint64_t a) const {
  a %= p;
  if (a == 0) return 0;
  if (!is_qr(a)) fail(Errc::invalid_argument, "not a quadratic residue");
  if (p % 4 == 3) return pow(a, (p + 1) / 4);
  // Tonelli-Shanks for p = 1 mod 4
  uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) { q >>= 1; s++; }
  uint64_t z = 2;
  while (is_qr(z)) z++;
  uint64_t m = s, c = pow(z, q), t = pow(a, q), r = pow(a, (q + 1) / 2);
  while (t != 1) {
    uint64_t t2 = t;
    uint64_t i = 0;
    while (t2 != 1) { t2 = mul(t2, t2); i++; }
    uint64_t b = c;
    for (uint64_t j = 0; j < m - i - 1; j++) b = mul(b, b);
    m = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  return r;
}

uint64_t GfpCtx::root_of_unity(int m) const {
  if ((p - 1) % (uint64_t)m != 0) fail(Errc::invalid_argument, "no m-th root of unity mod p");
  uint64_t g = 2;
  for (;;) {
    uint64_t w = pow(g, (p - 1) / (uint64_t)m);
    // primitive check: w^d != 1 for proper divisors d of m
    bool prim = w != 1;
    for (int d = 2; d < m && prim; d++)
      if (m % d == 0 && pow(w, d) == 1) prim = false;
    if (prim) return w;
    g++;
    if (g > 1000) fail(Errc::internal, "root of unity search failed");
  }
}

uint64_t GfpCtx::from_rational(const Rational& r) const {
  auto to_u64 = [this](const mpz_class& z) {
    mpz_class pm;
    mpz_import(pm.get_mpz_t(), 1, -1, 8, 0, 0, &p);
    mpz_class m = z % pm;
    if (m < 0) m += pm;
    uint64_t v = 0;
    if (m > 0) mpz_export(&v, nullptr, -1, 8, 0, 0, m.get_mpz_t());
    return v;
  };
  uint64_t n64 = to_u64(r.get_num());
  uint64_t d64 = to_u64(r.get_den());
  if (d64 == 0) fail(Errc::invalid_argument, "denominator vanishes mod p");
  return mul(n64, inv(d64));
}

uint64_t GfpCtx::from_cyclotomic(const Cyclotomic& c) const {
  uint64_t v = from_rational(c.c0());
  if (!(c.c1() == 0)) {
    uint64_t z = root_of_unity(c.order());
    v = add(v, mul(from_rational(c.c1()), z));
  }
  return v;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
    if (n % q == 0) return n == q;
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; s++; }
  GfpCtx F{n};
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = F.pow(a, d);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; r++) {
      x = F.mul(x, x);
      if (x == n - 1) { comp = false; break; }
    }
    if (comp) return false;
  }
  return true;
}

uint64_t find_prime(const std::vector<long>& needed_qrs, const std::vector<int>& needed_unity_orders,
                    uint64_t start) {
  for (uint64_t n = start | 1;; n += 2) {
    if (!is_prime_u64(n)) continue;
    GfpCtx F{n};
    bool ok = true;
    for (int m : needed_unity_orders)
      if ((n - 1) % (uint64_t)m != 0) ok = false;
    for (long q : needed_qrs) {
      uint64_t v = q >= 0 ? (uint64_t)q % n : F.neg((uint64_t)(-q) % n);
      if (v == 0 || !F.is_qr(v)) ok = false;
    }
    if (ok) return n;
  }
}

GfpMap compile_gfp(const HomogeneousMap& f, const std::vector<long>& extra_qrs) {
  if (!f.source.single()) fail(Errc::dimension, "mod-p engine handles single-factor maps");
  if (!f.exact()) fail(Errc::field, "mod-p engine needs exact coefficients");
  std::vector<int> orders;
  for (const auto& c : f.blocks[0])
    for (const auto& [e, cf] : c.terms()) {
      int m = cf.cyc().order();
      if (m > 1 && std::find(orders.begin(), orders.end(), m) == orders.end()) orders.push_back(m);
    }
  GfpMap g;
  g.F.p = find_prime(extra_qrs, orders);
  g.nvars = f.source.nvars();
  for (const auto& c : f.blocks[0]) {
    std::vector<std::pair<uint64_t, std::vector<int>>> terms;
    for (const auto& [e, cf] : c.terms()) terms.push_back({g.F.from_cyclotomic(cf.cyc()), e});
    g.comps.push_back(std::move(terms));
  }
  return g;
}

// ---- univariate polynomials mod p ----

static void gfp_trim(GfpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

GfpPoly gfp_pmul(const GfpCtx& F, const GfpPoly& a, const GfpPoly& b) {
  if (a.empty() || b.empty()) return {};
  GfpPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); i++) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); j++)
      c[i + j] = (uint64_t)(((__uint128_t)a[i] * b[j] + c[i + j]) % F.p);
  }
  gfp_trim(c);
  return c;
}

static GfpPoly gfp_pmod(const GfpCtx& F, GfpPoly a, const GfpPoly& b) {
  uint64_t invlc = F.inv(b.back());
  while (a.size() >= b.size()) {
    uint64_t q = F.mul(a.back(), invlc);
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); i++) a[off + i] = F.sub(a[off + i], F.mul(q, b[i]));
    gfp_trim(a);
    if (a.empty()) break;
  }
  return a;
}

GfpPoly gfp_pgcd(const GfpCtx& F, GfpPoly a, GfpPoly b) {
  gfp_trim(a);
  gfp_trim(b);
  while (!b.empty()) {
    GfpPoly r = gfp_pmod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    uint64_t s = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, s);
  }
  return a;
}

GfpPoly gfp_pdiv_exact(const GfpCtx& F, const GfpPoly& a, const GfpPoly& b) {
  if (b.empty()) fail(Errc::internal, "mod-p division by zero polynomial");
  GfpPoly rem = a, q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  uint64_t invlc = F.inv(b.back());
  while (rem.size() >= b.size()) {
    uint64_t qc = F.mul(rem.back(), invlc);
    size_t off = rem.size() - b.size();
    q[off] = qc;
    for (size_t i = 0; i < b.size(); i++) rem[off + i] = F.sub(rem[off + i], F.mul(qc, b[i]));
    gfp_trim(rem);
    if (rem.empty()) break;
  }
  if (!rem.empty()) fail(Errc::internal, "mod-p division not exact");
  gfp_trim(q);
  return q;
}

static GfpPoly gfp_ppow(const GfpCtx& F, const GfpPoly& a, int e, std::vector<GfpPoly>& cache) {
  while ((int)cache.size() <= e) {
    if (cache.empty()) cache.push_back({1});
    else cache.push_back(gfp_pmul(F, cache.back(), a));
  }
  return cache[e];
}

std::vector<long> gfp_degree_sequence_once(const GfpMap& f, int nmax, uint64_t seed) {
  const GfpCtx& F = f.F;
  std::mt19937_64 rng(seed);
  auto rnd = [&]() { return rng() % (F.p - 2) + 1; };
  std::vector<GfpPoly> h;
  for (int i = 0; i < f.nvars; i++) h.push_back(GfpPoly{rnd(), rnd()});
  std::vector<long> degs;
  for (int n = 1; n <= nmax; n++) {
    // power caches per variable for this step
    std::vector<std::vector<GfpPoly>> cache(f.nvars);
    std::vector<GfpPoly> out;
    for (const auto& comp : f.comps) {
      GfpPoly acc;
      for (const auto& [cf, e] : comp) {
        GfpPoly term{cf};
        for (int v = 0; v < f.nvars; v++)
          if (e[v]) term = gfp_pmul(F, term, gfp_ppow(F, h[v], e[v], cache[v]));
        if (acc.size() < term.size()) acc.resize(term.size(), 0);
        for (size_t i = 0; i < term.size(); i++) acc[i] = F.add(acc[i], term[i]);
        gfp_trim(acc);
      }
      out.push_back(std::move(acc));
    }
    for (const auto& c : out)
      if (c.empty()) fail(Errc::degenerate, "iterate component vanishes identically on the line");
    GfpPoly g = out[0];
    for (size_t i = 1; i < out.size() && g.size() > 1; i++) g = gfp_pgcd(F, g, out[i]);
    if (g.size() > 1)
      for (auto& c : out) c = gfp_pdiv_exact(F, c, g);
    long d = 0;
    for (const auto& c : out) d = std::max(d, (long)c.size() - 1);
    degs.push_back(d);
    h = std::move(out);
  }
  return degs;
}

}  // namespace pkdyn
