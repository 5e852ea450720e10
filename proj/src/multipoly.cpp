#include "pkdyn/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "pkdyn/error.hpp"

namespace pkdyn {

bool GrlexGreater::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
  int ta = std::accumulate(a.begin(), a.end(), 0);
  int tb = std::accumulate(b.begin(), b.end(), 0);
  if (ta != tb) return ta > tb;
  return a > b;
}

MultiPoly MultiPoly::constant(int nvars, const Scalar& c) {
  MultiPoly p(nvars);
  p.add_term(std::vector<int>(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) fail(Errc::dimension, "variable index out of range");
  std::vector<int> e(nvars, 0);
  e[i] = 1;
  return monomial(nvars, e, Scalar(1));
}

MultiPoly MultiPoly::monomial(int nvars, const std::vector<int>& e, const Scalar& c) {
  MultiPoly p(nvars);
  p.add_term(e, c);
  return p;
}

void MultiPoly::add_term(const std::vector<int>& e, const Scalar& c) {
  if ((int)e.size() != nvars_) fail(Errc::dimension, "exponent vector length mismatch");
  auto it = t_.find(e);
  if (it == t_.end()) {
    if (!c.is_zero()) t_.emplace(e, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && total_degree() == 0);
}

int MultiPoly::total_degree() const {
  if (t_.empty()) return -1;
  const auto& e = t_.begin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

int MultiPoly::degree_in_range(int lo, int hi) const {
  int d = 0;
  for (const auto& [e, c] : t_) {
    int s = 0;
    for (int i = lo; i < hi && i < (int)e.size(); i++) s += e[i];
    d = std::max(d, s);
  }
  return d;
}

bool MultiPoly::is_homogeneous(int* deg) const {
  if (t_.empty()) {
    if (deg) *deg = 0;
    return true;
  }
  int d = total_degree();
  for (const auto& [e, c] : t_) {
    if (std::accumulate(e.begin(), e.end(), 0) != d) return false;
  }
  if (deg) *deg = d;
  return true;
}

bool MultiPoly::exact() const {
  for (const auto& [e, c] : t_)
    if (!c.exact()) return false;
  return true;
}

Scalar MultiPoly::leading_coeff() const {
  if (t_.empty()) return Scalar(0);
  return t_.begin()->second;
}

MultiPoly MultiPoly::normalized() const {
  if (t_.empty()) return *this;
  return scaled(leading_coeff().inverse());
}

MultiPoly MultiPoly::operator-() const { return scaled(Scalar(-1)); }

MultiPoly MultiPoly::scaled(const Scalar& c) const {
  MultiPoly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : t_) r.t_.emplace(e, v * c);
  return r;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) fail(Errc::dimension, "variable count mismatch");
  MultiPoly r = a;
  for (const auto& [e, c] : b.t_) r.add_term(e, c);
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) fail(Errc::dimension, "variable count mismatch");
  MultiPoly r(a.nvars_);
  std::vector<int> e(a.nvars_);
  for (const auto& [ea, ca] : a.t_) {
    for (const auto& [eb, cb] : b.t_) {
      for (int i = 0; i < a.nvars_; i++) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  return a.nvars_ == b.nvars_ && a.t_.size() == b.t_.size() &&
         std::equal(a.t_.begin(), a.t_.end(), b.t_.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) fail(Errc::invalid_argument, "negative power");
  MultiPoly r = constant(nvars_, Scalar(1));
  MultiPoly base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = e > 1 ? base * base : base;
    e >>= 1;
  }
  return r;
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : t_) {
    if (e[var] == 0) continue;
    auto e2 = e;
    e2[var]--;
    r.add_term(e2, c * Scalar((long)e[var]));
  }
  return r;
}

Scalar MultiPoly::eval(const std::vector<Scalar>& x) const {
  if ((int)x.size() != nvars_) fail(Errc::dimension, "evaluation point length mismatch");
  Scalar s(0);
  for (const auto& [e, c] : t_) {
    Scalar m = c;
    for (int i = 0; i < nvars_; i++)
      for (int j = 0; j < e[i]; j++) m = m * x[i];
    s = s + m;
  }
  return s;
}

MultiPoly MultiPoly::subst(const std::vector<MultiPoly>& x) const {
  if ((int)x.size() != nvars_) fail(Errc::dimension, "substitution arity mismatch");
  int nv = x.empty() ? 0 : x[0].nvars();
  // cache powers of each substituted polynomial
  std::vector<std::vector<MultiPoly>> pw(nvars_);
  for (int i = 0; i < nvars_; i++) pw[i].push_back(MultiPoly::constant(nv, Scalar(1)));
  MultiPoly r(nv);
  for (const auto& [e, c] : t_) {
    MultiPoly m = MultiPoly::constant(nv, c);
    for (int i = 0; i < nvars_; i++) {
      while ((int)pw[i].size() <= e[i]) pw[i].push_back(pw[i].back() * x[i]);
      if (e[i]) m = m * pw[i][e[i]];
    }
    r = r + m;
  }
  return r;
}

// ---- exact division ----

bool try_divide_exact(const MultiPoly& num, const MultiPoly& den, MultiPoly& quot) {
  if (den.is_zero()) fail(Errc::invalid_argument, "division by zero polynomial");
  MultiPoly q(num.nvars());
  MultiPoly r = num;
  const auto& ltd = den.terms().begin();
  while (!r.is_zero()) {
    const auto& [er, cr] = *r.terms().begin();
    const auto& [ed, cd] = *den.terms().begin();
    std::vector<int> e(er.size());
    for (size_t i = 0; i < er.size(); i++) {
      e[i] = er[i] - ed[i];
      if (e[i] < 0) return false;
    }
    Scalar c = cr / cd;
    MultiPoly m = MultiPoly::monomial(num.nvars(), e, c);
    q = q + m;
    r = r - m * den;
  }
  quot = q;
  (void)ltd;
  return true;
}

MultiPoly divide_exact(const MultiPoly& num, const MultiPoly& den) {
  MultiPoly q(num.nvars());
  if (!try_divide_exact(num, den, q)) fail(Errc::internal, "non-exact polynomial division");
  return q;
}

// ---- gcd ----

namespace {

int degree_in_var(const MultiPoly& p, int v) {
  int d = 0;
  for (const auto& [e, c] : p.terms()) d = std::max(d, e[v]);
  return d;
}

int top_var(const MultiPoly& p) {
  int v = -1;
  for (const auto& [e, c] : p.terms())
    for (int i = (int)e.size() - 1; i > v; i--)
      if (e[i] > 0) v = std::max(v, i);
  return v;
}

std::vector<MultiPoly> univar(const MultiPoly& p, int v) {
  std::vector<MultiPoly> c(degree_in_var(p, v) + 1, MultiPoly(p.nvars()));
  for (const auto& [e, cf] : p.terms()) {
    auto e2 = e;
    int k = e2[v];
    e2[v] = 0;
    c[k].add_term(e2, cf);
  }
  return c;
}

MultiPoly from_univar(const std::vector<MultiPoly>& c, int v, int nvars) {
  MultiPoly p(nvars);
  for (size_t k = 0; k < c.size(); k++) {
    for (const auto& [e, cf] : c[k].terms()) {
      auto e2 = e;
      e2[v] += (int)k;
      p.add_term(e2, cf);
    }
  }
  return p;
}

void trim_univar(std::vector<MultiPoly>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

MultiPoly gcd_rec(MultiPoly a, MultiPoly b);

MultiPoly content_of(const std::vector<MultiPoly>& c) {
  MultiPoly g = c.empty() ? MultiPoly(0) : MultiPoly(c[0].nvars());
  for (const auto& ci : c) {
    if (ci.is_zero()) continue;
    g = g.is_zero() ? ci : gcd_rec(g, ci);
    if (g.is_constant()) break;
  }
  return g;
}

// classic pseudo-remainder: repeatedly scale by lc(B) and cancel the lead
std::vector<MultiPoly> prem(std::vector<MultiPoly> A, const std::vector<MultiPoly>& B, int nvars) {
  const MultiPoly& lb = B.back();
  int db = (int)B.size() - 1;
  while ((int)A.size() - 1 >= db) {
    MultiPoly la = A.back();
    int sh = (int)A.size() - 1 - db;
    for (auto& ai : A) ai = ai * lb;
    for (int j = 0; j <= db; j++) A[sh + j] = A[sh + j] - la * B[j];
    trim_univar(A);
    if (A.empty()) break;
  }
  (void)nvars;
  return A;
}

MultiPoly gcd_rec(MultiPoly a, MultiPoly b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  int v = std::max(top_var(a), top_var(b));
  if (v < 0) return MultiPoly::constant(a.nvars(), Scalar(1));
  if (degree_in_var(a, v) == 0 || degree_in_var(b, v) == 0) {
    // v-free side forces the gcd into the other side's content in v
    const MultiPoly& flat = degree_in_var(a, v) == 0 ? a : b;
    const MultiPoly& tall = degree_in_var(a, v) == 0 ? b : a;
    return gcd_rec(flat, content_of(univar(tall, v)));
  }
  auto A = univar(a, v);
  auto B = univar(b, v);
  MultiPoly ca = content_of(A);
  MultiPoly cb = content_of(B);
  MultiPoly cg = gcd_rec(ca, cb);
  for (auto& x : A) x = x.is_zero() ? x : divide_exact(x, ca);
  for (auto& x : B) x = x.is_zero() ? x : divide_exact(x, cb);
  if (A.size() < B.size()) std::swap(A, B);
  while (true) {
    auto R = prem(A, B, a.nvars());
    if (R.empty()) break;
    MultiPoly cr = content_of(R);
    for (auto& x : R) x = x.is_zero() ? x : divide_exact(x, cr);
    A = std::move(B);
    B = std::move(R);
  }
  MultiPoly g = from_univar(B, v, a.nvars());
  return cg * g;
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars()) fail(Errc::dimension, "variable count mismatch");
  if (!a.exact() || !b.exact()) fail(Errc::field, "gcd requires exact coefficients");
  if (a.is_zero()) return b.is_zero() ? b : b.normalized();
  if (b.is_zero()) return a.normalized();
  return gcd_rec(a, b).normalized();
}

MultiPoly poly_determinant(std::vector<std::vector<MultiPoly>> m) {
  size_t n = m.size();
  for (auto& row : m)
    if (row.size() != n) fail(Errc::dimension, "determinant needs a square matrix");
  if (n == 0) fail(Errc::dimension, "empty matrix");
  if (n == 1) return m[0][0];
  int nv = m[0][0].nvars();
  MultiPoly det(nv);
  for (size_t j = 0; j < n; j++) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> minor;
    for (size_t i = 1; i < n; i++) {
      std::vector<MultiPoly> row;
      for (size_t k = 0; k < n; k++)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    MultiPoly term = m[0][j] * poly_determinant(std::move(minor));
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

// ---- parser ----

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;
  const std::vector<std::string>& names;

  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) i++;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      i++;
      return true;
    }
    return false;
  }
  [[noreturn]] void err(const std::string& msg) {
    fail(Errc::parse, msg + " at offset " + std::to_string(i) + " in \"" + s + "\"");
  }

  MultiPoly expr() {
    MultiPoly r = term();
    while (true) {
      skip();
      if (eat('+')) r = r + term();
      else if (eat('-')) r = r - term();
      else return r;
    }
  }
  MultiPoly term() {
    MultiPoly r = power();
    while (true) {
      skip();
      if (eat('*')) r = r * power();
      else return r;
    }
  }
  MultiPoly power() {
    MultiPoly b = atom();
    skip();
    if (eat('^')) {
      skip();
      size_t j = i;
      while (i < s.size() && std::isdigit((unsigned char)s[i])) i++;
      if (j == i) err("expected exponent");
      return b.pow(std::stoi(s.substr(j, i - j)));
    }
    return b;
  }
  MultiPoly atom() {
    skip();
    if (i >= s.size()) err("unexpected end of input");
    if (eat('(')) {
      MultiPoly r = expr();
      if (!eat(')')) err("expected ')'");
      return r;
    }
    if (s[i] == '-') {
      i++;
      return -power();
    }
    if (s[i] == '+') {
      i++;
      return power();
    }
    if (std::isdigit((unsigned char)s[i])) return number();
    return name();
  }
  MultiPoly number() {
    size_t j = i;
    bool flt = false;
    while (i < s.size() && (std::isdigit((unsigned char)s[i]) || s[i] == '.')) {
      if (s[i] == '.') flt = true;
      i++;
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E') && i + 1 < s.size() &&
        (std::isdigit((unsigned char)s[i + 1]) || s[i + 1] == '+' || s[i + 1] == '-')) {
      flt = true;
      i += 2;
      while (i < s.size() && std::isdigit((unsigned char)s[i])) i++;
    }
    std::string tok = s.substr(j, i - j);
    if (flt) return MultiPoly::constant((int)names.size(), Scalar(std::stod(tok)));
    skip();
    if (i < s.size() && s[i] == '/') {
      // rational literal p/q (division of general expressions is not supported)
      size_t save = i;
      i++;
      skip();
      size_t k = i;
      while (i < s.size() && std::isdigit((unsigned char)s[i])) i++;
      if (k == i) {
        i = save;
      } else {
        tok += "/" + s.substr(k, i - k);
        return MultiPoly::constant((int)names.size(), Scalar(parse_rational(tok)));
      }
    }
    return MultiPoly::constant((int)names.size(), Scalar(parse_rational(tok)));
  }
  MultiPoly name() {
    size_t j = i;
    while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) i++;
    if (j == i) err("unexpected character");
    std::string tok = s.substr(j, i - j);
    for (size_t k = 0; k < names.size(); k++)
      if (names[k] == tok) return MultiPoly::variable((int)names.size(), (int)k);
    if (tok == "w") return MultiPoly::constant((int)names.size(), Scalar(Cyclotomic::zeta(3)));
    if (tok == "i") return MultiPoly::constant((int)names.size(), Scalar(Cyclotomic::zeta(4)));
    if (tok == "z6") return MultiPoly::constant((int)names.size(), Scalar(Cyclotomic::zeta(6)));
    err("unknown identifier '" + tok + "'");
  }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& names) {
  Parser p{text, 0, names};
  MultiPoly r = p.expr();
  p.skip();
  if (p.i != text.size()) p.err("trailing input");
  return r;
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : t_) {
    std::string cs = c.str();
    bool neg = cs.size() > 1 && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    if (neg) cs = cs.substr(1);
    std::string mono;
    for (int i = 0; i < nvars_; i++) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < (int)names.size() ? names[i] : "v" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) os << cs;
    else if (cs == "1") os << mono;
    else os << cs << "*" << mono;
    first = false;
  }
  return os.str();
}

}  // namespace pkdyn
