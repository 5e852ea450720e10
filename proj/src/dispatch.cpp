#include "pkdyn/dispatch.hpp"

#include <cmath>
#include <complex>

#include "json.hpp"
#include "pkdyn/degseq.hpp"
#include "pkdyn/error.hpp"
#include "pkdyn/families.hpp"
#include "pkdyn/lattice.hpp"
#include "pkdyn/monomial.hpp"
#include "pkdyn/realdyn.hpp"

namespace pkdyn {

namespace {

using nlohmann::json;
using Cd = std::complex<double>;

Scalar scalar_arg(const json& v) {
  if (v.is_number_integer()) return Scalar((long)v.get<long>());
  if (v.is_number()) return Scalar(v.get<double>());
  if (v.is_string()) return Scalar(parse_rational(v.get<std::string>()));
  if (v.is_array() && v.size() == 2)
    return Scalar(Cd(v[0].get<double>(), v[1].get<double>()));
  fail(Errc::parse, "expected a number, \"p/q\" string, or [re,im] pair");
}

Cd complex_arg(const json& v) { return scalar_arg(v).to_complex(); }

json scalar_json(const Scalar& s) {
  if (s.exact()) return s.str();
  Cd z = s.to_complex();
  return json::array({z.real(), z.imag()});
}

IntMatrix matrix_arg(const json& v) {
  if (!v.is_array() || v.empty()) fail(Errc::parse, "expected a matrix as an array of rows");
  int r = (int)v.size(), c = (int)v[0].size();
  IntMatrix m(r, c);
  for (int i = 0; i < r; i++) {
    if ((int)v[i].size() != c) fail(Errc::parse, "ragged matrix rows");
    for (int j = 0; j < c; j++) m.at(i, j) = v[i][j].get<long>();
  }
  return m;
}

json matrix_json(const IntMatrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); i++) {
    json row = json::array();
    for (int j = 0; j < m.cols(); j++) row.push_back(m.at(i, j).get_str());
    out.push_back(row);
  }
  return out;
}

json components_json(const HomogeneousMap& f) {
  auto names = f.source.var_names();
  json out = json::array();
  for (const auto& blk : f.blocks) {
    json b = json::array();
    for (const auto& c : blk) b.push_back(c.str(names));
    out.push_back(b);
  }
  return out;
}

json poly_json(const UniPoly& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(rational_str(c));
  return json{{"coeffs", coeffs}, {"str", p.str()}};
}

HomogeneousMap map_from_json(const json& j) {
  if (j.contains("builtin")) {
    std::string name = j["builtin"].get<std::string>();
    if (name == "lyness8" || name == "lyness8a") return lyness8a_map();
    if (name == "lyness8b") return lyness8b_map();
    if (name == "period12") return period12_map();
    if (name == "fa") return fa_map(j.contains("a") ? scalar_arg(j["a"]) : Scalar(Rational(5, 7)));
    if (name == "lf") {
      if (!j.contains("a") || !j.contains("b")) fail(Errc::invalid_argument, "lf needs a and b");
      return lf_map({scalar_arg(j["a"]), scalar_arg(j["b"])});
    }
    if (name == "v7") return lf_map_refined(7, -0.4995, -0.41576).map;
    if (name == "bck")
      return bck_map(bck_params(j.value("n", 2), j.contains("c") ? scalar_arg(j["c"]) : Scalar(1)));
    if (name == "cremona") return cremona(j.value("k", 2));
    fail(Errc::invalid_argument, "unknown builtin map: " + name);
  }
  if (j.contains("components")) {
    std::vector<int> factors = j.value("ambient", std::vector<int>{});
    std::vector<std::vector<std::string>> comps;
    for (const auto& blk : j["components"]) {
      comps.push_back({});
      for (const auto& c : blk) comps.back().push_back(c.get<std::string>());
    }
    if (factors.empty())
      for (const auto& blk : comps) factors.push_back((int)blk.size() - 1);
    return map_from_components(Ambient(factors), comps);
  }
  fail(Errc::parse, "map spec needs \"builtin\" or \"components\"");
}

OrbitData orbit_arg(const json& j) {
  OrbitData d;
  d.k = j.value("k", 2);
  d.lengths = j["lengths"].get<std::vector<int>>();
  d.sigma = j["sigma"].get<std::vector<int>>();
  return d;
}

json op_degseq(const json& q) {
  auto f = map_from_json(q.at("map"));
  int n = q.value("n", 12);
  long budget = q.value("budget", 0L);
  auto seq = degree_sequence(f, n, budget);
  json out{{"n", n}, {"exact", f.exact() || f.mp != nullptr}};
  out["degrees"] = seq.degrees;
  if (seq.product) {
    json md = json::array();
    for (const auto& m : seq.multidegrees) md.push_back(matrix_json(m));
    out["multidegrees"] = md;
  }
  out["delta"] = delta_estimate(seq);
  out["ok"] = true;
  return out;
}

json op_charpoly(const json& q) {
  auto d = orbit_arg(q);
  auto M = orbit_data_pullback(d);
  auto p = char_poly(M);
  json out;
  out["matrix"] = matrix_json(M);
  out["char_poly"] = poly_json(p);
  out["largest_root"] = delta1_from_lattice(M);
  out["ok"] = is_isometry(M, lorentz_form(M.rows()));
  return out;
}

json op_coxeter(const json& q) {
  auto C = coxeter_element(q.at("p").get<int>(), q.at("q").get<int>(), q.at("r").get<int>(),
                           q.value("rot", 0));
  json out;
  out["char_poly"] = poly_json(char_poly(C));
  out["largest_root"] = delta1_from_lattice(C);
  out["rank"] = C.rows();
  out["ok"] = true;
  return out;
}

json op_monomial(const json& q) {
  auto A = matrix_arg(q.at("matrix"));
  double tol = q.value("tol", 1e-9);
  json out;
  out["deltas"] = monomial_degrees(A, tol);  // cross-checked internally
  out["tolerance"] = tol;
  if (det(A) != 0) {
    auto f = monomial_map(A);
    out["map"] = components_json(f);
    out["degree"] = f.degree();
  }
  out["ok"] = true;
  return out;
}

json op_delta(const json& q) {
  std::string route = q.value("route", q.contains("matrix") ? "monomial" : "lattice");
  if (route == "monomial") return op_monomial(q);
  if (route == "coxeter") return op_coxeter(q);
  if (route == "degseq") return op_degseq(q);
  if (route == "lattice") {
    auto out = op_charpoly(q);
    out["delta"] = out["largest_root"];
    return out;
  }
  fail(Errc::invalid_argument, "unknown delta route: " + route);
}

json op_cremona(const json& q) {
  int k = q.value("k", 2);
  json out;
  if (q.contains("d") && q["d"].get<int>() > 1) {
    auto f = cremona_product(k, q["d"].get<int>());
    out["map"] = components_json(f);
    json md = json::array();
    for (const auto& row : f.multidegree()) md.push_back(row);
    out["multidegree"] = md;
    out["ok"] = true;
    return out;
  }
  auto f = cremona(k);
  out["map"] = components_json(f);
  out["pullback"] = matrix_json(cremona_pullback(k));
  bool inv = is_identity(compose_reduce(f, f));
  bool latt = cremona_pullback(k) * cremona_pullback(k) == IntMatrix::identity(k + 2);
  out["involution"] = inv;
  out["pullback_squares_to_identity"] = latt;
  out["ok"] = inv && latt;
  return out;
}

json trace_json(const OrbitTrace& t) {
  json out;
  out["terminal"] = t.terminal == Terminal::Landed          ? "landed"
                    : t.terminal == Terminal::HitIndeterminacy ? "hit_indeterminacy"
                                                               : "regular";
  if (!t.label.empty()) out["label"] = t.label;
  if (t.hit_step >= 0) out["step"] = t.hit_step;
  out["points"] = (int)t.points.size();
  return out;
}

json op_vn(const json& q) {
  std::string action = q.value("action", "check");
  int N = q.at("N").get<int>();
  double tol = q.value("tol", 1e-10);
  json out{{"N", N}, {"tolerance", tol}};
  if (action == "check") {
    auto r = vn_check({scalar_arg(q.at("a")), scalar_arg(q.at("b"))}, N, tol);
    out["ok"] = r.ok;
    out["trace"] = trace_json(r.trace);
    return out;
  }
  if (action == "search") {
    auto p = vn_search(N, complex_arg(q.value("seed_a", json(-0.5))),
                       complex_arg(q.value("seed_b", json(-0.42))), q.value("search_tol", 1e-12),
                       q.value("max_iter", 100));
    out["a"] = scalar_json(p.a);
    out["b"] = scalar_json(p.b);
    out["ok"] = vn_check(p, N, tol).ok;
    return out;
  }
  if (action == "refine") {
    auto p = vn_search(N, complex_arg(q.value("seed_a", json(-0.5))),
                       complex_arg(q.value("seed_b", json(-0.42))), 1e-12, 100);
    auto r = lf_map_refined(N, p.a.to_complex().real(), p.b.to_complex().real());
    out["a"] = r.a.str();
    out["b"] = r.b.str();
    out["ok"] = true;
    return out;
  }
  fail(Errc::invalid_argument, "unknown vn action: " + action);
}

json op_period(const json& q) {
  auto f = map_from_json(q.at("map"));
  int p = q.at("p").get<int>();
  json out{{"p", p}};
  out["ok"] = verify_period(f, p);
  return out;
}

json op_bck(const json& q) {
  int n = q.at("n").get<int>();
  Scalar c = q.contains("c") ? scalar_arg(q["c"]) : Scalar(1);
  double tol = q.value("tol", 1e-8);
  double perturb = q.value("perturb", 0.0);
  auto params = bck_params(n, c);
  if (perturb != 0.0) params.a = Scalar(params.a.to_complex() + perturb);
  json out{{"n", n}, {"a", scalar_json(params.a)}, {"c", scalar_json(params.c)},
           {"tolerance", tol}};
  if (perturb != 0.0) out["perturb"] = perturb;
  auto tr = bck_orbit_landing(params, tol);
  out["orbit"] = trace_json(tr);
  bool ok = tr.terminal == Terminal::Landed && tr.label == "e0" && tr.hit_step == 4 * n;
  int iterates = q.value("iterates", 0);
  if (iterates > 0) {
    if (perturb != 0.0) fail(Errc::invalid_argument, "probe needs unperturbed parameters");
    if (!q.contains("c") || q["c"].is_string() || q["c"].is_number_integer()) {
      Rational cr = q.contains("c") ? parse_rational(q["c"].is_string()
                                                         ? q["c"].get<std::string>()
                                                         : std::to_string(q["c"].get<long>()))
                                    : Rational(1);
      auto pr = bck_hyperbolicity_probe(n, cr, iterates);
      out["probe"] = json{{"d1", pr.d1},
                          {"d2", pr.d2},
                          {"delta1", pr.delta1},
                          {"delta2", pr.delta2}};
      ok = ok && pr.delta1 > 1.05 && pr.delta2 > 1.05 && std::abs(pr.delta1 - pr.delta2) < 0.02;
    } else {
      fail(Errc::invalid_argument, "probe needs a rational c");
    }
  }
  out["ok"] = ok;
  return out;
}

json op_certify(const json& q) {
  std::vector<std::vector<Scalar>> L;
  int k;
  if (q.contains("bdk")) {
    k = q["bdk"].at("k").get<int>();
    L = bdk_candidate(k, q["bdk"].at("n").get<int>(), q.value("tol", 1e-9));
  } else {
    auto rows = q.at("L");
    k = (int)rows.size() - 1;
    for (const auto& row : rows) {
      L.push_back({});
      for (const auto& e : row) L.back().push_back(scalar_arg(e));
    }
  }
  auto res = pseudo_auto_certify(L, k, q.value("max_steps", 4 * k + 40), q.value("tol", 1e-9));
  json out{{"k", k}, {"ok", res.ok}};
  json lj = json::array();
  for (const auto& row : L) {
    json r = json::array();
    for (const auto& e : row) r.push_back(scalar_json(e));
    lj.push_back(r);
  }
  out["L"] = lj;
  if (res.ok) {
    out["lengths"] = res.data.lengths;
    out["sigma"] = res.data.sigma;
    auto M = orbit_data_pullback(res.data);
    out["char_poly"] = poly_json(char_poly(M));
    out["delta"] = delta1_from_lattice(M);
  } else {
    out["failure"] = res.failure;
    out["orbit"] = res.orbit;
    out["step"] = res.step;
  }
  return out;
}

json op_plot_real(const json& q) {
  LfParams p{scalar_arg(q.at("a")), scalar_arg(q.at("b"))};
  int n = q.value("n", 12);
  double tol = q.value("tol", 0.01);
  long maxv = q.value("max_vertices", 2000000L);
  auto segj = q.value("segment", std::vector<double>{0, -1, 0, 1});
  if (segj.size() != 4) fail(Errc::parse, "segment must be [x0,y0,x1,y1]");
  auto lines = iterate_segment(p, make_segment(segj[0], segj[1], segj[2], segj[3]), n, maxv, tol);
  json out{{"n", n}, {"tolerance", tol}};
  json rep = json::array();
  for (const auto& r : length_growth_report(lines))
    rep.push_back(json{{"n", r.n}, {"length", r.length}, {"ratio", r.ratio}});
  out["report"] = rep;
  out["csv"] = polar_csv(lines);
  json fps = json::array();
  for (auto [x, y] : real_fixed_points(p)) fps.push_back(json::array({x, y}));
  out["fixed_points"] = fps;
  bool trunc = false;
  for (const auto& l : lines) trunc = trunc || l.truncated;
  out["truncated"] = trunc;
  out["ok"] = !trunc;
  return out;
}

}  // namespace

HomogeneousMap map_from_spec(const std::string& json_spec) {
  json j = json::parse(json_spec, nullptr, false);
  if (j.is_discarded()) fail(Errc::parse, "invalid JSON map spec");
  return map_from_json(j);
}

std::string run_json(const std::string& request) {
  json q = json::parse(request, nullptr, false);
  if (q.is_discarded()) fail(Errc::parse, "invalid JSON request");
  if (!q.is_object() || !q.contains("op")) fail(Errc::parse, "request needs an \"op\" field");
  std::string op = q["op"].get<std::string>();
  json out;
  try {
    if (op == "degseq") out = op_degseq(q);
    else if (op == "charpoly") out = op_charpoly(q);
    else if (op == "delta") out = op_delta(q);
    else if (op == "cremona") out = op_cremona(q);
    else if (op == "vn") out = op_vn(q);
    else if (op == "period") out = op_period(q);
    else if (op == "bck") out = op_bck(q);
    else if (op == "certify") out = op_certify(q);
    else if (op == "coxeter") out = op_coxeter(q);
    else if (op == "monomial") out = op_monomial(q);
    else if (op == "plot-real" || op == "plot_real") out = op_plot_real(q);
    else fail(Errc::invalid_argument, "unknown op: " + op);
  } catch (const json::exception& e) {
    fail(Errc::parse, std::string("bad request: ") + e.what());
  }
  out["schema"] = 1;
  out["op"] = op;
  return out.dump();
}

}  // namespace pkdyn
