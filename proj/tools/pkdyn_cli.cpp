// command-line front end; all computation goes through the C API
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pkdyn.h"

using nlohmann::json;

namespace {

json scal(const std::string& s) {
  // fractions stay strings (exact); plain numbers go through as doubles
  if (s.find('/') != std::string::npos) return s;
  try {
    size_t pos = 0;
    double d = std::stod(s, &pos);
    if (pos == s.size()) return d;
  } catch (...) {
  }
  return s;
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

double default_tol(double fallback) {
  const char* env = std::getenv("PKDYN_TOL");
  if (!env) return fallback;
  try {
    return std::stod(env);
  } catch (...) {
    return fallback;
  }
}

int execute(const json& req, const std::string& format, const std::string& outpath) {
  char* resp = nullptr;
  int rc = pkdyn_run_json(req.dump().c_str(), &resp);
  if (rc != 0) {
    std::cerr << "error (" << rc << "): " << pkdyn_last_error() << "\n";
    return 1;
  }
  json r = json::parse(resp);
  pkdyn_free(resp);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!outpath.empty()) {
    file.open(outpath);
    if (!file) {
      std::cerr << "error: cannot open " << outpath << "\n";
      return 1;
    }
    os = &file;
  }
  if (format == "csv" && r.contains("csv")) {
    *os << r["csv"].get<std::string>();
  } else if (format == "table") {
    for (auto& [k, v] : r.items())
      if (k != "csv") *os << k << ": " << v.dump() << "\n";
  } else {
    json printable = r;
    if (format != "csv") printable.erase("csv");
    *os << printable.dump(2) << "\n";
  }
  return r.value("ok", true) ? 0 : 2;
}

json map_spec(const std::string& builtin, const std::string& components, const std::string& a,
              const std::string& b, const std::string& c, int k, int nparam) {
  json m;
  if (!components.empty()) {
    json j = json::parse(components);
    m["components"] = j.contains("components") ? j["components"] : j;
    if (j.contains("ambient")) m["ambient"] = j["ambient"];
  } else {
    m["builtin"] = builtin.empty() ? "cremona" : builtin;
  }
  if (!a.empty()) m["a"] = scal(a);
  if (!b.empty()) m["b"] = scal(b);
  if (!c.empty()) m["c"] = scal(c);
  if (k >= 0) m["k"] = k;
  if (nparam >= 0) m["n"] = nparam;
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"birational dynamics on blow-ups of projective space"};
  app.require_subcommand(1);
  std::string format = "json", outpath;
  app.add_option("--format", format, "json | csv | table")->envname("PKDYN_FORMAT");
  app.add_option("--output", outpath, "write the result to a file");

  // shared option storage
  std::string builtin, components, a, b, c, lengths, sigma, L, segment;
  int n = 12, k = -1, nparam = -1, p = 0, N = 7, maxiter = 100, rot = 0;
  int cox_p = 3, cox_q = 2, cox_r = 10, d = 1, bdk_k = 0, bdk_n = 0, iterates = 0, grid = 0;
  long budget = 0, maxv = 2000000;
  double tol = -1, perturb = 0, search_tol = 1e-12;

  auto* sc_degseq = app.add_subcommand("degseq", "degree sequence and delta estimate");
  sc_degseq->add_option("--builtin", builtin);
  sc_degseq->add_option("--components", components, "JSON component list");
  sc_degseq->add_option("--a", a);
  sc_degseq->add_option("--b", b);
  sc_degseq->add_option("--c", c);
  sc_degseq->add_option("--k", k);
  sc_degseq->add_option("--map-n", nparam, "builtin family parameter n");
  sc_degseq->add_option("--n", n, "iterates");
  sc_degseq->add_option("--budget", budget);

  auto* sc_charpoly = app.add_subcommand("charpoly", "orbit data -> pullback matrix -> char poly");
  sc_charpoly->add_option("--k", k)->default_val(2);
  sc_charpoly->add_option("--lengths", lengths)->required();
  sc_charpoly->add_option("--sigma", sigma)->required();

  auto* sc_delta = app.add_subcommand("delta", "dynamical degree via lattice or monomial route");
  std::string monomial;
  sc_delta->add_option("--monomial", monomial, "exponent matrix as JSON rows");
  sc_delta->add_option("--k", k);
  sc_delta->add_option("--lengths", lengths);
  sc_delta->add_option("--sigma", sigma);
  sc_delta->add_option("--tol", tol);

  auto* sc_cremona = app.add_subcommand("cremona", "emit J and its pullback; verify involution");
  sc_cremona->add_option("--k", k)->default_val(2);
  sc_cremona->add_option("--d", d, "number of P^k factors");

  auto* sc_vn = app.add_subcommand("vn", "V_N parameter check / search / refine");
  std::string action = "check";
  sc_vn->add_option("--action", action, "check | search | refine");
  sc_vn->add_option("--N", N)->default_val(7);
  sc_vn->add_option("--a", a);
  sc_vn->add_option("--b", b);
  std::string seed_a = "-0.5", seed_b = "-0.42";
  sc_vn->add_option("--seed-a", seed_a);
  sc_vn->add_option("--seed-b", seed_b);
  sc_vn->add_option("--tol", tol);
  sc_vn->add_option("--search-tol", search_tol);
  sc_vn->add_option("--max-iter", maxiter);
  sc_vn->add_option("--seed-grid", grid, "parallel search over a grid of seeds");

  auto* sc_period = app.add_subcommand("period", "verify f^p = id with no smaller period");
  sc_period->add_option("--builtin", builtin);
  sc_period->add_option("--components", components);
  sc_period->add_option("--a", a);
  sc_period->add_option("--p", p, "period (default: the builtin's expected period)");

  auto* sc_bck = app.add_subcommand("bck", "BCK constraint solve, orbit landing, delta probe");
  sc_bck->add_option("--n", nparam)->default_val(2);
  sc_bck->add_option("--c", c);
  sc_bck->add_option("--tol", tol);
  sc_bck->add_option("--iterates", iterates, "mod-p degree iterates for the delta1/delta2 probe");
  sc_bck->add_option("--perturb", perturb, "fault flag: push a off the constraint surface");

  auto* sc_certify = app.add_subcommand("certify", "pseudo-automorphism orbit certification");
  sc_certify->add_option("--L", L, "matrix rows as JSON");
  sc_certify->add_option("--bdk-k", bdk_k, "search a companion L for P^k");
  sc_certify->add_option("--bdk-n", bdk_n, "orbit length parameter");
  sc_certify->add_option("--max-steps", maxiter)->default_val(48);
  sc_certify->add_option("--tol", tol);

  auto* sc_coxeter = app.add_subcommand("coxeter", "W(p,q,r) Coxeter element spectral data");
  sc_coxeter->add_option("--p", cox_p)->default_val(3);
  sc_coxeter->add_option("--q", cox_q)->default_val(2);
  sc_coxeter->add_option("--r", cox_r)->default_val(10);
  sc_coxeter->add_option("--rot", rot);

  auto* sc_plot = app.add_subcommand("plot-real", "real slice iteration, lengths and polar CSV");
  sc_plot->add_option("--a", a)->required();
  sc_plot->add_option("--b", b)->required();
  sc_plot->add_option("--n", n)->default_val(12);
  sc_plot->add_option("--tol", tol);
  sc_plot->add_option("--max-vertices", maxv);
  sc_plot->add_option("--segment", segment, "x0,y0,x1,y1");

  CLI11_PARSE(app, argc, argv);

  json req;
  if (sc_degseq->parsed()) {
    req = {{"op", "degseq"}, {"map", map_spec(builtin, components, a, b, c, k, nparam)}, {"n", n}};
    if (budget > 0) req["budget"] = budget;
  } else if (sc_charpoly->parsed()) {
    req = {{"op", "charpoly"}, {"k", k}, {"lengths", int_list(lengths)}, {"sigma", int_list(sigma)}};
  } else if (sc_delta->parsed()) {
    if (!monomial.empty()) {
      req = {{"op", "delta"}, {"route", "monomial"}, {"matrix", json::parse(monomial)}};
      if (tol > 0) req["tol"] = tol;
    } else {
      req = {{"op", "delta"}, {"route", "lattice"}, {"k", k < 0 ? 2 : k},
             {"lengths", int_list(lengths)}, {"sigma", int_list(sigma)}};
    }
  } else if (sc_cremona->parsed()) {
    req = {{"op", "cremona"}, {"k", k}};
    if (d > 1) req["d"] = d;
  } else if (sc_vn->parsed()) {
    req = {{"op", "vn"}, {"action", action}, {"N", N}, {"tol", default_tol(tol > 0 ? tol : 1e-10)},
           {"search_tol", search_tol}, {"max_iter", maxiter}};
    if (!a.empty()) req["a"] = scal(a);
    if (!b.empty()) req["b"] = scal(b);
    req["seed_a"] = scal(seed_a);
    req["seed_b"] = scal(seed_b);
    if (action == "search" && grid > 1) {
      // worker pool over the seed grid; distinct parameter pairs collected
      std::vector<std::future<std::string>> futs;
      for (int i = 0; i < grid; i++)
        for (int j = 0; j < grid; j++) {
          json r = req;
          r["seed_a"] = -1.0 + 2.0 * i / (grid - 1);
          r["seed_b"] = -1.0 + 2.0 * j / (grid - 1);
          futs.push_back(std::async(std::launch::async, [r] {
            char* resp = nullptr;
            int rc = pkdyn_run_json(r.dump().c_str(), &resp);
            std::string out = rc == 0 && resp ? resp : "";
            pkdyn_free(resp);
            return out;
          }));
        }
      std::set<std::string> seen;
      json hits = json::array();
      for (auto& f : futs) {
        std::string s = f.get();
        if (s.empty()) continue;
        json r = json::parse(s);
        if (!r.value("ok", false)) continue;
        char buf[64];
        snprintf(buf, sizeof buf, "%.8f|%.8f", r["a"][0].get<double>(), r["b"][0].get<double>());
        if (seen.insert(buf).second) hits.push_back(json{{"a", r["a"]}, {"b", r["b"]}});
      }
      json out{{"op", "vn"}, {"action", "search-grid"}, {"N", N}, {"solutions", hits},
               {"ok", !hits.empty()}};
      std::cout << out.dump(2) << "\n";
      return hits.empty() ? 2 : 0;
    }
  } else if (sc_period->parsed()) {
    if (p == 0) {
      if (builtin.rfind("lyness8", 0) == 0) p = 8;
      else if (builtin == "period12") p = 12;
      else {
        std::cerr << "error: --p is required for this map\n";
        return 1;
      }
    }
    req = {{"op", "period"}, {"map", map_spec(builtin, components, a, b, c, k, nparam)}, {"p", p}};
  } else if (sc_bck->parsed()) {
    req = {{"op", "bck"}, {"n", nparam}, {"tol", default_tol(tol > 0 ? tol : 1e-8)}};
    if (!c.empty()) req["c"] = scal(c);
    if (iterates > 0) req["iterates"] = iterates;
    if (perturb != 0) req["perturb"] = perturb;
  } else if (sc_certify->parsed()) {
    req = {{"op", "certify"}, {"max_steps", maxiter}, {"tol", default_tol(tol > 0 ? tol : 1e-9)}};
    if (bdk_k > 0) req["bdk"] = {{"k", bdk_k}, {"n", bdk_n}};
    else if (!L.empty()) req["L"] = json::parse(L);
    else {
      std::cerr << "error: need --L or --bdk-k/--bdk-n\n";
      return 1;
    }
  } else if (sc_coxeter->parsed()) {
    req = {{"op", "coxeter"}, {"p", cox_p}, {"q", cox_q}, {"r", cox_r}, {"rot", rot}};
  } else if (sc_plot->parsed()) {
    req = {{"op", "plot-real"}, {"a", scal(a)}, {"b", scal(b)}, {"n", n},
           {"tol", default_tol(tol > 0 ? tol : 0.01)}, {"max_vertices", maxv}};
    if (!segment.empty()) {
      auto parts = int_list("0");
      (void)parts;
      std::vector<double> seg;
      std::stringstream ss(segment);
      std::string tok;
      while (std::getline(ss, tok, ',')) seg.push_back(std::stod(tok));
      req["segment"] = seg;
    }
  }
  return execute(req, format, outpath);
}
