#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pkdyn/dispatch.hpp"
#include "pkdyn/error.hpp"

using namespace pkdyn;
using nlohmann::json;

#ifndef GOLDEN_DIR
#define GOLDEN_DIR "tests/golden"
#endif

namespace {

json run(const json& req) { return json::parse(run_json(req.dump())); }

json golden(const std::string& name) {
  std::ifstream in(std::string(GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

// structural comparison: identical keys and shapes, numbers within 1e-9
void check_same(const json& got, const json& want, const std::string& path) {
  INFO("at ", path);
  if (want.is_object()) {
    REQUIRE(got.is_object());
    for (auto& [k, v] : want.items()) {
      REQUIRE_MESSAGE(got.contains(k), "missing key " << k << " at " << path);
      check_same(got[k], v, path + "/" + k);
    }
    for (auto& [k, v] : got.items())
      CHECK_MESSAGE(want.contains(k), "extra key " << k << " at " << path);
  } else if (want.is_array()) {
    REQUIRE(got.is_array());
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < want.size(); i++)
      check_same(got[i], want[i], path + "[" + std::to_string(i) + "]");
  } else if (want.is_number_float() || got.is_number_float()) {
    double w = want.get<double>(), g = got.get<double>();
    CHECK(g == doctest::Approx(w).epsilon(1e-9));
  } else {
    CHECK(got == want);
  }
}

}  // namespace

TEST_CASE("golden: charpoly N=1") {
  check_same(run({{"op", "charpoly"}, {"k", 2}, {"lengths", {1, 1, 2}}, {"sigma", {1, 2, 0}}}),
             golden("charpoly_n1.json"), "");
}

TEST_CASE("golden: cremona k=2") {
  check_same(run({{"op", "cremona"}, {"k", 2}}), golden("cremona_k2.json"), "");
}

TEST_CASE("golden: coxeter W(3,2,10)") {
  check_same(run({{"op", "coxeter"}, {"p", 3}, {"q", 2}, {"r", 10}, {"rot", 0}}),
             golden("coxeter_3_2_10.json"), "");
}

TEST_CASE("golden: period lyness8a") {
  check_same(run({{"op", "period"}, {"map", {{"builtin", "lyness8a"}}}, {"p", 8}}),
             golden("period_lyness8a.json"), "");
}

TEST_CASE("golden: monomial fibonacci") {
  check_same(run({{"op", "delta"}, {"route", "monomial"}, {"matrix", {{1, 1}, {1, 0}}}}),
             golden("monomial_fib.json"), "");
}

TEST_CASE("golden: degseq of the cremona involution") {
  check_same(run({{"op", "degseq"}, {"map", {{"builtin", "cremona"}, {"k", 2}}}, {"n", 6}}),
             golden("degseq_cremona.json"), "");
}

TEST_CASE("golden: exact vn check") {
  check_same(run({{"op", "vn"}, {"action", "check"}, {"a", 1}, {"b", 0}, {"N", 1}}),
             golden("vn_check_exact.json"), "");
}

TEST_CASE("golden: certify failure path") {
  check_same(run({{"op", "certify"}, {"L", {{0, 0, 1}, {1, 0, 0}, {0, 1, 1}}}}),
             golden("certify_int.json"), "");
}

TEST_CASE("vn search and refine") {
  auto r = run({{"op", "vn"}, {"action", "search"}, {"N", 7}, {"seed_a", -0.5}, {"seed_b", -0.42}});
  CHECK(r["ok"] == true);
  CHECK(r["a"][0].get<double>() == doctest::Approx(-0.499497).epsilon(1e-4));
  CHECK(r["b"][0].get<double>() == doctest::Approx(-0.415761).epsilon(1e-4));

  auto rf = run({{"op", "vn"}, {"action", "refine"}, {"N", 7}});
  CHECK(rf["ok"] == true);
  CHECK(rf["a"].get<std::string>().substr(0, 10) == "-0.4994965");
}

TEST_CASE("degseq with the refined v7 builtin") {
  auto r = run({{"op", "degseq"}, {"map", {{"builtin", "v7"}}}, {"n", 12}});
  CHECK(r["exact"] == true);
  std::vector<long> want = {2, 2, 3, 4, 5, 7, 9, 12, 15, 19, 23, 29};
  CHECK(r["degrees"].get<std::vector<long>>() == want);
}

TEST_CASE("bck op: landing, probe, and the perturbation fault flag") {
  auto r = run({{"op", "bck"}, {"n", 2}, {"c", "1"}, {"iterates", 12}});
  CHECK(r["ok"] == true);
  CHECK(r["orbit"]["terminal"] == "landed");
  CHECK(r["orbit"]["step"] == 8);
  CHECK(r["probe"]["delta1"].get<double>() == doctest::Approx(1.4264).epsilon(0.02));

  auto bad = run({{"op", "bck"}, {"n", 2}, {"c", "1"}, {"perturb", 1e-3}});
  CHECK(bad["ok"] == false);
  CHECK(bad["orbit"]["terminal"] != "landed");
}

TEST_CASE("certify via the bdk search") {
  auto r = run({{"op", "certify"}, {"bdk", {{"k", 2}, {"n", 7}}}});
  CHECK(r["ok"] == true);
  CHECK(r["lengths"].get<std::vector<int>>() == std::vector<int>{1, 1, 8});
  CHECK(r["sigma"].get<std::vector<int>>() == std::vector<int>{1, 2, 0});
  CHECK(r["delta"].get<double>() == doctest::Approx(1.17628081826).epsilon(1e-6));
}

TEST_CASE("plot-real returns a report and csv") {
  auto r = run({{"op", "plot-real"}, {"a", -0.499497}, {"b", -0.415761}, {"n", 5}});
  CHECK(r["ok"] == true);
  CHECK(r["report"].size() == 6);
  CHECK(r["csv"].get<std::string>().rfind("iterate,theta,rho,brk", 0) == 0);
  CHECK(r["fixed_points"].size() > 0);
}

TEST_CASE("custom component maps") {
  auto r = run({{"op", "degseq"},
                {"map", {{"components", {{"x1*x2", "x0*x2", "x0*x1"}}}}},
                {"n", 4}});
  std::vector<long> want = {2, 1, 2, 1};
  CHECK(r["degrees"].get<std::vector<long>>() == want);
}

TEST_CASE("error paths carry typed codes") {
  CHECK_THROWS_AS(run_json("not json"), Error);
  try {
    run_json("{\"op\":\"nope\"}");
    FAIL("should have thrown");
  } catch (const Error& e) {
    CHECK(e.code == Errc::invalid_argument);
  }
  try {
    run_json("{\"no_op\":1}");
    FAIL("should have thrown");
  } catch (const Error& e) {
    CHECK(e.code == Errc::parse);
  }
  try {
    run_json("{\"op\":\"charpoly\",\"k\":2}");  // missing lengths/sigma
    FAIL("should have thrown");
  } catch (const Error& e) {
    CHECK(e.code == Errc::parse);
  }
}
