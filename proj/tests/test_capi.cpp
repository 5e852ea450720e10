#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "pkdyn.h"

using nlohmann::json;

TEST_CASE("version string") {
  CHECK(pkdyn_version() != nullptr);
  CHECK(std::strlen(pkdyn_version()) > 0);
}

TEST_CASE("run_json round trip") {
  char* resp = nullptr;
  int rc = pkdyn_run_json(
      "{\"op\":\"charpoly\",\"k\":2,\"lengths\":[1,1,8],\"sigma\":[1,2,0]}", &resp);
  REQUIRE(rc == PKDYN_OK);
  REQUIRE(resp != nullptr);
  auto r = json::parse(resp);
  pkdyn_free(resp);
  CHECK(r["ok"] == true);
  CHECK(r["largest_root"].get<double>() == doctest::Approx(1.17628081826).epsilon(1e-9));
  CHECK(r["schema"] == 1);
}

TEST_CASE("run_json error codes and messages") {
  char* resp = nullptr;
  CHECK(pkdyn_run_json("garbage", &resp) == PKDYN_E_PARSE);
  CHECK(resp == nullptr);
  CHECK(std::strlen(pkdyn_last_error()) > 0);

  CHECK(pkdyn_run_json("{\"op\":\"nope\"}", &resp) == PKDYN_E_INVALID_ARGUMENT);
  CHECK(pkdyn_run_json(nullptr, &resp) == PKDYN_E_INVALID_ARGUMENT);

  // a successful call clears the thread's error message
  int rc = pkdyn_run_json("{\"op\":\"cremona\",\"k\":2}", &resp);
  REQUIRE(rc == PKDYN_OK);
  pkdyn_free(resp);
  CHECK(std::strlen(pkdyn_last_error()) == 0);
}

TEST_CASE("map handle lifecycle") {
  pkdyn_map* m = pkdyn_map_create("{\"builtin\":\"cremona\",\"k\":2}");
  REQUIRE(m != nullptr);
  CHECK(pkdyn_map_degree(m) == 2);

  long deg[4] = {0, 0, 0, 0};
  REQUIRE(pkdyn_map_degree_sequence(m, 4, deg) == PKDYN_OK);
  CHECK(deg[0] == 2);
  CHECK(deg[1] == 1);
  CHECK(deg[2] == 2);
  CHECK(deg[3] == 1);

  double delta = -1;
  REQUIRE(pkdyn_map_delta(m, 6, &delta) == PKDYN_OK);
  CHECK(delta == 1.0);
  pkdyn_map_destroy(m);
}

TEST_CASE("map handle error paths") {
  CHECK(pkdyn_map_create("{\"builtin\":\"nothing\"}") == nullptr);
  CHECK(std::strlen(pkdyn_last_error()) > 0);
  CHECK(pkdyn_map_create(nullptr) == nullptr);
  CHECK(pkdyn_map_degree(nullptr) < 0);
  long buf[2];
  CHECK(pkdyn_map_degree_sequence(nullptr, 2, buf) == PKDYN_E_INVALID_ARGUMENT);
  pkdyn_map_destroy(nullptr);  // must be a no-op
}

TEST_CASE("custom component map through the handle API") {
  pkdyn_map* m = pkdyn_map_create(
      "{\"ambient\":[2],\"components\":[[\"x0*x1\",\"x1*x2\",\"x0*x2\"]]}");
  REQUIRE(m != nullptr);
  CHECK(pkdyn_map_degree(m) == 2);
  pkdyn_map_destroy(m);
}
