#include "pkdyn.h"

#include <cstring>
#include <string>

#include "pkdyn/degseq.hpp"
#include "pkdyn/dispatch.hpp"
#include "pkdyn/error.hpp"

namespace {

thread_local std::string g_last_error;

int code_of(const pkdyn::Error& e) { return (int)e.code; }

template <typename F>
int guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PKDYN_OK;
  } catch (const pkdyn::Error& e) {
    g_last_error = e.what();
    return code_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PKDYN_E_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = (char*)malloc(s.size() + 1);
  if (out) memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct pkdyn_map {
  pkdyn::HomogeneousMap f;
};

extern "C" {

const char* pkdyn_version(void) { return "1.0.0"; }

int pkdyn_run_json(const char* request, char** response) {
  if (!request || !response) {
    g_last_error = "null argument";
    return PKDYN_E_INVALID_ARGUMENT;
  }
  *response = nullptr;
  return guarded([&] {
    std::string out = pkdyn::run_json(request);
    *response = dup_string(out);
    if (!*response) pkdyn::fail(pkdyn::Errc::internal, "out of memory");
  });
}

void pkdyn_free(char* s) { free(s); }

const char* pkdyn_last_error(void) { return g_last_error.c_str(); }

pkdyn_map* pkdyn_map_create(const char* spec) {
  if (!spec) {
    g_last_error = "null argument";
    return nullptr;
  }
  pkdyn_map* m = nullptr;
  int rc = guarded([&] { m = new pkdyn_map{pkdyn::map_from_spec(spec)}; });
  return rc == PKDYN_OK ? m : nullptr;
}

void pkdyn_map_destroy(pkdyn_map* m) { delete m; }

int pkdyn_map_degree(const pkdyn_map* m) {
  if (!m) {
    g_last_error = "null handle";
    return -PKDYN_E_INVALID_ARGUMENT;
  }
  int deg = 0;
  int rc = guarded([&] { deg = m->f.degree(); });
  return rc == PKDYN_OK ? deg : -rc;
}

int pkdyn_map_degree_sequence(const pkdyn_map* m, int n, long* out) {
  if (!m || !out) {
    g_last_error = "null argument";
    return PKDYN_E_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto seq = pkdyn::degree_sequence(m->f, n);
    for (int i = 0; i < n; i++) out[i] = seq.degrees[i];
  });
}

int pkdyn_map_delta(const pkdyn_map* m, int n, double* out) {
  if (!m || !out) {
    g_last_error = "null argument";
    return PKDYN_E_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = pkdyn::delta_estimate(pkdyn::degree_sequence(m->f, n)); });
}

}  // extern "C"
