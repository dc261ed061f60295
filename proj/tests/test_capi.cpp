// Exercises the shared library strictly through its C header.

#include "k3ent/k3ent.h"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

namespace {

struct Report {
  k3e_report* r = nullptr;
  ~Report() { k3e_report_free(r); }
  std::string json() const { return k3e_report_json(r); }
  std::string text() const { return k3e_report_text(r); }
};

struct Options {
  k3e_options* o = k3e_options_new();
  ~Options() { k3e_options_free(o); }
};

} // namespace

TEST_CASE("version strings") {
  CHECK(std::string(k3e_version()) == "1.0.0");
  CHECK(k3e_schema_version() == 1);
}

TEST_CASE("walls through the C API") {
  Options opts;
  Report rep;
  REQUIRE(k3e_k3_walls(opts.o, "132", "4,1,16", &rep.r) == K3E_OK);
  CHECK(k3e_report_positive(rep.r) == 1);
  CHECK(rep.json().find("\"STRICT\"") != std::string::npos);

  Report neg;
  REQUIRE(k3e_k3_walls(nullptr, "4", "1,0,-1", &neg.r) == K3E_OK);
  CHECK(k3e_report_positive(neg.r) == 0);
}

TEST_CASE("invalid input is reported, not thrown") {
  k3e_report* rep = nullptr;
  CHECK(k3e_k3_walls(nullptr, "131", "4,1,16", &rep) == K3E_INVALID_INPUT);
  CHECK(rep == nullptr);
  CHECK(std::string(k3e_last_error()).size() > 0);
  CHECK(k3e_k3_walls(nullptr, "132", "4,1", &rep) == K3E_INVALID_INPUT);
  CHECK(k3e_k3_walls(nullptr, "132", "a,b,c", &rep) == K3E_INVALID_INPUT);
  CHECK(k3e_k3_walls(nullptr, nullptr, "4,1,16", &rep) == K3E_INVALID_INPUT);
  CHECK(k3e_cubic(nullptr, "7", &rep) == K3E_INVALID_INPUT);
  CHECK(k3e_entropy(nullptr, "0", nullptr, &rep) == K3E_INVALID_INPUT);
  CHECK(k3e_verify(nullptr, "{", &rep) == K3E_INVALID_INPUT);
  CHECK(k3e_k3_walls(nullptr, "132", "4,1,16", nullptr) == K3E_INVALID_INPUT);

  Report ok;
  REQUIRE(k3e_cubic(nullptr, "74", &ok.r) == K3E_OK);
  CHECK(std::string(k3e_last_error()).empty());
}

TEST_CASE("options") {
  Options opts;
  CHECK(k3e_options_set(opts.o, "scan_budget", "10") == K3E_OK);
  CHECK(k3e_options_set(opts.o, "sieve_moduli", "3,5,7") == K3E_OK);
  CHECK(k3e_options_set(opts.o, "sieve_moduli", "1") == K3E_INVALID_INPUT);
  CHECK(k3e_options_set(opts.o, "no_such_key", "1") == K3E_INVALID_INPUT);
  CHECK(k3e_options_set(opts.o, "max_t", "0") == K3E_INVALID_INPUT);
  CHECK(k3e_options_set_workers(opts.o, 4) == K3E_OK);
  CHECK(k3e_options_set(nullptr, "max_t", "1") == K3E_INVALID_INPUT);

  // Without modulus 3 in the schedule the cycle search has to decide.
  REQUIRE(k3e_options_set(opts.o, "sieve_moduli", "5,7") == K3E_OK);
  REQUIRE(k3e_options_set(opts.o, "sieve_disc_bound", "0") == K3E_OK);
  Report rep;
  const char* c[6] = {"4", "-33", "66", "0", "0", "1"};
  REQUIRE(k3e_solve_quadratic(opts.o, c, &rep.r) == K3E_OK);
  CHECK(rep.json().find("\"unsolvable\"") != std::string::npos);
  CHECK(rep.json().find("\"reduction-cycle\"") != std::string::npos);
}

TEST_CASE("config files") {
  const char* path = "capi_test.conf";
  {
    std::ofstream out(path);
    out << "# comment\n\nscan_budget = 3\nmax_t=1  # trailing\n";
  }
  Options opts;
  REQUIRE(k3e_options_load_config(opts.o, path) == K3E_OK);
  Report rep;
  REQUIRE(k3e_scan(opts.o, "100", "140", "4", nullptr, nullptr, &rep.r) == K3E_OK);
  CHECK(rep.json().find("\"truncated\": true") != std::string::npos);
  {
    std::ofstream out(path);
    out << "scan_budget\n";
  }
  CHECK(k3e_options_load_config(opts.o, path) == K3E_INVALID_INPUT);
  CHECK(k3e_options_load_config(opts.o, "/nonexistent/k3ent.conf") == K3E_INVALID_INPUT);
  std::remove(path);
}

TEST_CASE("scan callback order is stable across worker counts") {
  auto run = [](unsigned workers) {
    Options opts;
    k3e_options_set_workers(opts.o, workers);
    std::string lines;
    Report rep;
    auto cb = [](const char* json, const char* text, void* user) {
      auto* s = static_cast<std::string*>(user);
      *s += std::string(text) + "|" + json + "\n";
    };
    REQUIRE(k3e_scan(opts.o, "100", "140", "4", cb, &lines, &rep.r) == K3E_OK);
    return lines + rep.json();
  };
  std::string one = run(1);
  CHECK(one.find("(4,1,16)") != std::string::npos);
  CHECK(run(8) == one);
  CHECK(run(3) == one);
}

TEST_CASE("verify round trip") {
  Report rep;
  REQUIRE(k3e_entropy(nullptr, "1", nullptr, &rep.r) == K3E_OK);
  Report ver;
  REQUIRE(k3e_verify(nullptr, k3e_report_json(rep.r), &ver.r) == K3E_OK);
  CHECK(k3e_report_positive(ver.r) == 1);
}

TEST_CASE("concurrent calls keep separate error state") {
  std::vector<std::thread> threads;
  std::vector<int> ok(8, 0);
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([i, &ok] {
      k3e_report* rep = nullptr;
      if (i % 2 == 0) {
        ok[static_cast<std::size_t>(i)] = k3e_cubic(nullptr, "74", &rep) == K3E_OK && std::string(k3e_last_error()).empty();
        k3e_report_free(rep);
      } else {
        ok[static_cast<std::size_t>(i)] = k3e_cubic(nullptr, "9", &rep) == K3E_INVALID_INPUT &&
                                          !std::string(k3e_last_error()).empty();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (int v : ok) CHECK(v == 1);
}
