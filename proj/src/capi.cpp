#include "k3ent/k3ent.h"

#include "k3ent/errors.hpp"
#include "report.hpp"

#include <fstream>
#include <sstream>

struct k3e_options {
  k3ent::RunOptions run;
};

struct k3e_report {
  std::string json;
  std::string text;
  bool positive = false;
};

namespace {

thread_local std::string g_last_error;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_i64(const std::string& value, const std::string& key) {
  k3ent::Int v = k3ent::parse_int(trim(value));
  k3ent::require(k3ent::fits_int64(v), key + ": value out of range");
  return k3ent::to_int64(v);
}

void set_option(k3ent::RunOptions& run, const std::string& key, const std::string& value) {
  if (key == "sieve_moduli") {
    run.solve.sieve_moduli.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (trim(item).empty()) continue;
      std::int64_t n = parse_i64(item, key);
      k3ent::require(n >= 2 && n <= 65536, "sieve_moduli: each modulus must lie in [2, 65536]");
      run.solve.sieve_moduli.push_back(n);
    }
  } else if (key == "sieve_disc_bound") {
    std::int64_t n = parse_i64(value, key);
    k3ent::require(n >= 0 && n <= 65536, "sieve_disc_bound must lie in [0, 65536]");
    run.solve.sieve_disc_bound = n;
  } else if (key == "scan_budget") {
    run.scan_budget = parse_i64(value, key);
    k3ent::require(run.scan_budget >= 0, "scan_budget must be non-negative");
  } else if (key == "max_t") {
    run.max_t = parse_i64(value, key);
    k3ent::require(run.max_t >= 1, "max_t must be at least 1");
  } else if (key == "max_rank") {
    run.max_rank = parse_i64(value, key);
    k3ent::require(run.max_rank >= 1, "max_rank must be at least 1");
  } else {
    throw k3ent::InvalidInput("unknown option '" + key + "'");
  }
}

template <typename F>
k3e_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return K3E_OK;
  } catch (const k3ent::InvalidInput& e) {
    g_last_error = e.what();
    return K3E_INVALID_INPUT;
  } catch (const k3ent::InvariantViolation& e) {
    g_last_error = e.what();
    return K3E_INVARIANT_VIOLATION;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return K3E_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return K3E_INTERNAL_ERROR;
  }
}

k3ent::RunOptions run_options(const k3e_options* opts) { return opts ? opts->run : k3ent::RunOptions{}; }

void publish(const k3ent::Report& r, k3e_report** out) {
  k3ent::require(out != nullptr, "output pointer is null");
  auto* rep = new k3e_report{r.json_text(), r.text, r.positive};
  *out = rep;
}

const char* need(const char* s, const char* what) {
  if (!s) throw k3ent::InvalidInput(std::string(what) + " is required");
  return s;
}

} // namespace

extern "C" {

const char* k3e_version(void) { return k3ent::kVersion; }
int k3e_schema_version(void) { return k3ent::kSchemaVersion; }
const char* k3e_last_error(void) { return g_last_error.c_str(); }

k3e_options* k3e_options_new(void) { return new k3e_options{}; }
void k3e_options_free(k3e_options* opts) { delete opts; }

k3e_status k3e_options_load_config(k3e_options* opts, const char* path) {
  return guarded([&] {
    k3ent::require(opts != nullptr, "options handle is null");
    std::ifstream in(need(path, "config path"));
    k3ent::require(in.good(), std::string("cannot read config file ") + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      k3ent::require(eq != std::string::npos, "config line " + std::to_string(lineno) + ": expected key=value");
      set_option(opts->run, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  });
}

k3e_status k3e_options_set(k3e_options* opts, const char* key, const char* value) {
  return guarded([&] {
    k3ent::require(opts != nullptr, "options handle is null");
    set_option(opts->run, need(key, "option key"), need(value, "option value"));
  });
}

k3e_status k3e_options_set_workers(k3e_options* opts, unsigned workers) {
  return guarded([&] {
    k3ent::require(opts != nullptr, "options handle is null");
    opts->run.workers = workers;
  });
}

k3e_status k3e_k3_walls(const k3e_options* opts, const char* h2, const char* v, k3e_report** out) {
  return guarded([&] {
    k3ent::Int h = k3ent::parse_int(need(h2, "h2"));
    k3ent::require(h > 0 && h % 2 == 0, "h^2 must be a positive even integer");
    publish(k3ent::walls_report(h, k3ent::parse_mukai(need(v, "v"), h / 2), run_options(opts)), out);
  });
}

k3e_status k3e_entropy(const k3e_options*, const char* d, const char* v, k3e_report** out) {
  return guarded([&] {
    k3ent::Int dd = k3ent::parse_int(need(d, "d"));
    k3ent::require(dd >= 1, "d must be positive");
    std::optional<k3ent::MukaiVector> mv;
    if (v) mv = k3ent::parse_mukai(v, dd);
    publish(k3ent::entropy_command(dd, mv), out);
  });
}

k3e_status k3e_cubic(const k3e_options* opts, const char* d, k3e_report** out) {
  return guarded([&] { publish(k3ent::cubic_report(k3ent::parse_int(need(d, "d")), run_options(opts)), out); });
}

k3e_status k3e_cubic_scan(const k3e_options* opts, const char* max_d, k3e_report** out) {
  return guarded(
      [&] { publish(k3ent::cubic_scan_report(k3ent::parse_int(need(max_d, "max_d")), run_options(opts)), out); });
}

k3e_status k3e_solve_quadratic(const k3e_options* opts, const char* const coefficients[6], k3e_report** out) {
  return guarded([&] {
    k3ent::require(coefficients != nullptr, "coefficients are required");
    k3ent::Int c[6];
    for (int i = 0; i < 6; ++i) c[i] = k3ent::parse_int(need(coefficients[i], "coefficient"));
    publish(k3ent::solve_report({c[0], c[1], c[2], c[3], c[4], c[5]}, run_options(opts)), out);
  });
}

k3e_status k3e_scan(const k3e_options* opts, const char* h2_lo, const char* h2_hi, const char* targets,
                    k3e_finding_callback callback, void* user, k3e_report** out) {
  return guarded([&] {
    k3ent::ScanJob job{k3ent::parse_int(need(h2_lo, "h2_lo")), k3ent::parse_int(need(h2_hi, "h2_hi")), {}};
    std::stringstream ss(need(targets, "targets"));
    std::string item;
    while (std::getline(ss, item, ','))
      if (!trim(item).empty()) job.v2_targets.push_back(k3ent::parse_int(trim(item)));
    k3ent::FindingSink sink;
    if (callback)
      sink = [&](const k3ent::json& finding, const std::string& line) {
        callback(finding.dump().c_str(), line.c_str(), user);
      };
    publish(k3ent::scan_report(job, run_options(opts), sink), out);
  });
}

k3e_status k3e_verify(const k3e_options* opts, const char* report_json, k3e_report** out) {
  return guarded([&] { publish(k3ent::verify_report(need(report_json, "report"), run_options(opts)), out); });
}

const char* k3e_report_json(const k3e_report* report) { return report ? report->json.c_str() : ""; }
const char* k3e_report_text(const k3e_report* report) { return report ? report->text.c_str() : ""; }
int k3e_report_positive(const k3e_report* report) { return report && report->positive ? 1 : 0; }
void k3e_report_free(k3e_report* report) { delete report; }

} // extern "C"
