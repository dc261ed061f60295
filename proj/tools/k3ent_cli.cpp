// k3ent command-line front end. Talks to the library only through k3ent.h.

#include "k3ent/k3ent.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;

struct Global {
  bool json = false;
  std::string config;
  int workers = -1;
};

int status_exit(k3e_status st) {
  std::cerr << "error: " << k3e_last_error() << "\n";
  return st == K3E_INVALID_INPUT ? kExitUsage : kExitInvariant;
}

int finish(k3e_status st, k3e_report* rep, const Global& g, bool verdict_exit, bool print = true) {
  if (st != K3E_OK) return status_exit(st);
  if (print) std::cout << (g.json ? k3e_report_json(rep) : k3e_report_text(rep));
  int code = (!verdict_exit || k3e_report_positive(rep)) ? kExitPositive : kExitNegative;
  k3e_report_free(rep);
  return code;
}

unsigned resolve_workers(int flag) {
  if (flag >= 0) return static_cast<unsigned>(flag);
  if (const char* env = std::getenv("K3ENT_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 0) return static_cast<unsigned>(v);
  }
  return 0;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i];
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice, wall and entropy computations for Picard rank one K3 surfaces"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  Global g;
  bool version = false;
  app.add_flag("--version", version, "Print library and schema versions");
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--config", g.config, "key=value configuration file");
  app.add_option("--workers", g.workers, "Worker threads for scan (overrides K3ENT_WORKERS)")->check(CLI::NonNegativeNumber);

  std::string h2, v;
  auto* walls = app.add_subcommand("k3-walls", "All-fake wall criterion for (h^2, v)");
  walls->add_option("--h2", h2, "Even degree h^2")->required();
  walls->add_option("--v", v, "Mukai vector r,t,s")->required();

  std::string ed, ev;
  auto* entropy = app.add_subcommand("entropy", "Spectral radius of the composed spherical twists");
  entropy->add_option("--d", ed, "h^2 / 2")->required();
  entropy->add_option("--v", ev, "Mukai vector r,t,s for dimension context");

  std::string cd, max_d;
  bool cscan = false;
  auto* cubic = app.add_subcommand("cubic", "Discriminant conditions and Fano variety verdict");
  auto* cd_opt = cubic->add_option("--d", cd, "Discriminant d");
  auto* scan_flag = cubic->add_flag("--scan", cscan, "Tabulate conditions for all admissible d");
  auto* maxd_opt = cubic->add_option("--max-d", max_d, "Upper bound for --scan");
  scan_flag->excludes(cd_opt);
  maxd_opt->needs(scan_flag);

  std::vector<std::string> coeffs;
  auto* sq = app.add_subcommand("solve-quadratic", "Decide A x^2 + B xy + C y^2 + D x + E y + F = 0");
  sq->add_option("coefficients", coeffs, "A B C D E F")->expected(6)->required();

  std::string lo, hi, budget, max_t;
  std::vector<std::string> targets;
  auto* scan = app.add_subcommand("scan", "Search (h^2, v = (r,t,s)) satisfying the all-fake criterion");
  scan->add_option("--h2-min", lo, "Smallest even h^2")->required();
  scan->add_option("--h2-max", hi, "Largest even h^2")->required();
  scan->add_option("--targets", targets, "Even v^2 values")->delimiter(',')->required();
  scan->add_option("--budget", budget, "Cap on evaluated vectors");
  scan->add_option("--max-t", max_t, "Scan middle coefficients 1..t (default 1)");

  std::string report_path;
  auto* verify = app.add_subcommand("verify", "Replay the certificates of a JSON report");
  verify->add_option("report", report_path, "Report file, or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (version) {
    std::cout << "k3ent " << k3e_version() << " (report schema " << k3e_schema_version() << ")\n";
    return kExitPositive;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kExitUsage;
  }

  k3e_options* opts = k3e_options_new();
  struct Guard {
    k3e_options* o;
    ~Guard() { k3e_options_free(o); }
  } guard{opts};
  if (!g.config.empty()) {
    if (auto st = k3e_options_load_config(opts, g.config.c_str()); st != K3E_OK) return status_exit(st);
  }
  k3e_options_set_workers(opts, resolve_workers(g.workers));

  k3e_report* rep = nullptr;
  k3e_status st = K3E_OK;
  // Each call must complete before `rep` is read, so the status is captured first.
  if (*walls) {
    st = k3e_k3_walls(opts, h2.c_str(), v.c_str(), &rep);
    return finish(st, rep, g, true);
  }
  if (*entropy) {
    st = k3e_entropy(opts, ed.c_str(), ev.empty() ? nullptr : ev.c_str(), &rep);
    return finish(st, rep, g, false);
  }
  if (*cubic) {
    if (cscan) {
      if (max_d.empty()) {
        std::cerr << "error: cubic --scan requires --max-d\n";
        return kExitUsage;
      }
      st = k3e_cubic_scan(opts, max_d.c_str(), &rep);
      return finish(st, rep, g, false);
    }
    if (cd.empty()) {
      std::cerr << "error: cubic requires --d or --scan --max-d\n";
      return kExitUsage;
    }
    st = k3e_cubic(opts, cd.c_str(), &rep);
    return finish(st, rep, g, true);
  }
  if (*sq) {
    const char* c[6];
    for (int i = 0; i < 6; ++i) c[i] = coeffs[static_cast<std::size_t>(i)].c_str();
    st = k3e_solve_quadratic(opts, c, &rep);
    return finish(st, rep, g, false);
  }
  if (*scan) {
    if (!budget.empty())
      if (auto st = k3e_options_set(opts, "scan_budget", budget.c_str()); st != K3E_OK) return status_exit(st);
    if (!max_t.empty())
      if (auto st = k3e_options_set(opts, "max_t", max_t.c_str()); st != K3E_OK) return status_exit(st);
    std::size_t emitted = 0;
    struct Ctx {
      bool json;
      std::size_t* emitted;
    } ctx{g.json, &emitted};
    auto cb = [](const char*, const char* text, void* user) {
      auto* c = static_cast<Ctx*>(user);
      if (!c->json) std::cout << text << "\n" << std::flush;
      ++*c->emitted;
    };
    st = k3e_scan(opts, lo.c_str(), hi.c_str(), join(targets).c_str(), cb, &ctx, &rep);
    if (st != K3E_OK) return status_exit(st);
    if (g.json) {
      std::cout << k3e_report_json(rep);
    } else {
      // Findings were already streamed; print the remaining summary lines.
      std::istringstream in(k3e_report_text(rep));
      std::string line;
      for (std::size_t i = 0; std::getline(in, line); ++i)
        if (i >= emitted) std::cout << line << "\n";
    }
    return finish(st, rep, g, false, false);
  }
  if (*verify) {
    std::string text;
    if (report_path == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
      std::ifstream in(report_path);
      if (!in) {
        std::cerr << "error: cannot read " << report_path << "\n";
        return kExitUsage;
      }
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    st = k3e_verify(opts, text.c_str(), &rep);
    if (st != K3E_OK) return status_exit(st);
    std::cout << (g.json ? k3e_report_json(rep) : k3e_report_text(rep));
    int code = k3e_report_positive(rep) ? kExitPositive : kExitInvariant;
    k3e_report_free(rep);
    return code;
  }
  return kExitUsage;
}
