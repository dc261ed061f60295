#pragma once

// Report assembly shared by the C API: JSON (sorted keys) and text views of
// every command, the scanner, and certificate replay.

#include "k3ent/cubic.hpp"
#include "k3ent/diophantine.hpp"
#include "k3ent/entropy.hpp"
#include "k3ent/walls.hpp"

#include <json.hpp>

#include <functional>
#include <string>

namespace k3ent {

using json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

struct RunOptions {
  SolveOptions solve;
  std::int64_t scan_budget = 1000000;
  unsigned workers = 0; // 0: hardware concurrency
  std::int64_t max_t = 1;
  std::int64_t max_rank = 64; // rank bound when r s = 0
};

struct Report {
  std::string command;
  json inputs = json::object();
  json verdict = json::object();
  json certificates = json::array();
  json refs = json::array();
  bool positive = true;
  std::string text;

  json to_json() const;
  std::string json_text() const; // pretty, trailing newline
};

json int_json(const Int& v);
Int json_int(const json& j);

json to_json(const QuadraticDiophantine& eq);
json to_json(const SolvabilityCertificate& cert);
json to_json(const IsotropyCertificate& iso);
json to_json(const IntMatrix& m);
json to_json(const Interval& x);
json to_json(const MukaiVector& v);

MukaiVector parse_mukai(const std::string& csv, const Int& d);

Report walls_report(const Int& h2, const MukaiVector& v, const RunOptions& opts);
Report entropy_command(const Int& d, const std::optional<MukaiVector>& v);
Report cubic_report(const Int& d, const RunOptions& opts);
Report cubic_scan_report(const Int& max_d, const RunOptions& opts);
Report solve_report(const QuadraticDiophantine& eq, const RunOptions& opts);

struct ScanJob {
  Int h2_lo;
  Int h2_hi;
  std::vector<Int> v2_targets;
};

/// Findings are passed to `emit` in (h2, t, r) order as soon as every
/// earlier job has finished.
using FindingSink = std::function<void(const json& finding, const std::string& line)>;
Report scan_report(const ScanJob& job, const RunOptions& opts, const FindingSink& emit = {});

/// Replays every certificate in a report and recomputes its verdict.
Report verify_report(const std::string& report_json, const RunOptions& opts);

} // namespace k3ent
