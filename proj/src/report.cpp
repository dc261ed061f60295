#include "report.hpp"

#include "k3ent/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace k3ent {

namespace {

json point_json(const Point& p) { return json::array({int_json(p.first), int_json(p.second)}); }

json vector_json(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(int_json(x));
  return out;
}

json options_json(const RunOptions& opts) {
  json moduli = json::array();
  for (auto n : opts.solve.sieve_moduli) moduli.push_back(n);
  return {{"sieve_moduli", moduli}, {"sieve_disc_bound", opts.solve.sieve_disc_bound}};
}

RunOptions options_from(const json& inputs) {
  RunOptions opts;
  if (!inputs.contains("options")) return opts;
  const json& o = inputs.at("options");
  if (o.contains("sieve_moduli"))
    for (const auto& n : o.at("sieve_moduli")) opts.solve.sieve_moduli.push_back(n.get<std::int64_t>());
  if (o.contains("sieve_disc_bound")) opts.solve.sieve_disc_bound = o.at("sieve_disc_bound").get<std::int64_t>();
  if (o.contains("scan_budget")) opts.scan_budget = o.at("scan_budget").get<std::int64_t>();
  if (o.contains("max_t")) opts.max_t = o.at("max_t").get<std::int64_t>();
  if (o.contains("max_rank")) opts.max_rank = o.at("max_rank").get<std::int64_t>();
  return opts;
}

json certificate(const std::string& type, const std::string& subject, json data) {
  return {{"type", type}, {"subject", subject}, {"data", std::move(data)}};
}

std::string pair_label(const Int& m, const Int& k) {
  std::ostringstream os;
  os << "(m, k) = (" << m << ", " << k << ")";
  return os.str();
}

std::string summarize(const SolvabilityCertificate& c) {
  std::ostringstream os;
  os << format_equation(c.equation) << ": " << to_string(c.status) << " [" << c.method << "]";
  if (c.witness) os << " witness (" << c.witness->first << ", " << c.witness->second << ")";
  if (c.obstruction) os << " no solution modulo " << c.obstruction->modulus;
  if (c.cycle)
    os << " cycle of " << c.cycle->cycle_length << " reduced forms, " << c.cycle->orbits_found
       << " orbit(s), congruence period " << c.cycle->congruence_period;
  return os.str();
}

std::string poly_text(const IntVector& p) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    Int c = p[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Int mag = abs(c);
    if (mag != 1 || i == 0) os << mag;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

json wall_class_json(const WallClass& w) {
  json out{{"kind", to_string(w.kind)}, {"reason", w.reason}};
  out["a"] = w.a ? to_json(*w.a) : json(nullptr);
  out["b"] = w.b ? to_json(*w.b) : json(nullptr);
  return out;
}

json radius_json(const SpectralRadius& r) {
  return {{"charpoly", vector_json(r.charpoly)},
          {"integer_roots", vector_json(r.integer_roots)},
          {"residual_factor", vector_json(r.residual)},
          {"method", r.method},
          {"interval", to_json(r.radius)}};
}

json isometry_json(const IntegerIsometry& m) {
  return {{"matrix", to_json(m.matrix())}, {"gram", to_json(m.gram())}, {"det", int_json(m.det())}};
}

} // namespace

json int_json(const Int& v) {
  if (fits_int64(v)) return json(to_int64(v));
  return json(to_string(v));
}

Int json_int(const json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_string()) return parse_int(j.get<std::string>());
  throw InvalidInput("expected an integer in report");
}

json Report::to_json() const {
  return {{"command", command}, {"inputs", inputs},   {"verdict", verdict},
          {"certificates", certificates}, {"refs", refs}, {"version", kVersion},
          {"schema_version", kSchemaVersion}};
}

std::string Report::json_text() const { return to_json().dump(2) + "\n"; }

json to_json(const QuadraticDiophantine& eq) {
  return json::array({int_json(eq.a), int_json(eq.b), int_json(eq.c), int_json(eq.d), int_json(eq.e), int_json(eq.f)});
}

json to_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i)));
  return out;
}

json to_json(const Interval& x) { return {{"lower", x.lower_string()}, {"upper", x.upper_string()}}; }

json to_json(const MukaiVector& v) { return vector_json(v.coords()); }

json to_json(const SolvabilityCertificate& c) {
  json out{{"equation", to_json(c.equation)},
           {"equation_text", format_equation(c.equation)},
           {"status", to_string(c.status)},
           {"conic", to_string(c.kind)},
           {"method", c.method},
           {"content", int_json(c.content)},
           {"infinite", c.infinite},
           {"detail", c.detail}};
  out["witness"] = c.witness ? point_json(*c.witness) : json(nullptr);
  if (c.obstruction) {
    json att = json::array();
    for (auto a : c.obstruction->attained) att.push_back(a);
    out["obstruction"] = {{"modulus", int_json(c.obstruction->modulus)},
                          {"required", int_json(c.obstruction->required)},
                          {"attained", att}};
  } else {
    out["obstruction"] = nullptr;
  }
  if (c.cycle) {
    const auto& e = *c.cycle;
    out["cycle"] = {{"form", json::array({int_json(e.form.a), int_json(e.form.b), int_json(e.form.c)})},
                    {"target", int_json(e.target)},
                    {"cycle_length", e.cycle_length},
                    {"roots_checked", e.roots_checked},
                    {"orbits_found", e.orbits_found},
                    {"congruence_period", e.congruence_period},
                    {"congruence_modulus", int_json(e.congruence_modulus)}};
    out["cycle_length"] = e.cycle_length;
  } else {
    out["cycle"] = nullptr;
    out["cycle_length"] = nullptr;
  }
  json fams = json::array();
  for (const auto& f : c.fundamental_solutions) {
    json fj{{"base", point_json(f.base)}, {"note", f.note}};
    if (f.step) {
      const Mat2& m = f.step->matrix;
      fj["step"] = {{"matrix", json::array({json::array({int_json(m.a), int_json(m.b)}),
                                            json::array({int_json(m.c), int_json(m.d)})})},
                    {"offset", json::array({int_json(f.step->offset_x), int_json(f.step->offset_y)})}};
    } else {
      fj["step"] = nullptr;
    }
    fams.push_back(std::move(fj));
  }
  out["fundamental_solutions"] = std::move(fams);
  return out;
}

json to_json(const IsotropyCertificate& iso) {
  json out{{"isotropic", iso.isotropic}, {"minus_det", int_json(iso.minus_det)}};
  out["witness"] = iso.witness ? point_json(*iso.witness) : json(nullptr);
  return out;
}

MukaiVector parse_mukai(const std::string& csv, const Int& d) {
  std::vector<Int> parts;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(parse_int(item));
  require(parts.size() == 3, "Mukai vector must be given as r,t,s");
  return MukaiVector(parts[0], parts[1], parts[2], d);
}

// --- k3-walls ---------------------------------------------------------------

Report walls_report(const Int& h2, const MukaiVector& v, const RunOptions& opts) {
  require(h2 > 0 && h2 % 2 == 0, "h^2 must be a positive even integer");
  const Int d = h2 / 2;
  WallVerdict wv = all_walls_fake(d, v, opts.solve);

  Report r;
  r.command = "k3-walls";
  r.inputs = {{"h2", int_json(h2)}, {"v", to_json(v)}, {"options", options_json(opts)}};
  r.refs = json::array({"nef-cone bounds -2 <= a^2 < v^2/4, 0 <= <v,a> <= v^2/2",
                        "wall classification: divisorial > flopping > fake",
                        "all walls fake => automorphism of positive entropy", "dim M = v^2 + 2"});
  r.positive = wv.positive();

  json cands = json::array();
  for (const auto& w : wv.walls) {
    json cj{{"m", int_json(w.m)},
            {"k", int_json(w.k)},
            {"witness", to_json(w.witness)},
            {"span_det", int_json(w.span_det)},
            {"anomaly", !w.wall.has_value()}};
    cj["direct_kind"] = w.direct ? json(to_string(*w.direct)) : json(nullptr);
    cj["classification"] = w.wall ? wall_class_json(*w.wall) : json(nullptr);
    cands.push_back(std::move(cj));
  }
  std::string statement;
  if (wv.strength == WallStrength::Strict)
    statement = "no class a meets the bounds; every wall is fake and M_sigma(v) carries an automorphism of positive topological entropy";
  else if (wv.strength == WallStrength::Classified)
    statement = "every candidate wall classifies as fake; M_sigma(v) carries an automorphism of positive topological entropy";
  else
    statement = "non-fake walls (or anomalous spans) exist; the all-fake criterion does not apply";
  r.verdict = {{"strength", to_string(wv.strength)},
               {"positive", wv.positive()},
               {"dim", int_json(wv.dim)},
               {"v2", int_json(wv.v2)},
               {"v_perp_basis", to_json(wv.enumeration.v_perp.basis)},
               {"v_perp_gram", to_json(wv.enumeration.v_perp.gram)},
               {"walls", cands},
               {"statement", statement},
               {"caveat", "totally semistable walls are not examined"}};

  for (const auto& p : wv.enumeration.pairs) {
    json data{{"m", int_json(p.m)}, {"k", int_json(p.k)}, {"gcd_excluded", p.gcd_excluded},
              {"functional_gcd", int_json(p.functional_gcd)}};
    data["certificate"] = p.certificate ? to_json(*p.certificate) : json(nullptr);
    if (p.m == 0 && p.k == 0) data["lattice"] = to_json(wv.enumeration.v_perp.gram);
    r.certificates.push_back(certificate("wall-pair", pair_label(p.m, p.k), std::move(data)));
  }
  for (const auto& w : wv.walls) {
    r.certificates.push_back(certificate(
        "wall-witness", pair_label(w.m, w.k),
        {{"d", int_json(d)}, {"v", to_json(v)}, {"a", to_json(w.witness)}, {"m", int_json(w.m)}, {"k", int_json(w.k)}}));
  }

  std::ostringstream os;
  os << "k3-walls  h^2 = " << h2 << ", v = " << v << ", v^2 = " << wv.v2 << "\n";
  os << "verdict: " << to_string(wv.strength) << ", dim M = " << wv.dim << "\n  " << statement << "\n";
  os << "v^perp Gram " << wv.enumeration.v_perp.gram << "\n";
  os << "pairs (m, k):\n";
  for (const auto& p : wv.enumeration.pairs) {
    os << "  (" << p.m << ", " << p.k << ") ";
    if (p.gcd_excluded)
      os << "excluded: gcd " << p.functional_gcd << " of <v, .> does not divide k\n";
    else
      os << summarize(*p.certificate) << "\n";
  }
  if (!wv.walls.empty()) {
    os << "candidate walls:\n";
    for (const auto& w : wv.walls) {
      os << "  (" << w.m << ", " << w.k << ") a = " << w.witness;
      if (w.direct) os << " meets " << to_string(*w.direct) << " directly;";
      if (w.wall)
        os << " H classifies as " << to_string(w.wall->kind) << " (" << w.wall->reason << ")\n";
      else
        os << " anomaly: span is not hyperbolic (det " << w.span_det << ")\n";
    }
  }
  os << "note: totally semistable walls are not examined\n";
  r.text = os.str();
  return r;
}

// --- entropy ----------------------------------------------------------------

Report entropy_command(const Int& d, const std::optional<MukaiVector>& v) {
  EntropyReport e = entropy_report(d, v);
  Report r;
  r.command = "entropy";
  r.inputs = {{"d", int_json(d)}};
  r.inputs["v"] = v ? to_json(*v) : json(nullptr);
  r.refs = json::array({"spherical class (d+1, d, d^2-d+1)", "twist = reflection x + <x,w>w",
                        "h_cat >= log rho", "h_top = (dim/2) log rho"});
  r.positive = true;
  r.verdict = {{"d", int_json(d)},
               {"phi1", to_json(e.phi1.matrix())},
               {"phi2", to_json(e.phi2.matrix())},
               {"matrix", to_json(e.phi.matrix())},
               {"charpoly", vector_json(e.rho.charpoly)},
               {"integer_roots", vector_json(e.rho.integer_roots)},
               {"quadratic_factor", vector_json(e.rho.residual)},
               {"spectral_radius", to_json(e.rho.radius)},
               {"log_rho", to_json(e.log_rho)},
               {"h_cat_lower", to_json(e.h_cat_lower)},
               {"positive_entropy", e.rho.radius.lo > 1}};
  r.verdict["dimM"] = e.dim ? int_json(*e.dim) : json(nullptr);
  r.verdict["h_top"] = e.h_top ? json{{"interval", to_json(*e.h_top)},
                                      {"label", "upper-bound context: (dim M / 2) * h_cat lower bound"}}
                               : json(nullptr);
  if (e.fixes_v) {
    r.verdict["fixed_vector_context"] = {{"phi_v_equals_v", *e.fixes_v},
                                         {"pairing_with_w0", int_json(*e.pairing_w0)},
                                         {"pairing_with_w", int_json(*e.pairing_w)}};
  } else {
    r.verdict["fixed_vector_context"] = nullptr;
  }
  r.certificates.push_back(certificate("isometry", "phi1", isometry_json(e.phi1)));
  r.certificates.push_back(certificate("isometry", "phi2", isometry_json(e.phi2)));
  r.certificates.push_back(certificate("isometry", "phi", isometry_json(e.phi)));
  r.certificates.push_back(certificate("spectral-radius", "phi", radius_json(e.rho)));

  std::ostringstream os;
  os << "entropy  d = " << d << " (h^2 = " << 2 * d << ")\n";
  os << "phi1 = " << e.phi1.matrix() << "\nphi2 = " << e.phi2.matrix() << "\nphi = phi1 phi2 = " << e.phi.matrix() << "\n";
  os << "charpoly " << poly_text(e.rho.charpoly) << ", quadratic factor " << poly_text(e.rho.residual) << "\n";
  os << "spectral radius in [" << e.rho.radius.lower_string(15) << ", " << e.rho.radius.upper_string(15) << "]\n";
  os << "log rho in [" << e.log_rho.lower_string(12) << ", " << e.log_rho.upper_string(12) << "] (lower bound for h_cat)\n";
  if (e.dim) {
    os << "dim M = " << *e.dim << ", (dim M / 2) log rho in [" << e.h_top->lower_string(12) << ", "
       << e.h_top->upper_string(12) << "] (context only)\n";
    os << "phi(v) " << (*e.fixes_v ? "=" : "!=") << " v; <v, (1,0,1)> = " << *e.pairing_w0
       << ", <v, w> = " << *e.pairing_w << "\n";
  }
  r.text = os.str();
  return r;
}

// --- cubic ------------------------------------------------------------------

Report cubic_report(const Int& d, const RunOptions& opts) {
  FanoVerdict f = fano_positive_entropy(d, opts.solve);
  Report r;
  r.command = "cubic";
  r.inputs = {{"d", int_json(d)}, {"options", options_json(opts)}};
  r.refs = json::array({"(*) d > 6, d = 0, 2 mod 6", "(**) no 4, 9, odd p = 2 mod 3", "(***) a^2 d = 2n^2 + 2n + 2",
                        "NS(F(X)) = -(l1^perp)", "irrational boundary => positive entropy"});
  r.positive = f.positive;
  json fac = json::array();
  for (const auto& pp : f.star2.factorization) fac.push_back(json::array({int_json(pp.prime), pp.exponent}));
  json star3{{"solvable", f.star3.certificate.solvable()}};
  star3["witness_a_n"] = f.star3.witness ? json::array({int_json(f.star3.witness->first), int_json(f.star3.witness->second)})
                                         : json(nullptr);
  r.verdict = {{"d", int_json(d)},
               {"star", f.star},
               {"star2", {{"holds", f.star2.holds}, {"factorization", fac}, {"reason", f.star2.reason}}},
               {"star3", star3},
               {"knum_gram", to_json(f.knum)},
               {"knum_det", int_json(f.knum_det)},
               {"ns_basis", to_json(f.ns.basis)},
               {"ns_gram", to_json(f.ns.gram)},
               {"isotropic", f.isotropy.isotropic},
               {"positive", f.positive},
               {"exploratory", f.exploratory},
               {"assumption", "rk H^{2,2}(X, Z) = 2"},
               {"reason", f.reason}};
  r.verdict["minus_two_representable"] = f.minus_two ? json(f.minus_two->solvable()) : json(nullptr);
  r.verdict["boundary"] = f.boundary ? json(f.boundary->rational ? "rational" : "irrational") : json(nullptr);
  if (f.isometry) {
    r.verdict["isometry"] = {{"matrix", to_json(f.isometry->isometry.matrix())},
                             {"unit", json::array({int_json(f.isometry->t), int_json(f.isometry->u)})},
                             {"disc", int_json(f.isometry->disc)},
                             {"spectral_radius", to_json(f.isometry->rho.radius)}};
  } else {
    r.verdict["isometry"] = nullptr;
  }
  r.verdict["statement"] = f.positive ? "automorphism of positive entropy on F(X)"
                                      : "no positive-entropy conclusion: " + f.reason;

  r.certificates.push_back(certificate("quadratic", "(***)", to_json(f.star3.certificate)));
  json iso = to_json(f.isotropy);
  iso["lattice"] = to_json(f.ns.gram);
  r.certificates.push_back(certificate("isotropy", "NS", iso));
  if (f.minus_two) r.certificates.push_back(certificate("quadratic", "NS represents -2", to_json(*f.minus_two)));
  if (f.isometry) r.certificates.push_back(certificate("isometry", "NS generator", isometry_json(f.isometry->isometry)));

  std::ostringstream os;
  os << "cubic  d = " << d << (f.exploratory ? " (exploratory)" : "") << "\n";
  os << "(*)   " << (f.star ? "holds" : "fails") << "\n";
  os << "(**)  " << (f.star2.holds ? "holds" : "fails") << ": " << f.star2.reason << "\n";
  os << "(***) " << (f.star3.certificate.solvable() ? "solvable" : "unsolvable") << ": " << summarize(f.star3.certificate);
  if (f.star3.witness) os << " (a, n) = (" << f.star3.witness->first << ", " << f.star3.witness->second << ")";
  os << "\n";
  os << "K_num Gram " << f.knum << ", det " << f.knum_det << "\n";
  os << "NS Gram " << f.ns.gram << " on basis " << f.ns.basis << "\n";
  os << "isotropic: " << (f.isotropy.isotropic ? "yes" : "no") << " (-det = " << f.isotropy.minus_det << ")\n";
  if (f.minus_two) os << "square -2: " << summarize(*f.minus_two) << "\n";
  if (f.isometry)
    os << "generator " << f.isometry->isometry.matrix() << ", spectral radius in ["
       << f.isometry->rho.radius.lower_string(12) << ", " << f.isometry->rho.radius.upper_string(12) << "]\n";
  os << "verdict: " << r.verdict["statement"].get<std::string>() << "\n";
  os << "assumption: rk H^{2,2}(X, Z) = 2\n";
  r.text = os.str();
  return r;
}

Report cubic_scan_report(const Int& max_d, const RunOptions& opts) {
  require(max_d >= 8, "--max-d must be at least 8");
  auto rows = cubic_scan(max_d, opts.solve);
  Report r;
  r.command = "cubic-scan";
  r.inputs = {{"max_d", int_json(max_d)}, {"options", options_json(opts)}};
  r.refs = json::array({"(*) d > 6, d = 0, 2 mod 6", "(**) no 4, 9, odd p = 2 mod 3", "(***) a^2 d = 2n^2 + 2n + 2"});
  json table = json::array();
  std::ostringstream os;
  os << "     d  (**)  (***)  witness (a, n)\n";
  for (const auto& row : rows) {
    json rj{{"d", int_json(row.d)}, {"star2", row.star2}, {"star3", row.star3}, {"method", row.method}};
    rj["witness_a_n"] = row.witness ? json::array({int_json(row.witness->first), int_json(row.witness->second)})
                                    : json(nullptr);
    table.push_back(std::move(rj));
    std::ostringstream d;
    d << row.d;
    std::string ds = d.str();
    os << std::string(ds.size() < 6 ? 6 - ds.size() : 0, ' ') << ds << "  " << (row.star2 ? " yes" : "  no") << "  "
       << (row.star3 ? "  yes" : "   no");
    if (row.witness) os << "  (" << row.witness->first << ", " << row.witness->second << ")";
    os << "\n";
  }
  r.verdict = {{"rows", table}, {"count", rows.size()}};
  r.text = os.str();
  return r;
}

// --- solve-quadratic --------------------------------------------------------

Report solve_report(const QuadraticDiophantine& eq, const RunOptions& opts) {
  SolvabilityCertificate c = solve(eq, opts.solve);
  Report r;
  r.command = "solve-quadratic";
  r.inputs = {{"coefficients", to_json(eq)}, {"options", options_json(opts)}};
  r.refs = json::array({"integral solvability of binary quadratic equations"});
  r.positive = true;
  r.verdict = to_json(c);
  r.certificates.push_back(certificate("quadratic", format_equation(eq), to_json(c)));
  std::ostringstream os;
  os << summarize(c) << "\n";
  if (!c.detail.empty()) os << "detail: " << c.detail << "\n";
  for (const auto& f : c.fundamental_solutions) {
    os << "  solution (" << f.base.first << ", " << f.base.second << ")";
    if (f.step)
      os << "  step (x, y) -> (" << f.step->matrix.a << "x + " << f.step->matrix.b << "y + " << f.step->offset_x << ", "
         << f.step->matrix.c << "x + " << f.step->matrix.d << "y + " << f.step->offset_y << ")";
    if (!f.note.empty()) os << "  [" << f.note << "]";
    os << "\n";
  }
  r.text = os.str();
  return r;
}

// --- scan -------------------------------------------------------------------

namespace {

struct ScanItem {
  Int h2;
  MukaiVector v;
};

std::vector<ScanItem> scan_items(const ScanJob& job, const RunOptions& opts) {
  std::vector<ScanItem> items;
  std::set<Int> targets(job.v2_targets.begin(), job.v2_targets.end());
  Int lo = job.h2_lo % 2 == 0 ? job.h2_lo : Int(job.h2_lo + 1);
  for (Int h2 = lo; h2 <= job.h2_hi; h2 += 2) {
    const Int d = h2 / 2;
    for (Int t = 1; t <= opts.max_t; ++t) {
      std::vector<std::pair<Int, Int>> rs; // (r, s), sorted by r
      for (const auto& target : targets) {
        const Int n = d * t * t - target / 2;
        if (n == 0) {
          for (Int r = 1; r <= opts.max_rank; ++r) rs.push_back({r, 0});
        } else {
          for (const auto& r : divisors(n)) rs.push_back({r, n / r});
        }
      }
      std::sort(rs.begin(), rs.end());
      for (const auto& [r, s] : rs) {
        if (gcd(gcd(r, t), s) != 1) continue;
        items.push_back({h2, MukaiVector(r, t, s, d)});
      }
    }
  }
  return items;
}

} // namespace

Report scan_report(const ScanJob& job, const RunOptions& opts, const FindingSink& emit) {
  require(job.h2_lo > 0 && job.h2_hi >= job.h2_lo, "scan: invalid h^2 range");
  require(job.h2_lo % 2 == 0 && job.h2_hi % 2 == 0, "scan: h^2 range endpoints must be even");
  require(!job.v2_targets.empty(), "scan: at least one v^2 target is required");
  for (const auto& t : job.v2_targets) require(t > 0 && t % 2 == 0, "scan: v^2 targets must be positive and even");
  require(opts.scan_budget >= 0, "scan: budget must be non-negative");
  require(opts.max_t >= 1, "scan: max_t must be at least 1");

  std::vector<ScanItem> items = scan_items(job, opts);
  const std::size_t total = items.size();
  const bool truncated = total > static_cast<std::size_t>(opts.scan_budget);
  if (truncated) items.resize(static_cast<std::size_t>(opts.scan_budget));

  struct Outcome {
    bool done = false;
    bool positive = false;
    json finding;
    std::string line;
  };
  std::vector<Outcome> outcomes(items.size());
  std::mutex mu;
  std::size_t next_emit = 0;
  std::atomic<std::size_t> next_job{0};
  std::exception_ptr failure;

  auto work = [&] {
    for (;;) {
      std::size_t i = next_job.fetch_add(1);
      if (i >= items.size()) return;
      Outcome o;
      try {
        const auto& it = items[i];
        WallVerdict wv = all_walls_fake(it.v.d, it.v, opts.solve);
        o.positive = wv.positive();
        if (o.positive) {
          o.finding = {{"h2", int_json(it.h2)}, {"d", int_json(it.v.d)}, {"v", to_json(it.v)},
                       {"v2", int_json(wv.v2)}, {"dim", int_json(wv.dim)}, {"strength", to_string(wv.strength)}};
          std::ostringstream os;
          os << "h^2 = " << it.h2 << "  v = " << it.v << "  v^2 = " << wv.v2 << "  dim = " << wv.dim << "  "
             << to_string(wv.strength);
          o.line = os.str();
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next_job = items.size();
        return;
      }
      std::lock_guard<std::mutex> lock(mu);
      o.done = true;
      outcomes[i] = std::move(o);
      while (next_emit < outcomes.size() && outcomes[next_emit].done) {
        if (outcomes[next_emit].positive && emit) emit(outcomes[next_emit].finding, outcomes[next_emit].line);
        ++next_emit;
      }
    }
  };

  unsigned workers = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, items.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  Report r;
  r.command = "scan";
  json targets = json::array();
  for (const auto& t : job.v2_targets) targets.push_back(int_json(t));
  json o = options_json(opts);
  o["scan_budget"] = opts.scan_budget;
  o["max_t"] = opts.max_t;
  o["max_rank"] = opts.max_rank;
  r.inputs = {{"h2_range", json::array({int_json(job.h2_lo), int_json(job.h2_hi)})}, {"v2_targets", targets}, {"options", o}};
  r.refs = json::array({"all walls fake => automorphism of positive entropy", "v = (r, t, s) with v^2 in targets"});
  json findings = json::array();
  std::ostringstream os;
  for (const auto& oc : outcomes)
    if (oc.positive) {
      findings.push_back(oc.finding);
      os << oc.line << "\n";
    }
  if (truncated) os << "truncated: budget of " << opts.scan_budget << " of " << total << " vectors reached\n";
  os << findings.size() << " finding(s) among " << items.size() << " vector(s)\n";
  r.verdict = {{"findings", findings}, {"evaluated", items.size()}, {"total", total}, {"truncated", truncated}};
  r.text = os.str();
  return r;
}

// --- verify -----------------------------------------------------------------

namespace {

QuadraticDiophantine equation_from(const json& j) {
  return {json_int(j.at(0)), json_int(j.at(1)), json_int(j.at(2)), json_int(j.at(3)), json_int(j.at(4)), json_int(j.at(5))};
}

IntMatrix matrix_from(const json& j) {
  std::vector<IntVector> rows;
  for (const auto& row : j) {
    IntVector r;
    for (const auto& x : row) r.push_back(json_int(x));
    rows.push_back(std::move(r));
  }
  return IntMatrix::from_rows(rows, rows.empty() ? 0 : rows[0].size());
}

Point point_from(const json& j) { return {json_int(j.at(0)), json_int(j.at(1))}; }

void check_quadratic(const json& c, const RunOptions& opts, std::vector<std::string>& failures, const std::string& subject) {
  auto fail = [&](const std::string& msg) { failures.push_back(subject + ": " + msg); };
  QuadraticDiophantine eq = equation_from(c.at("equation"));
  const std::string status = c.at("status").get<std::string>();
  if (!c.at("witness").is_null()) {
    Point w = point_from(c.at("witness"));
    if (eq.evaluate(w.first, w.second) != 0) fail("witness does not satisfy the equation");
  }
  for (const auto& f : c.at("fundamental_solutions")) {
    Point b = point_from(f.at("base"));
    if (eq.evaluate(b.first, b.second) != 0) fail("listed solution does not satisfy the equation");
    if (!f.at("step").is_null()) {
      const json& m = f.at("step").at("matrix");
      AffineStep st{Mat2{json_int(m.at(0).at(0)), json_int(m.at(0).at(1)), json_int(m.at(1).at(0)), json_int(m.at(1).at(1))},
                    json_int(f.at("step").at("offset").at(0)), json_int(f.at("step").at("offset").at(1))};
      Point n = st.apply(b);
      Point p = st.apply_inverse(b);
      if (eq.evaluate(n.first, n.second) != 0 || eq.evaluate(p.first, p.second) != 0)
        fail("recurrence step leaves the solution set");
    }
  }
  if (status == "unsolvable") {
    if (!c.at("obstruction").is_null()) {
      Int n = json_int(c.at("obstruction").at("modulus"));
      if (n < 2 || n > 65536) {
        fail("obstruction modulus out of replay range");
      } else if (!modular_obstruction(eq, to_int64(n))) {
        fail("claimed obstruction modulo " + to_string(n) + " does not hold");
      }
    } else if (!c.at("cycle").is_null() || c.at("method") == "isotropy") {
      SolveOptions no_sieve = opts.solve;
      no_sieve.sieve = false;
      SolvabilityCertificate again = solve(eq, no_sieve);
      if (c.at("method") == "isotropy") {
        // homogeneous m = 0: nonzero solutions only
        if (!again.fundamental_solutions.empty() &&
            std::any_of(again.fundamental_solutions.begin(), again.fundamental_solutions.end(),
                        [](const SolutionFamily& f) { return f.base != Point{0, 0} || f.step.has_value(); }))
          fail("isotropy replay found a nonzero solution");
      } else if (again.solvable()) {
        fail("reduction-cycle replay found a solution");
      }
    } else {
      fail("unsolvable without obstruction or cycle evidence");
    }
  }
}

} // namespace

Report verify_report(const std::string& report_json, const RunOptions& base_opts) {
  json doc;
  try {
    doc = json::parse(report_json);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("report is not valid JSON: ") + e.what());
  }
  require(doc.is_object() && doc.contains("command") && doc.contains("inputs") && doc.contains("certificates"),
          "report lacks command, inputs or certificates");
  require(doc.value("schema_version", 0) == kSchemaVersion, "unsupported report schema version");
  const std::string command = doc.at("command").get<std::string>();
  const json& inputs = doc.at("inputs");
  RunOptions opts = options_from(inputs);
  opts.workers = base_opts.workers;

  std::vector<std::string> failures;
  std::size_t checks = 0;
  for (const auto& cert : doc.at("certificates")) {
    ++checks;
    const std::string type = cert.at("type").get<std::string>();
    const std::string subject = cert.at("subject").get<std::string>();
    const json& data = cert.at("data");
    try {
      if (type == "quadratic") {
        check_quadratic(data, opts, failures, subject);
      } else if (type == "wall-pair") {
        if (!data.at("certificate").is_null()) check_quadratic(data.at("certificate"), opts, failures, subject);
      } else if (type == "wall-witness") {
        Int d = json_int(data.at("d"));
        MukaiVector v = MukaiVector::from_coords({json_int(data.at("v").at(0)), json_int(data.at("v").at(1)), json_int(data.at("v").at(2))}, d);
        MukaiVector a = MukaiVector::from_coords({json_int(data.at("a").at(0)), json_int(data.at("a").at(1)), json_int(data.at("a").at(2))}, d);
        if (square(a) != json_int(data.at("m")) || mukai_pairing(v, a) != json_int(data.at("k")))
          failures.push_back(subject + ": witness fails a^2 = m or <v,a> = k");
      } else if (type == "isometry") {
        IntegerIsometry(matrix_from(data.at("matrix")), matrix_from(data.at("gram")));
      } else if (type == "isotropy") {
        IntegerLattice l(matrix_from(data.at("lattice")));
        IsotropyCertificate again = exists_isotropic(l);
        if (again.isotropic != data.at("isotropic").get<bool>()) failures.push_back(subject + ": isotropy replay differs");
        if (!data.at("witness").is_null()) {
          Point w = point_from(data.at("witness"));
          const IntMatrix& g = l.gram();
          if (g(0, 0) * w.first * w.first + 2 * g(0, 1) * w.first * w.second + g(1, 1) * w.second * w.second != 0)
            failures.push_back(subject + ": isotropic witness has nonzero square");
        }
      } else if (type == "spectral-radius") {
        IntVector poly;
        for (const auto& x : data.at("charpoly")) poly.push_back(json_int(x));
        SpectralRadius again = spectral_radius_of_polynomial(poly);
        if (again.radius.lower_string() != data.at("interval").at("lower").get<std::string>() ||
            again.radius.upper_string() != data.at("interval").at("upper").get<std::string>())
          failures.push_back(subject + ": spectral radius replay differs");
      } else {
        failures.push_back(subject + ": unknown certificate type " + type);
      }
    } catch (const std::exception& e) {
      failures.push_back(subject + ": " + e.what());
    }
  }

  // Recompute the whole report from its inputs.
  ++checks;
  Report again;
  try {
    if (command == "k3-walls") {
      Int h2 = json_int(inputs.at("h2"));
      const json& v = inputs.at("v");
      again = walls_report(h2, MukaiVector(json_int(v.at(0)), json_int(v.at(1)), json_int(v.at(2)), h2 / 2), opts);
    } else if (command == "entropy") {
      Int d = json_int(inputs.at("d"));
      std::optional<MukaiVector> v;
      if (!inputs.at("v").is_null())
        v = MukaiVector(json_int(inputs.at("v").at(0)), json_int(inputs.at("v").at(1)), json_int(inputs.at("v").at(2)), d);
      again = entropy_command(d, v);
    } else if (command == "cubic") {
      again = cubic_report(json_int(inputs.at("d")), opts);
    } else if (command == "cubic-scan") {
      again = cubic_scan_report(json_int(inputs.at("max_d")), opts);
    } else if (command == "solve-quadratic") {
      again = solve_report(equation_from(inputs.at("coefficients")), opts);
    } else if (command == "scan") {
      ScanJob job{json_int(inputs.at("h2_range").at(0)), json_int(inputs.at("h2_range").at(1)), {}};
      for (const auto& t : inputs.at("v2_targets")) job.v2_targets.push_back(json_int(t));
      again = scan_report(job, opts);
    } else {
      failures.push_back("unknown command " + command);
    }
    if (!again.command.empty() && again.to_json() != doc) failures.push_back("recomputed report differs from the input");
  } catch (const std::exception& e) {
    failures.push_back(std::string("recomputation failed: ") + e.what());
  }

  Report r;
  r.command = "verify";
  r.inputs = {{"command", command}};
  r.refs = json::array({"certificate replay"});
  r.positive = failures.empty();
  r.verdict = {{"passed", failures.empty()}, {"checks", checks}, {"failures", failures}};
  std::ostringstream os;
  os << "verify " << command << ": " << (failures.empty() ? "PASS" : "FAIL") << " (" << checks << " checks)\n";
  for (const auto& f : failures) os << "  " << f << "\n";
  r.text = os.str();
  return r;
}

} // namespace k3ent
