#include "k3ent/diophantine.hpp"

#include "k3ent/errors.hpp"
#include "k3ent/factor.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace k3ent {

namespace {

// Sequential scans over residues and automorph orbits run on 64-bit
// integers; moduli beyond this bound fall back to arbitrary precision.
constexpr std::int64_t kSmallModulus = std::int64_t{1} << 30;

void append_term(std::ostringstream& os, const Int& coeff, const char* monomial, bool& first) {
  if (coeff == 0) return;
  Int mag = abs(coeff);
  if (first) {
    if (coeff < 0) os << '-';
  } else {
    os << (coeff < 0 ? " - " : " + ");
  }
  if (mag != 1 || monomial[0] == '\0') os << mag;
  os << monomial;
  first = false;
}

QuadraticDiophantine swapped(const QuadraticDiophantine& eq) {
  return {eq.c, eq.b, eq.a, eq.e, eq.d, eq.f};
}

Point swap_point(const Point& p) { return {p.second, p.first}; }

AffineStep swap_step(const AffineStep& s) {
  return {Mat2{s.matrix.d, s.matrix.c, s.matrix.b, s.matrix.a}, s.offset_y, s.offset_x};
}

SolutionFamily swap_family(const SolutionFamily& f) {
  SolutionFamily out{swap_point(f.base), std::nullopt, f.note};
  if (f.step) out.step = swap_step(*f.step);
  return out;
}

std::tuple<Int, Int, bool, bool> canonical_key(const Point& p) {
  return {abs(p.second), abs(p.first), p.first < 0, p.second < 0};
}

Point descend(Point p, const AffineStep& step) {
  for (std::size_t guard = 0; guard < 100000; ++guard) {
    Point fwd = step.apply(p);
    Point bwd = step.apply_inverse(p);
    if (canonical_less(fwd, p)) {
      p = fwd;
    } else if (canonical_less(bwd, p)) {
      p = bwd;
    } else {
      break;
    }
  }
  // The key can have two local minima along a hyperbolic orbit; inspect a
  // short window around the descent point.
  Point best = p;
  Point f = p, b = p;
  for (int i = 0; i < 4; ++i) {
    f = step.apply(f);
    b = step.apply_inverse(b);
    if (canonical_less(f, best)) best = f;
    if (canonical_less(b, best)) best = b;
  }
  return best;
}

void finalize_families(SolvabilityCertificate& cert) {
  for (auto& fam : cert.fundamental_solutions)
    if (fam.step) fam.base = descend(fam.base, *fam.step);
  auto& fams = cert.fundamental_solutions;
  std::sort(fams.begin(), fams.end(), [](const SolutionFamily& l, const SolutionFamily& r) {
    return canonical_less(l.base, r.base);
  });
  fams.erase(std::unique(fams.begin(), fams.end(),
                         [](const SolutionFamily& l, const SolutionFamily& r) { return l.base == r.base; }),
             fams.end());
  for (const auto& fam : fams) {
    ensure(cert.equation.evaluate(fam.base.first, fam.base.second) == 0,
           "solve: listed solution does not satisfy the equation");
    if (fam.step) {
      Point next = fam.step->apply(fam.base);
      ensure(cert.equation.evaluate(next.first, next.second) == 0,
             "solve: recurrence does not preserve solutions");
    }
  }
  if (!fams.empty()) {
    cert.status = SolveStatus::Solvable;
    cert.witness = fams.front().base;
    if (std::any_of(fams.begin(), fams.end(), [](const auto& f) { return f.step.has_value(); }))
      cert.infinite = true;
  } else {
    cert.status = SolveStatus::Unsolvable;
  }
}

// Integer roots of a u^2 + b u + c = 0 (a != 0).
std::vector<Int> integer_roots(const Int& a, const Int& b, const Int& c) {
  Int disc = b * b - 4 * a * c;
  std::vector<Int> out;
  if (disc < 0 || !is_square(disc)) return out;
  Int s = isqrt(disc);
  for (Int num : {Int(-b - s), Int(-b + s)}) {
    if (num % (2 * a) == 0) out.push_back(num / (2 * a));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// --- linear: D x + E y + F = 0 with gcd(D, E) = 1 -------------------------

void solve_linear(const QuadraticDiophantine& eq, SolvabilityCertificate& cert) {
  cert.method = "linear";
  auto eg = extended_gcd(eq.d, eq.e);
  ensure(eg.g == 1, "linear solve: coefficients not coprime after normalization");
  Point p{-eq.f * eg.x, -eq.f * eg.y};
  AffineStep step{Mat2::identity(), eq.e, -eq.d};
  cert.fundamental_solutions.push_back({p, step, "x -> x + E, y -> y - D"});
  cert.detail = "gcd(D, E) = 1 divides F";
  finalize_families(cert);
}

// --- elliptic: disc < 0, bounded search over the solution ellipse ---------

void solve_elliptic(const QuadraticDiophantine& eq, SolvabilityCertificate& cert) {
  cert.method = "ellipse-enumeration";
  const Int disc = eq.discriminant(); // < 0, so a != 0
  // x is rational iff P(y) = disc y^2 + beta y + gamma is a square >= 0.
  const Int beta = 2 * eq.b * eq.d - 4 * eq.a * eq.e;
  const Int gamma = eq.d * eq.d - 4 * eq.a * eq.f;
  const Int dn = -disc;
  const Int disc2 = beta * beta + 4 * dn * gamma;
  std::ostringstream detail;
  if (disc2 < 0) {
    detail << "the real ellipse is empty";
    cert.detail = detail.str();
    finalize_families(cert);
    return;
  }
  const Int s = isqrt(disc2);
  const Int lo = floor_div(beta - s - 1, 2 * dn);
  const Int hi = ceil_div(beta + s + 1, 2 * dn);
  for (Int y = lo; y <= hi; ++y) {
    Int py = disc * y * y + beta * y + gamma;
    if (py < 0 || !is_square(py)) continue;
    Int r = isqrt(py);
    for (Int num : {Int(-(eq.b * y + eq.d) - r), Int(-(eq.b * y + eq.d) + r)}) {
      if (num % (2 * eq.a) != 0) continue;
      Point p{num / (2 * eq.a), y};
      if (eq.evaluate(p.first, p.second) == 0) cert.fundamental_solutions.push_back({p, std::nullopt, ""});
    }
  }
  detail << "searched y in [" << lo << ", " << hi << "]";
  cert.detail = detail.str();
  finalize_families(cert);
}

// --- parabolic: disc = 0 --------------------------------------------------

void solve_parabolic(const QuadraticDiophantine& eq, SolvabilityCertificate& cert) {
  cert.method = "parabolic-progression";
  // Quadratic part = g (alpha x + beta y)^2 with gcd(alpha, beta) = 1.
  Int g, alpha, beta;
  if (eq.a == 0) {
    g = eq.c;
    alpha = 0;
    beta = 1;
  } else if (eq.c == 0) {
    g = eq.a;
    alpha = 1;
    beta = 0;
  } else {
    g = gcd(eq.a, eq.c);
    if (eq.a < 0) g = -g;
    alpha = isqrt(eq.a / g);
    Int cc = isqrt(eq.c / g);
    ensure(alpha * alpha * g == eq.a && cc * cc * g == eq.c, "parabolic: square decomposition failed");
    beta = eq.b / (2 * g * alpha);
    ensure(2 * g * alpha * beta == eq.b && beta * beta == cc * cc, "parabolic: cross term mismatch");
  }
  auto eg = extended_gcd(alpha, beta);
  ensure(eg.g == 1, "parabolic: direction not primitive");
  // [[alpha, beta], [p, q]] has determinant 1; u = alpha x + beta y.
  const Int q = eg.x, p = -eg.y;
  // x = q u - beta w, y = -p u + alpha w
  auto to_xy = [&](const Int& u, const Int& w) -> Point { return {q * u - beta * w, -p * u + alpha * w}; };
  const Int lin_u = eq.d * q - eq.e * p;
  const Int lin_w = alpha * eq.e - beta * eq.d;
  // g u^2 + lin_u u + lin_w w + F = 0
  std::ostringstream detail;
  detail << "substitution u = " << alpha << "x + " << beta << "y gives " << g << "u^2 + " << lin_u
         << "u + " << lin_w << "w + " << eq.f << " = 0";
  if (lin_w == 0) {
    for (const auto& u : integer_roots(g, lin_u, eq.f)) {
      AffineStep step{Mat2::identity(), -beta, alpha};
      cert.fundamental_solutions.push_back({to_xy(u, 0), step, "free parameter along the line"});
    }
    if (cert.fundamental_solutions.empty()) detail << "; the quadratic in u has no integer root";
  } else {
    const Int modulus = abs(lin_w);
    bool any = false;
    for (Int r = 0; r < modulus; ++r) {
      Int val = g * r * r + lin_u * r + eq.f;
      if (val % modulus != 0) continue;
      any = true;
      Int w = -val / lin_w;
      std::ostringstream note;
      note << "u = " << r << " + " << modulus << "j";
      cert.fundamental_solutions.push_back({to_xy(r, w), std::nullopt, note.str()});
    }
    if (any) {
      cert.infinite = true;
    } else {
      ModularObstruction ob{modulus, {}, mod_floor(-eq.f, modulus)};
      cert.obstruction = ob;
      detail << "; no residue u mod " << modulus << " makes the w-coefficient divide";
    }
  }
  cert.detail = detail.str();
  bool infinite = cert.infinite;
  finalize_families(cert);
  cert.infinite = cert.infinite || (infinite && cert.status == SolveStatus::Solvable);
}

// Centered coordinates: X = disc x - c1, Y = disc y - c2 turn the equation
// into the binary form (A, B, C) representing n.
struct Centered {
  Int disc, c1, c2, n;
};

Centered center(const QuadraticDiophantine& eq) {
  Int disc = eq.discriminant();
  Int c1 = 2 * eq.c * eq.d - eq.b * eq.e;
  Int c2 = 2 * eq.a * eq.e - eq.b * eq.d;
  Int n = -disc * (disc * eq.f + eq.a * eq.e * eq.e - eq.b * eq.d * eq.e + eq.c * eq.d * eq.d);
  return {disc, c1, c2, n};
}

std::optional<Point> uncenter(const Centered& ctr, const Int& X, const Int& Y) {
  Int nx = X + ctr.c1, ny = Y + ctr.c2;
  if (nx % ctr.disc != 0 || ny % ctr.disc != 0) return std::nullopt;
  return Point{nx / ctr.disc, ny / ctr.disc};
}

// --- hyperbolic with square discriminant: the form factors ----------------

void solve_square(const QuadraticDiophantine& eq, SolvabilityCertificate& cert) {
  cert.method = "linear-factorization";
  std::ostringstream detail;
  if (eq.a == 0 && eq.c == 0) {
    // (B x + E)(B y + D) = DE - BF
    const Int k = eq.d * eq.e - eq.b * eq.f;
    if (k != 0) {
      for (const auto& dpos : divisors(k))
        for (Int e : {dpos, Int(-dpos)}) {
          Int xn = e - eq.e, yn = k / e - eq.d;
          if (xn % eq.b == 0 && yn % eq.b == 0)
            cert.fundamental_solutions.push_back({{xn / eq.b, yn / eq.b}, std::nullopt, ""});
        }
      detail << "(Bx + E)(By + D) = " << k << "; all divisor pairs checked";
    } else {
      if (eq.e % eq.b == 0)
        cert.fundamental_solutions.push_back(
            {{-eq.e / eq.b, 0}, AffineStep{Mat2::identity(), 0, 1}, "line x = -E/B"});
      if (eq.d % eq.b == 0)
        cert.fundamental_solutions.push_back(
            {{0, -eq.d / eq.b}, AffineStep{Mat2::identity(), 1, 0}, "line y = -D/B"});
      detail << "(Bx + E)(By + D) = 0";
    }
    cert.detail = detail.str();
    finalize_families(cert);
    return;
  }
  const Centered ctr = center(eq);
  const Int s = isqrt(ctr.disc);
  // 4A Q(X, Y) = (2A X + (B - s) Y)(2A X + (B + s) Y)
  const Int p1 = 2 * eq.a, q1 = eq.b - s, q2 = eq.b + s;
  if (ctr.n != 0) {
    const Int prod = 4 * eq.a * ctr.n;
    for (const auto& dpos : divisors(prod))
      for (Int e : {dpos, Int(-dpos)}) {
        Int other = prod / e;
        Int ynum = other - e; // 2 s Y
        if (ynum % (2 * s) != 0) continue;
        Int Y = ynum / (2 * s);
        Int xnum = e - q1 * Y;
        if (xnum % p1 != 0) continue;
        if (auto pt = uncenter(ctr, xnum / p1, Y))
          cert.fundamental_solutions.push_back({*pt, std::nullopt, ""});
      }
    detail << "product of linear factors = " << prod << "; all divisor pairs checked";
  } else {
    // Lines through the center: points t * dir with dir primitive.
    for (const auto& qv : {q1, q2}) {
      Int g = gcd(qv, p1);
      Int dx = -qv / g, dy = p1 / g;
      Int period = lcm(ctr.disc / gcd(ctr.disc, dx), ctr.disc / gcd(ctr.disc, dy));
      for (Int t = 0; t < period; ++t) {
        if (auto pt = uncenter(ctr, t * dx, t * dy)) {
          AffineStep step{Mat2::identity(), period * dx / ctr.disc, period * dy / ctr.disc};
          cert.fundamental_solutions.push_back({*pt, step, "line through the center"});
        }
      }
    }
    detail << "the conic is a pair of rational lines";
  }
  cert.detail = detail.str();
  finalize_families(cert);
}

// --- hyperbolic, non-square discriminant: reduction cycle -----------------

struct Vec2i {
  std::int64_t x, y;
  bool operator==(const Vec2i&) const = default;
};

struct OrbitScanner {
  // Aut mod m acting on residue pairs.
  Int m;
  Mat2 aut_mod;
  bool small = false;
  std::int64_t a = 0, b = 0, c = 0, d = 0, mm = 0;

  OrbitScanner(const Mat2& aut, const Int& modulus) : m(modulus), aut_mod(aut.mod(modulus)) {
    small = modulus < kSmallModulus;
    if (small) {
      a = to_int64(aut_mod.a);
      b = to_int64(aut_mod.b);
      c = to_int64(aut_mod.c);
      d = to_int64(aut_mod.d);
      mm = to_int64(modulus);
    }
  }

  Vec2i step(const Vec2i& v) const {
    auto mulmod = [this](std::int64_t p, std::int64_t q) {
      return static_cast<std::int64_t>((static_cast<__int128>(p) * q) % mm);
    };
    return {(mulmod(a, v.x) + mulmod(b, v.y)) % mm, (mulmod(c, v.x) + mulmod(d, v.y)) % mm};
  }

  Point step(const Point& v) const {
    auto [x, y] = aut_mod.apply(v.first, v.second);
    return {mod_floor(x, m), mod_floor(y, m)};
  }

  template <typename V>
  std::size_t period_of(const V& start) const {
    V v = step(start);
    std::size_t j = 1;
    while (!(v == start)) {
      v = step(v);
      ++j;
      ensure(j < (std::size_t{1} << 34), "orbit period exceeds scan limit");
    }
    return j;
  }

  /// First j in [0, period) with Aut^j start == target.
  template <typename V>
  std::optional<std::size_t> first_hit(V v, const V& target, std::size_t period) const {
    for (std::size_t j = 0; j < period; ++j) {
      if (v == target) return j;
      v = step(v);
    }
    return std::nullopt;
  }
};

void solve_nonsquare(const QuadraticDiophantine& eq, SolvabilityCertificate& cert,
                     const SolveOptions& /*options*/) {
  cert.method = "reduction-cycle";
  const Centered ctr = center(eq);
  const Int content = gcd(gcd(eq.a, eq.b), eq.c);
  const BinaryForm form{eq.a / content, eq.b / content, eq.c / content};
  const Int disc0 = form.discriminant();
  ensure(ctr.n % content == 0, "nonsquare: centered value not divisible by form content");
  const Int target = ctr.n / content;

  CycleEvidence ev;
  ev.form = form;
  ev.target = target;
  ev.congruence_modulus = ctr.disc;

  Reduced rf = reduce(form);
  FormCycle cycle(rf.form);
  ev.cycle_length = cycle.length();

  std::ostringstream detail;
  detail << "centered: " << form << " represents " << target << " with X ≡ " << mod_floor(-ctr.c1, ctr.disc)
         << ", Y ≡ " << mod_floor(-ctr.c2, ctr.disc) << " (mod " << ctr.disc << ")";

  std::vector<Point> reps;
  if (target == 0) {
    reps.push_back({0, 0}); // anisotropic form: only the origin
  } else {
    // g^2 | target
    for (const auto& g : divisors(target)) {
      if (target % (g * g) != 0) continue;
      Int n = target / (g * g);
      Int four_n = 4 * abs(n);
      for (const auto& t : sqrt_mod(disc0, four_n)) {
        if (t >= 2 * abs(n)) continue;
        ++ev.roots_checked;
        BinaryForm h{n, t, (t * t - disc0) / (4 * n)};
        Reduced rh = reduce(h);
        auto hit = cycle.locate(rh.form);
        if (!hit) continue;
        Mat2 tm = rf.transform * hit->second * rh.transform.inverse();
        ensure(form.act(tm) == h, "nonsquare: equivalence transform check failed");
        reps.push_back({g * tm.a, g * tm.c});
      }
    }
  }
  ev.orbits_found = reps.size();

  const Mat2 aut = fundamental_automorph(form);
  const Mat2 aut_inv = aut.inverse();
  const Int m = ctr.disc;
  const Point tgt{mod_floor(-ctr.c1, m), mod_floor(-ctr.c2, m)};
  OrbitScanner scan(aut, m);

  std::size_t period = 0;
  if (!reps.empty()) {
    if (scan.small)
      period = scan.period_of(Vec2i{to_int64(tgt.first), to_int64(tgt.second)});
    else
      period = scan.period_of(tgt);
  }
  ev.congruence_period = period;

  std::optional<AffineStep> step;
  for (const auto& rep : reps) {
    for (int sgn : {1, -1}) {
      Point start{mod_floor(sgn * rep.first, m), mod_floor(sgn * rep.second, m)};
      std::optional<std::size_t> hit;
      if (scan.small)
        hit = scan.first_hit(Vec2i{to_int64(start.first), to_int64(start.second)},
                             Vec2i{to_int64(tgt.first), to_int64(tgt.second)}, period);
      else
        hit = scan.first_hit(start, tgt, period);
      if (!hit) continue;
      if (!step) {
        Mat2 mp = power(aut, period);
        auto [kx, ky] = mp.apply(ctr.c1, ctr.c2);
        Int ox = ctr.c1 - kx, oy = ctr.c2 - ky;
        ensure(ox % m == 0 && oy % m == 0, "nonsquare: recurrence offset not integral");
        step = AffineStep{mp, ox / m, oy / m};
      }
      Mat2 e = *hit * 2 <= period ? power(aut, *hit) : power(aut_inv, period - *hit);
      auto [X, Y] = e.apply(sgn * rep.first, sgn * rep.second);
      auto pt = uncenter(ctr, X, Y);
      ensure(pt.has_value(), "nonsquare: congruence hit does not pull back");
      cert.fundamental_solutions.push_back({*pt, step, "orbit under the automorph power"});
    }
  }
  if (target == 0 && !cert.fundamental_solutions.empty()) {
    // The center itself; the orbit is a single point.
    for (auto& fam : cert.fundamental_solutions) fam.step.reset();
  }
  cert.cycle = ev;
  cert.detail = detail.str();
  finalize_families(cert);
}

} // namespace

std::string format_equation(const QuadraticDiophantine& eq) {
  std::ostringstream os;
  bool first = true;
  append_term(os, eq.a, "x^2", first);
  append_term(os, eq.b, "xy", first);
  append_term(os, eq.c, "y^2", first);
  append_term(os, eq.d, "x", first);
  append_term(os, eq.e, "y", first);
  append_term(os, eq.f, "", first);
  if (first) os << '0';
  os << " = 0";
  return os.str();
}

ConicKind classify_conic(const QuadraticDiophantine& eq) {
  if (eq.linear()) return (eq.d == 0 && eq.e == 0) ? ConicKind::Constant : ConicKind::Linear;
  Int disc = eq.discriminant();
  if (disc < 0) return ConicKind::Elliptic;
  if (disc == 0) return ConicKind::Parabolic;
  return is_square(disc) ? ConicKind::HyperbolicSquare : ConicKind::HyperbolicNonSquare;
}

const char* to_string(ConicKind kind) {
  switch (kind) {
    case ConicKind::Constant: return "constant";
    case ConicKind::Linear: return "linear";
    case ConicKind::Elliptic: return "elliptic";
    case ConicKind::Parabolic: return "parabolic";
    case ConicKind::HyperbolicSquare: return "hyperbolic-square";
    case ConicKind::HyperbolicNonSquare: return "hyperbolic-nonsquare";
  }
  return "unknown";
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Solvable: return "solvable";
    case SolveStatus::Unsolvable: return "unsolvable";
    case SolveStatus::Degenerate: return "degenerate";
  }
  return "unknown";
}

Point AffineStep::apply(const Point& p) const {
  auto [x, y] = matrix.apply(p.first, p.second);
  return {x + offset_x, y + offset_y};
}

Point AffineStep::apply_inverse(const Point& p) const {
  Mat2 inv = matrix.inverse();
  return inv.apply(p.first - offset_x, p.second - offset_y);
}

bool canonical_less(const Point& l, const Point& r) { return canonical_key(l) < canonical_key(r); }

std::vector<std::int64_t> default_sieve_moduli(const Int& disc, std::int64_t disc_bound) {
  std::set<std::int64_t> mods;
  for (std::int64_t p = 2; p <= 64; ++p) {
    bool prime = true;
    for (std::int64_t q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    for (std::int64_t q = p; q <= 64; q *= p) mods.insert(q);
  }
  if (disc != 0) {
    for (const auto& pp : factorize(4 * abs(disc))) {
      Int q = pow(pp.prime, pp.exponent);
      if (q <= disc_bound) mods.insert(to_int64(q));
    }
  }
  return {mods.begin(), mods.end()};
}

std::optional<ModularObstruction> modular_obstruction(const QuadraticDiophantine& eq,
                                                      std::int64_t modulus) {
  require(modulus >= 2, "modular_obstruction: modulus must be at least 2");
  require(modulus <= (std::int64_t{1} << 16), "modular_obstruction: modulus too large for exhaustive check");
  const std::int64_t n = modulus;
  auto red = [n](const Int& v) { return to_int64(mod_floor(v, Int(n))); };
  const std::int64_t a = red(eq.a), b = red(eq.b), c = red(eq.c), d = red(eq.d), e = red(eq.e);
  const std::int64_t required = red(-eq.f);
  const bool collect = n <= 64;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (std::int64_t x = 0; x < n; ++x) {
    const std::int64_t base = (a * x % n * x + d * x) % n;
    const std::int64_t lin = (b * x + e) % n;
    for (std::int64_t y = 0; y < n; ++y) {
      std::int64_t val = (base + (lin + c * y) % n * y) % n;
      if (val == required && !collect) return std::nullopt;
      seen[static_cast<std::size_t>(val)] = 1;
    }
  }
  if (seen[static_cast<std::size_t>(required)]) return std::nullopt;
  ModularObstruction ob{Int(n), {}, Int(required)};
  if (collect)
    for (std::int64_t v = 0; v < n; ++v)
      if (seen[static_cast<std::size_t>(v)]) ob.attained.push_back(v);
  return ob;
}

SolvabilityCertificate solve(const QuadraticDiophantine& eq, const SolveOptions& options) {
  SolvabilityCertificate cert;
  cert.equation = eq;
  cert.reduced_equation = eq;
  cert.kind = classify_conic(eq);
  if (eq.all_zero()) {
    cert.status = SolveStatus::Degenerate;
    cert.method = "degenerate";
    cert.detail = "0 = 0: every pair solves";
    cert.infinite = true;
    return cert;
  }
  const Int content = gcd(IntVector{eq.a, eq.b, eq.c, eq.d, eq.e});
  if (content == 0) {
    // Nonzero constant.
    std::int64_t n = 2;
    while (eq.f % n == 0) ++n;
    cert.method = "modular-sieve";
    cert.obstruction = modular_obstruction(eq, n);
    ensure(cert.obstruction.has_value(), "constant equation: expected obstruction");
    cert.detail = "nonzero constant";
    return cert;
  }
  if (eq.f % content != 0) {
    cert.content = content;
    cert.method = "content";
    cert.obstruction = ModularObstruction{content, {}, mod_floor(-eq.f, content)};
    cert.detail = "gcd of the non-constant coefficients does not divide F";
    return cert;
  }
  cert.content = content;
  QuadraticDiophantine red{eq.a / content, eq.b / content, eq.c / content,
                           eq.d / content, eq.e / content, eq.f / content};
  cert.reduced_equation = red;

  // The reduced equation has exactly the same solutions; solve it and
  // report solutions against the original.
  SolvabilityCertificate inner;
  inner.equation = red;
  inner.reduced_equation = red;
  inner.kind = cert.kind;

  if (cert.kind == ConicKind::Linear) {
    solve_linear(red, inner);
  } else {
    if (options.sieve) {
      auto moduli = options.sieve_moduli.empty() ? default_sieve_moduli(red.discriminant(), options.sieve_disc_bound)
                                                 : options.sieve_moduli;
      for (auto n : moduli) {
        if (n < 2) continue;
        if (auto ob = modular_obstruction(red, n)) {
          cert.method = "modular-sieve";
          cert.obstruction = ob;
          std::ostringstream os;
          os << "no solution modulo " << n;
          cert.detail = os.str();
          return cert;
        }
      }
    }
    switch (cert.kind) {
      case ConicKind::Elliptic: solve_elliptic(red, inner); break;
      case ConicKind::Parabolic: solve_parabolic(red, inner); break;
      case ConicKind::HyperbolicSquare:
        if (red.a == 0 && red.c != 0) {
          SolvabilityCertificate sw;
          sw.equation = swapped(red);
          solve_square(sw.equation, sw);
          inner.method = sw.method;
          inner.detail = sw.detail + " (x and y exchanged)";
          for (const auto& f : sw.fundamental_solutions) inner.fundamental_solutions.push_back(swap_family(f));
          finalize_families(inner);
        } else {
          solve_square(red, inner);
        }
        break;
      case ConicKind::HyperbolicNonSquare: solve_nonsquare(red, inner, options); break;
      default: ensure(false, "solve: unexpected conic kind");
    }
  }
  cert.status = inner.status;
  cert.method = inner.method;
  cert.witness = inner.witness;
  cert.obstruction = inner.obstruction;
  cert.cycle = inner.cycle;
  cert.fundamental_solutions = inner.fundamental_solutions;
  cert.infinite = inner.infinite;
  cert.detail = inner.detail;
  if (cert.witness)
    ensure(eq.evaluate(cert.witness->first, cert.witness->second) == 0, "solve: witness check failed");
  return cert;
}

SolvabilityCertificate represents(const IntegerLattice& lattice, const Int& m, const SolveOptions& options) {
  require(lattice.rank() == 2, "represents: lattice must have rank 2");
  const IntMatrix& g = lattice.gram();
  QuadraticDiophantine eq{g(0, 0), 2 * g(0, 1), g(1, 1), 0, 0, -m};
  if (m != 0) return solve(eq, options);
  SolvabilityCertificate cert;
  cert.equation = eq;
  cert.reduced_equation = eq;
  cert.kind = classify_conic(eq);
  cert.method = "isotropy";
  auto iso = exists_isotropic(lattice);
  std::ostringstream os;
  os << "-det = " << iso.minus_det << (iso.isotropic ? " is" : " is not") << " a perfect square";
  cert.detail = os.str();
  if (iso.isotropic) {
    cert.status = SolveStatus::Solvable;
    cert.witness = iso.witness;
    cert.fundamental_solutions.push_back({*iso.witness, std::nullopt, "isotropic vector"});
  } else {
    cert.status = SolveStatus::Unsolvable;
  }
  return cert;
}

IsotropyCertificate exists_isotropic(const IntegerLattice& lattice) {
  require(lattice.rank() == 2, "exists_isotropic: lattice must have rank 2");
  const IntMatrix& g = lattice.gram();
  IsotropyCertificate out;
  out.minus_det = -determinant(g);
  if (out.minus_det < 0 || !is_square(out.minus_det)) return out;
  out.isotropic = true;
  const Int s = isqrt(out.minus_det);
  Int x, y;
  if (g(0, 0) == 0) {
    x = 1;
    y = 0;
  } else {
    x = -g(0, 1) + s;
    y = g(0, 0);
    Int h = gcd(x, y);
    x /= h;
    y /= h;
  }
  if (y < 0 || (y == 0 && x < 0)) {
    x = -x;
    y = -y;
  }
  ensure(g(0, 0) * x * x + 2 * g(0, 1) * x * y + g(1, 1) * y * y == 0, "exists_isotropic: witness check failed");
  out.witness = Point{x, y};
  return out;
}

std::pair<Int, Int> pell_fundamental(const Int& d) {
  require(d > 0, "pell_fundamental: D must be positive");
  require(!is_square(d), "pell_fundamental: D must not be a perfect square");
  const Int a0 = isqrt(d);
  Int m = 0, den = 1, a = a0;
  Int p_prev = 1, p = a0;
  Int q_prev = 0, q = 1;
  while (p * p - d * q * q != 1) {
    m = den * a - m;
    den = (d - m * m) / den;
    a = (a0 + m) / den;
    Int p_next = a * p + p_prev;
    Int q_next = a * q + q_prev;
    p_prev = p;
    p = p_next;
    q_prev = q;
    q = q_next;
  }
  return {p, q};
}

} // namespace k3ent
