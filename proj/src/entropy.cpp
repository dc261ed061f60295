#include "k3ent/entropy.hpp"

#include "k3ent/binary_form.hpp"
#include "k3ent/errors.hpp"
#include "k3ent/factor.hpp"

#include <algorithm>

namespace k3ent {

namespace {

using RPoly = std::vector<Rational>;

// Exactness of the sqrt bounds: 10^-30 before the final halving.
const Int kScale = pow(Int(10), 30);
const Real kPad("1e-45");

void trim(RPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RPoly to_rpoly(const IntVector& p) {
  RPoly out(p.begin(), p.end());
  trim(out);
  return out;
}

RPoly derivative(const RPoly& p) {
  RPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<long>(i));
  trim(out);
  return out;
}

RPoly remainder(RPoly a, const RPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rational q = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

Rational eval(const RPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::size_t variations(const std::vector<RPoly>& chain, const Rational& x) {
  std::size_t count = 0;
  int last = 0;
  for (const auto& p : chain) {
    Rational v = eval(p, x);
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::vector<RPoly> sturm_chain(const IntVector& poly) {
  std::vector<RPoly> chain{to_rpoly(poly)};
  require(!chain[0].empty(), "Sturm chain of the zero polynomial");
  chain.push_back(derivative(chain[0]));
  while (!chain.back().empty()) {
    RPoly r = remainder(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  if (chain.back().empty()) chain.pop_back();
  return chain;
}

Real to_real(const Rational& q) {
  return Real(boost::multiprecision::numerator(q).str()) / Real(boost::multiprecision::denominator(q).str());
}

Real to_real(const Int& z) { return Real(z.str()); }

// [lo, hi] containing sqrt(n) / 1 for n >= 0, with rational endpoints.
std::pair<Rational, Rational> sqrt_bounds(const Int& n) {
  Int s = isqrt(n * kScale * kScale);
  if (s * s == n * kScale * kScale) return {Rational(s, kScale), Rational(s, kScale)};
  return {Rational(s, kScale), Rational(s + 1, kScale)};
}

Interval outward(const Rational& lo, const Rational& hi) {
  if (lo == hi && boost::multiprecision::denominator(lo) == 1) return {to_real(lo), to_real(hi)};
  return {to_real(lo) - kPad, to_real(hi) + kPad};
}

IntVector synthetic_divide(const IntVector& p, const Int& root) {
  // p (low -> high) divided by (x - root), assuming root is a root.
  std::size_t n = p.size() - 1;
  IntVector q(n);
  Int carry = 0;
  for (std::size_t i = n; i-- > 0;) {
    carry = p[i + 1] + carry * root;
    q[i] = carry;
  }
  ensure(p[0] + carry * root == 0, "synthetic division left a remainder");
  return q;
}

Int abs_bound(const IntVector& p) {
  Int b = 0;
  for (const auto& c : p) b = std::max(b, abs(c));
  return b + 1;
}

std::string fixed_string(const Int& scaled, int decimals) {
  bool neg = scaled < 0;
  std::string digits = abs(scaled).str();
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals))
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  }
  return (neg ? "-" : "") + digits;
}

Int scaled_floor(const Real& x, int decimals) {
  Real s = x * boost::multiprecision::pow(Real(10), decimals);
  return boost::multiprecision::floor(s).convert_to<Int>();
}

Int scaled_ceil(const Real& x, int decimals) {
  Real s = x * boost::multiprecision::pow(Real(10), decimals);
  return boost::multiprecision::ceil(s).convert_to<Int>();
}

} // namespace

std::string Interval::lower_string(int decimals) const { return fixed_string(scaled_floor(lo, decimals), decimals); }
std::string Interval::upper_string(int decimals) const { return fixed_string(scaled_ceil(hi, decimals), decimals); }

Int evaluate(const IntVector& poly, const Int& x) {
  Int acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::size_t count_real_roots(const IntVector& poly, const Rational& lo, const Rational& hi) {
  require(lo < hi, "count_real_roots: empty interval");
  auto chain = sturm_chain(poly);
  std::size_t a = variations(chain, lo), b = variations(chain, hi);
  ensure(a >= b, "Sturm variation count decreased the wrong way");
  return a - b;
}

IntVector divide_exact(const IntVector& poly, const IntVector& divisor) {
  require(!divisor.empty() && divisor.back() == 1, "divide_exact: divisor must be monic");
  IntVector rem = poly;
  if (rem.size() < divisor.size()) {
    ensure(std::all_of(rem.begin(), rem.end(), [](const Int& c) { return c == 0; }), "divide_exact: nonzero remainder");
    return {};
  }
  IntVector q(rem.size() - divisor.size() + 1);
  for (std::size_t i = q.size(); i-- > 0;) {
    q[i] = rem[i + divisor.size() - 1];
    for (std::size_t j = 0; j < divisor.size(); ++j) rem[i + j] -= q[i] * divisor[j];
  }
  ensure(std::all_of(rem.begin(), rem.end(), [](const Int& c) { return c == 0; }), "divide_exact: nonzero remainder");
  return q;
}

IntegerIsometry::IntegerIsometry(IntMatrix matrix, IntMatrix gram) : matrix_(std::move(matrix)), gram_(std::move(gram)) {
  require(matrix_.rows() == matrix_.cols() && gram_.rows() == matrix_.rows() && gram_.cols() == gram_.rows(),
          "isometry: size mismatch");
  require(matrix_.transpose() * gram_ * matrix_ == gram_, "isometry: M^T G M != G");
  Int det = determinant(matrix_);
  require(det == 1 || det == -1, "isometry: determinant must be +-1");
}

MukaiVector spherical_class(const Int& d) {
  require(d >= 1, "spherical_class: d must be positive");
  return MukaiVector(d + 1, d, d * d - d + 1, d);
}

IntegerIsometry reflection(const MukaiVector& w) {
  require(square(w) == -2, "reflection: w^2 must be -2");
  IntMatrix g = mukai_gram(w.d);
  IntVector wc = w.coords();
  IntVector gw = g * wc;
  IntMatrix m = IntMatrix::identity(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) += wc[i] * gw[j];
  return IntegerIsometry(std::move(m), std::move(g));
}

IntegerIsometry compose(const IntegerIsometry& g, const IntegerIsometry& h) {
  require(g.gram() == h.gram(), "compose: isometries preserve different forms");
  return IntegerIsometry(g.matrix() * h.matrix(), g.gram());
}

SpectralRadius spectral_radius_of_polynomial(const IntVector& monic_poly) {
  require(!monic_poly.empty() && monic_poly.back() == 1, "spectral_radius: polynomial must be monic");
  SpectralRadius out;
  out.charpoly = monic_poly;
  IntVector p = monic_poly;
  // Integer roots divide the constant term.
  bool progress = true;
  while (progress && p.size() > 1) {
    progress = false;
    if (p[0] == 0) {
      out.integer_roots.push_back(0);
      p = synthetic_divide(p, 0);
      progress = true;
      continue;
    }
    for (const auto& dv : divisors(p[0])) {
      for (Int r : {dv, Int(-dv)}) {
        if (evaluate(p, r) == 0) {
          out.integer_roots.push_back(r);
          p = synthetic_divide(p, r);
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
  }
  std::sort(out.integer_roots.begin(), out.integer_roots.end());
  out.residual = p;

  Rational lo = 0, hi = 0;
  for (const auto& r : out.integer_roots) {
    if (abs(r) > lo) lo = hi = Rational(abs(r));
  }
  const std::size_t deg = p.size() - 1;
  if (deg == 0) {
    out.method = "integer roots";
  } else if (deg == 2) {
    const Int& b = p[1];
    const Int& c = p[0];
    Int disc = b * b - 4 * c;
    Rational qlo, qhi;
    if (disc >= 0) {
      auto [slo, shi] = sqrt_bounds(disc);
      qlo = (Rational(abs(b)) + slo) / 2;
      qhi = (Rational(abs(b)) + shi) / 2;
      out.method = "real quadratic factor";
    } else {
      std::tie(qlo, qhi) = sqrt_bounds(c);
      out.method = "complex pair, modulus sqrt of the constant term";
    }
    if (qhi > hi) {
      // The radius is the larger of the two root moduli; keep whichever is
      // certainly larger, or the hull when the intervals overlap.
      if (qlo >= hi) {
        lo = qlo;
        hi = qhi;
      } else {
        hi = qhi;
      }
    }
  } else {
    // Residual of higher degree: all roots must be real for this path.
    Int bound = abs_bound(p);
    std::size_t real = count_real_roots(p, Rational(-bound), Rational(bound));
    ensure(real == deg, "spectral_radius: residual factor has non-real roots beyond a quadratic");
    auto isolate_top = [&](bool top) {
      Rational a(-bound), z(bound);
      const Rational eps(1, kScale);
      while (z - a > eps) {
        Rational mid = (a + z) / 2;
        if (top) {
          if (count_real_roots(p, mid, z) >= 1) a = mid; else z = mid;
        } else {
          if (count_real_roots(p, a, mid) >= 1) z = mid; else a = mid;
        }
      }
      return std::make_pair(a, z);
    };
    auto [tlo, thi] = isolate_top(true);
    auto [blo, bhi] = isolate_top(false);
    // Moduli of the largest and smallest real roots.
    auto absr = [](const Rational& q) { return q < 0 ? Rational(-q) : q; };
    Rational top_lo = tlo >= 0 ? tlo : Rational(0), top_hi = std::max(absr(tlo), absr(thi));
    Rational bot_lo = bhi <= 0 ? Rational(-bhi) : Rational(0), bot_hi = std::max(absr(blo), absr(bhi));
    Rational rlo = std::max(top_lo, bot_lo), rhi = std::max(top_hi, bot_hi);
    if (rhi > hi) {
      hi = rhi;
      lo = std::max(lo, rlo);
    }
    out.method = "Sturm isolation";
  }
  out.radius = outward(lo, hi);
  return out;
}

SpectralRadius spectral_radius(const IntegerIsometry& m) { return spectral_radius_of_polynomial(m.charpoly()); }

Interval log_interval(const Interval& x) {
  require(x.lo > 0, "log_interval: interval must be positive");
  if (x.lo == 1 && x.hi == 1) return {Real(0), Real(0)};
  return {boost::multiprecision::log(x.lo) - kPad, boost::multiprecision::log(x.hi) + kPad};
}

EntropyReport entropy_report(const Int& d, const std::optional<MukaiVector>& v) {
  require(d >= 1, "entropy_report: d must be positive");
  IntegerIsometry phi1 = reflection(MukaiVector(1, 0, 1, d));
  IntegerIsometry phi2 = reflection(spherical_class(d));
  IntegerIsometry phi = compose(phi1, phi2);
  SpectralRadius rho = spectral_radius(phi);
  Interval log_rho = log_interval(rho.radius);
  EntropyReport out{d, phi1, phi2, phi, rho, log_rho, log_rho, v, {}, {}, {}, {}, {}};
  if (v) {
    require(v->d == d, "entropy_report: v carries a different degree");
    Int v2 = square(*v);
    require(v2 > 0, "entropy_report: v^2 must be positive");
    out.dim = v2 + 2;
    Real half = to_real(Int(*out.dim / 2));
    out.h_top = Interval{log_rho.lo * half, log_rho.hi * half};
    out.fixes_v = phi.matrix() * v->coords() == v->coords();
    out.pairing_w0 = mukai_pairing(*v, MukaiVector(1, 0, 1, d));
    out.pairing_w = mukai_pairing(*v, spherical_class(d));
  }
  return out;
}

FundamentalIsometry fundamental_isometry(const IntegerLattice& n) {
  require(n.rank() == 2, "fundamental_isometry: lattice must have rank 2");
  require(signature(n) == Signature{1, 1}, "fundamental_isometry: signature must be (1,1)");
  const IntMatrix& g = n.gram();
  BinaryForm f{g(0, 0), 2 * g(0, 1), g(1, 1)};
  require(!is_square(f.discriminant()), "fundamental_isometry: lattice has an isotropic vector");
  Int k = f.content();
  BinaryForm prim{f.a / k, f.b / k, f.c / k};
  Mat2 a = fundamental_automorph(prim);
  auto [t, u] = fundamental_unit_solution(prim.discriminant());
  IntegerIsometry iso(IntMatrix{{a.a, a.b}, {a.c, a.d}}, g);
  return {iso, spectral_radius(iso), t, u, prim.discriminant()};
}

} // namespace k3ent
