#include "k3ent/walls.hpp"

#include "k3ent/errors.hpp"

#include <algorithm>
#include <sstream>

namespace k3ent {

namespace {

IntVector add(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVector scale(const Int& c, const IntVector& a) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return out;
}

IntVector combine(const Int& x, const IntVector& a, const Int& y, const IntVector& b) {
  return add(scale(x, a), scale(y, b));
}

// u with <f, u> = gcd(f) for an integer row vector f of length 3.
IntVector bezout3(const IntVector& f) {
  auto e1 = extended_gcd(f[0], f[1]);
  auto e2 = extended_gcd(e1.g, f[2]);
  return {e2.x * e1.x, e2.x * e1.y, e2.y};
}

// Integer j maximizing the concave q(j) = qa j^2 + qb j + qc (qa < 0);
// smallest such j on ties.
Int argmax_concave(const Int& qa, const Int& qb, const Int& qc) {
  Int den = -2 * qa;
  Int j0 = floor_div(qb, den);
  auto q = [&](const Int& j) { return qa * j * j + qb * j + qc; };
  return q(j0) >= q(j0 + 1) ? j0 : Int(j0 + 1);
}

std::vector<Int> roots_of(const Int& a, const Int& b, const Int& c) {
  std::vector<Int> out;
  Int disc = b * b - 4 * a * c;
  if (disc < 0 || !is_square(disc)) return out;
  Int s = isqrt(disc);
  for (Int num : {Int(-b - s), Int(-b + s)})
    if (num % (2 * a) == 0) out.push_back(num / (2 * a));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Classes of H on the affine line <v, c> = k, as base + j w.
struct LineSearch {
  const IntMatrix& gram;
  IntVector unit;  // <v, unit> = g
  IntVector w;     // spans H ∩ v^perp
  Int g;

  Int pair(const IntVector& x, const IntVector& y) const { return dot(x, gram * y); }

  std::optional<IntVector> base(const Int& k) const {
    if (k % g != 0) return std::nullopt;
    return scale(k / g, unit);
  }

  // A class with <v, c> = k and c^2 = target.
  std::optional<IntVector> with_square(const Int& k, const Int& target) const {
    auto b = base(k);
    if (!b) return std::nullopt;
    auto roots = roots_of(pair(w, w), 2 * pair(*b, w), pair(*b, *b) - target);
    if (roots.empty()) return std::nullopt;
    return add(*b, scale(roots.front(), w));
  }

  // A class with <v, c> = k and c^2 as large as possible.
  std::optional<IntVector> maximal(const Int& k) const {
    auto b = base(k);
    if (!b) return std::nullopt;
    Int j = argmax_concave(pair(w, w), 2 * pair(*b, w), pair(*b, *b));
    return add(*b, scale(j, w));
  }
};

} // namespace

const char* to_string(WallKind kind) {
  switch (kind) {
    case WallKind::BrillNoether: return "BrillNoether";
    case WallKind::HilbertChow: return "HilbertChow";
    case WallKind::LiGiesekerUhlenbeck: return "LiGiesekerUhlenbeck";
    case WallKind::Flopping: return "Flopping";
    case WallKind::Fake: return "Fake";
  }
  return "unknown";
}

bool divisorial(WallKind kind) {
  return kind == WallKind::BrillNoether || kind == WallKind::HilbertChow ||
         kind == WallKind::LiGiesekerUhlenbeck;
}

const char* to_string(WallStrength s) {
  switch (s) {
    case WallStrength::Strict: return "STRICT";
    case WallStrength::Classified: return "CLASSIFIED";
    case WallStrength::Negative: return "NEGATIVE";
  }
  return "unknown";
}

std::optional<WallKind> direct_kind(const Int& m, const Int& k, const Int& v2) {
  if (m == -2 && k == 0) return WallKind::BrillNoether;
  if (m == 0 && k == 1) return WallKind::HilbertChow;
  if (m == 0 && k == 2) return WallKind::LiGiesekerUhlenbeck;
  if (m == -2 && k > 0 && 2 * k <= v2) return WallKind::Flopping;
  if (m >= 0 && k > 0 && k < v2 && v2 - 2 * k + m >= 0) return WallKind::Flopping;
  return std::nullopt;
}

Enumeration enumerate_walls(const MukaiVector& v, const SolveOptions& options) {
  require(v.primitive(), "enumerate_candidates: v must be primitive");
  const Int v2 = square(v);
  require(v2 > 0, "enumerate_candidates: v^2 must be positive");
  const IntMatrix gram = mukai_gram(v.d);
  const IntVector vc = v.coords();
  const IntVector functional = gram * vc;
  const Int g = gcd(functional);
  const IntVector unit = bezout3(functional);
  ensure(dot(functional, unit) == g, "enumerate: Bezout vector check failed");

  Enumeration out{v, v2, orthogonal_complement(v), {}, {}};
  const IntVector b1 = out.v_perp.basis.row(0);
  const IntVector b2 = out.v_perp.basis.row(1);
  auto pair = [&](const IntVector& x, const IntVector& y) { return dot(x, gram * y); };
  const IntegerLattice perp_lattice(out.v_perp.gram);

  for (Int m = -2; 4 * m < v2; m += 2) {
    for (Int k = 0; 2 * k <= v2; ++k) {
      PairDecision pd{m, k, false, g, std::nullopt};
      if (k % g != 0) {
        pd.gcd_excluded = true;
        out.pairs.push_back(std::move(pd));
        continue;
      }
      const IntVector a0 = scale(k / g, unit);
      SolvabilityCertificate cert;
      if (m == 0 && k == 0) {
        cert = represents(perp_lattice, 0, options);
      } else {
        QuadraticDiophantine eq{pair(b1, b1) / 2, pair(b1, b2),     pair(b2, b2) / 2,
                                pair(a0, b1),     pair(a0, b2),     (pair(a0, a0) - m) / 2};
        cert = solve(eq, options);
      }
      pd.certificate = cert;
      out.pairs.push_back(pd);
      if (cert.status != SolveStatus::Solvable) continue;

      auto to_class = [&](const Point& p) {
        IntVector a = add(a0, combine(p.first, b1, p.second, b2));
        ensure(pair(a, a) == m && pair(vc, a) == k, "enumerate: witness fails the (m, k) check");
        return MukaiVector::from_coords(a, v.d);
      };
      WallCandidate cand;
      cand.m = m;
      cand.k = k;
      cand.witness = to_class(*cert.witness);
      for (const auto& fam : cert.fundamental_solutions)
        if (fam.base != *cert.witness) cand.alternates.push_back(to_class(fam.base));
      Int span_det = v2 * m - k * k;
      cand.hyperbolic = span_det < 0;
      cand.saturated_h = saturate(make_sublattice(gram, IntMatrix::from_rows({vc, cand.witness.coords()}, 3)));
      cand.certificate = std::move(cert);
      out.candidates.push_back(std::move(cand));
    }
  }
  return out;
}

std::vector<WallCandidate> enumerate_candidates(const Int& d, const MukaiVector& v, const SolveOptions& options) {
  require(v.d == d, "enumerate_candidates: v carries a different degree");
  return enumerate_walls(v, options).candidates;
}

WallClass classify(const Sublattice& h, const MukaiVector& v) {
  require(h.rank() == 2, "classify: H must have rank 2");
  require(determinant(h.gram) < 0, "classify: H must be hyperbolic");
  require(h.ambient_gram == mukai_gram(v.d), "classify: H lives in a different Mukai lattice");
  require(h.coordinates_of(v.coords()).has_value(), "classify: v must lie in H");
  const Int v2 = square(v);
  require(v2 > 0, "classify: v^2 must be positive");

  const IntMatrix& gram = h.ambient_gram;
  const IntVector vc = v.coords();
  const IntVector h1 = h.basis.row(0), h2 = h.basis.row(1);
  const Int f1 = dot(vc, gram * h1), f2 = dot(vc, gram * h2);
  const Int g = gcd(f1, f2);
  auto eg = extended_gcd(f1, f2);
  LineSearch line{gram, combine(eg.x, h1, eg.y, h2), combine(f2 / g, h1, -f1 / g, h2), g};
  ensure(line.pair(line.w, line.w) < 0, "classify: v^perp in H is not negative definite");

  auto as_class = [&](const IntVector& c) { return MukaiVector::from_coords(c, v.d); };
  auto describe = [&](const IntVector& c) {
    std::ostringstream os;
    os << "a = " << as_class(c) << ", a^2 = " << line.pair(c, c) << ", <v,a> = " << line.pair(vc, c);
    return os.str();
  };

  if (auto c = line.with_square(0, -2)) return {WallKind::BrillNoether, as_class(*c), std::nullopt, describe(*c)};
  if (auto c = line.with_square(1, 0)) return {WallKind::HilbertChow, as_class(*c), std::nullopt, describe(*c)};
  if (auto c = line.with_square(2, 0))
    return {WallKind::LiGiesekerUhlenbeck, as_class(*c), std::nullopt, describe(*c)};

  for (Int k = g; k < v2; k += g) {
    auto c = line.maximal(k);
    Int c2 = line.pair(*c, *c);
    if (c2 >= 0 && v2 - 2 * k + c2 >= 0) {
      IntVector b = add(vc, scale(-1, *c));
      std::ostringstream os;
      os << "v = a + b with " << describe(*c) << ", b^2 = " << line.pair(b, b);
      return {WallKind::Flopping, as_class(*c), as_class(b), os.str()};
    }
  }
  for (Int k = g; 2 * k <= v2; k += g)
    if (auto c = line.with_square(k, -2)) return {WallKind::Flopping, as_class(*c), std::nullopt, describe(*c)};

  return {WallKind::Fake, std::nullopt, std::nullopt, "no class meets a divisorial or flopping condition"};
}

WallVerdict all_walls_fake(const Int& d, const MukaiVector& v, const SolveOptions& options) {
  require(v.d == d, "all_walls_fake: v carries a different degree");
  WallVerdict out;
  out.v = v;
  out.enumeration = enumerate_walls(v, options);
  out.v2 = out.enumeration.v2;
  out.dim = out.v2 + 2;

  const IntMatrix gram = mukai_gram(d);
  bool all_fake = true;
  for (const auto& cand : out.enumeration.candidates) {
    std::vector<MukaiVector> witnesses{cand.witness};
    witnesses.insert(witnesses.end(), cand.alternates.begin(), cand.alternates.end());
    for (const auto& a : witnesses) {
      ClassifiedWall cw{cand.m, cand.k, a, direct_kind(cand.m, cand.k, out.v2), std::nullopt,
                        out.v2 * cand.m - cand.k * cand.k};
      if (cw.span_det < 0) {
        Sublattice h = saturate(make_sublattice(gram, IntMatrix::from_rows({v.coords(), a.coords()}, 3)));
        cw.wall = classify(h, v);
      }
      if (!cw.wall || cw.wall->kind != WallKind::Fake) all_fake = false;
      out.walls.push_back(std::move(cw));
    }
  }
  if (out.enumeration.candidates.empty())
    out.strength = WallStrength::Strict;
  else
    out.strength = all_fake ? WallStrength::Classified : WallStrength::Negative;
  return out;
}

BoundaryVerdict nef_boundary_rationality(const IntegerLattice& n) {
  require(n.rank() == 2, "nef_boundary_rationality: lattice must have rank 2");
  require(signature(n) == Signature{1, 1}, "nef_boundary_rationality: signature must be (1,1)");
  BoundaryVerdict out;
  out.isotropy = exists_isotropic(n);
  out.rational = out.isotropy.isotropic;
  return out;
}

} // namespace k3ent
