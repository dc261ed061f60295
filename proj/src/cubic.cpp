#include "k3ent/cubic.hpp"

#include "k3ent/errors.hpp"

#include <sstream>

namespace k3ent {

bool check_star(const Int& d) {
  Int r = mod_floor(d, Int(6));
  return d > 6 && (r == 0 || r == 2);
}

Star2Evidence check_star2(const Int& d) {
  require(d >= 1, "check_star2: d must be positive");
  Star2Evidence out;
  out.factorization = factorize(d);
  out.holds = true;
  std::ostringstream os;
  for (const auto& pp : out.factorization) {
    if (pp.prime == 2 && pp.exponent >= 2) {
      out.holds = false;
      os << "divisible by 4";
      break;
    }
    if (pp.prime == 3 && pp.exponent >= 2) {
      out.holds = false;
      os << "divisible by 9";
      break;
    }
    if (pp.prime != 2 && pp.prime % 3 == 2) {
      out.holds = false;
      os << "divisible by " << pp.prime << " = 2 mod 3";
      break;
    }
  }
  if (out.holds) os << "no factor 4, 9, or odd prime = 2 mod 3";
  out.reason = os.str();
  return out;
}

Star3Result check_star3(const Int& d, const SolveOptions& options) {
  require(d >= 1, "check_star3: d must be positive");
  Star3Result out;
  out.certificate = solve(QuadraticDiophantine{2, 0, -d, 2, 0, 2}, options);
  if (out.certificate.witness) {
    const auto& [n, a] = *out.certificate.witness;
    ensure(a * a * d == 2 * n * n + 2 * n + 2, "check_star3: witness check failed");
    out.witness = std::make_pair(a, n);
  }
  return out;
}

IntMatrix knum_gram(const Int& d) {
  require(check_star(d), "knum_gram: d must satisfy d > 6 and d = 0, 2 mod 6");
  const Int k = d / 6;
  IntMatrix g = mod_floor(d, Int(6)) == 0 ? IntMatrix{{-2, 1, 0}, {1, -2, 0}, {0, 0, 2 * k}}
                                          : IntMatrix{{-2, 1, 0}, {1, -2, 1}, {0, 1, 2 * k}};
  ensure(abs(determinant(g)) == d, "knum_gram: |det| != d");
  return g;
}

FanoNs fano_ns(const Int& d) {
  IntMatrix g = knum_gram(d);
  IntMatrix functional(1, 3);
  for (std::size_t j = 0; j < 3; ++j) functional(0, j) = g(0, j);
  IntMatrix basis = integer_kernel(functional);
  ensure(basis.rows() == 2, "fano_ns: complement of l1 must have rank 2");
  for (const auto& b : basis.row_vectors()) ensure(dot(functional.row(0), b) == 0, "fano_ns: basis not orthogonal to l1");
  return {basis, -(basis * g * basis.transpose())};
}

IntMatrix fano_ns_gram(const Int& d) { return fano_ns(d).gram; }

FanoVerdict fano_positive_entropy(const Int& d, const SolveOptions& options) {
  require(check_star(d), "fano_positive_entropy: d must satisfy d > 6 and d = 0, 2 mod 6");
  FanoVerdict out;
  out.d = d;
  out.star = true;
  out.exploratory = d != 74;
  out.star2 = check_star2(d);
  out.star3 = check_star3(d, options);
  out.knum = knum_gram(d);
  out.knum_det = determinant(out.knum);
  out.ns = fano_ns(d);
  IntegerLattice ns(out.ns.gram);
  out.isotropy = exists_isotropic(ns);

  if (!out.star2.holds) {
    out.reason = "condition (**) fails: " + out.star2.reason;
    return out;
  }
  if (out.isotropy.isotropic) {
    out.reason = "NS contains an isotropic vector; the boundary rays are rational";
    return out;
  }
  out.minus_two = represents(ns, -2, options);
  if (out.minus_two->solvable()) {
    out.reason = "NS contains a class of square -2";
    return out;
  }
  if (signature(ns) != Signature{1, 1}) {
    out.reason = "NS does not have signature (1,1)";
    return out;
  }
  out.boundary = nef_boundary_rationality(ns);
  out.isometry = fundamental_isometry(ns);
  out.positive = true;
  out.reason = "boundary rays irrational; Aut(F(X)) is infinite and carries an automorphism of positive entropy";
  return out;
}

std::vector<CubicScanRow> cubic_scan(const Int& max_d, const SolveOptions& options) {
  std::vector<CubicScanRow> rows;
  for (Int d = 8; d <= max_d; ++d) {
    if (!check_star(d)) continue;
    CubicScanRow row;
    row.d = d;
    row.star2 = check_star2(d).holds;
    auto s3 = check_star3(d, options);
    row.star3 = s3.certificate.solvable();
    row.witness = s3.witness;
    row.method = s3.certificate.method;
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace k3ent
