#include "k3ent/lattice.hpp"

#include "k3ent/errors.hpp"

#include <sstream>

namespace k3ent {

IntegerLattice::IntegerLattice(IntMatrix gram) : gram_(std::move(gram)) {
  require(gram_.square() && gram_.rows() > 0, "lattice: Gram matrix must be square and nonempty");
  require(gram_.symmetric(), "lattice: Gram matrix must be symmetric");
  require(determinant(gram_) != 0, "lattice: Gram matrix is degenerate");
}

bool IntegerLattice::even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (gram_(i, i) % 2 != 0) return false;
  return true;
}

Int IntegerLattice::pairing(const IntVector& x, const IntVector& y) const {
  return dot(x, gram_ * y);
}

Int discriminant(const IntegerLattice& lattice) { return determinant(lattice.gram()); }

IntVector discriminant_group(const IntegerLattice& lattice) {
  IntVector out;
  for (auto& f : smith_invariants(lattice.gram()))
    if (f != 1) out.push_back(f);
  return out;
}

namespace {

std::size_t sign_changes(const IntVector& coeffs) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& c : coeffs) {
    int s = sign(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

} // namespace

Signature signature(const IntegerLattice& lattice) {
  IntVector p = characteristic_polynomial(lattice.gram());
  IntVector q = p;
  for (std::size_t i = 1; i < q.size(); i += 2) q[i] = -q[i]; // p(-x)
  Signature sig{sign_changes(p), sign_changes(q)};
  ensure(sig.positive + sig.negative == lattice.rank(), "signature: eigenvalue count mismatch");
  return sig;
}

MukaiVector::MukaiVector(Int r_, Int t_, Int s_, Int d_)
    : r(std::move(r_)), t(std::move(t_)), s(std::move(s_)), d(std::move(d_)) {
  require(d >= 1, "Mukai vector: d must be positive (h^2 = 2d)");
}

MukaiVector MukaiVector::from_coords(const IntVector& c, const Int& d) {
  require(c.size() == 3, "Mukai vector: expected three coordinates");
  return MukaiVector(c[0], c[1], c[2], d);
}

bool MukaiVector::primitive() const { return gcd(gcd(r, t), s) == 1; }

std::ostream& operator<<(std::ostream& os, const MukaiVector& v) {
  return os << '(' << v.r << ',' << v.t << ',' << v.s << ')';
}

std::string format_mukai(const MukaiVector& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

IntMatrix mukai_gram(const Int& d) {
  require(d >= 1, "Mukai lattice: d must be positive");
  return IntMatrix{{0, 0, -1}, {0, 2 * d, 0}, {-1, 0, 0}};
}

IntegerLattice mukai_lattice(const Int& d) { return IntegerLattice(mukai_gram(d)); }

Int mukai_pairing(const MukaiVector& v, const MukaiVector& w) {
  require(v.d == w.d, "Mukai pairing: vectors live on different lattices (d mismatch)");
  return 2 * v.d * v.t * w.t - v.r * w.s - w.r * v.s;
}

Int square(const MukaiVector& v) { return mukai_pairing(v, v); }

Sublattice make_sublattice(const IntMatrix& ambient_gram, const IntMatrix& basis) {
  require(basis.cols() == ambient_gram.rows(), "sublattice: basis has wrong length");
  require(rank(basis) == basis.rows(), "sublattice: basis vectors are dependent");
  IntMatrix gram = basis * ambient_gram * basis.transpose();
  return Sublattice{ambient_gram, basis, std::move(gram)};
}

std::optional<IntVector> Sublattice::coordinates_of(const IntVector& x) const {
  // Solve c B = x via the normal equations restricted to pivot columns of
  // the Hermite form of B.
  const std::size_t k = basis.rows();
  const std::size_t n = basis.cols();
  IntMatrix aug(k + 1, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = basis(i, j);
  for (std::size_t j = 0; j < n; ++j) aug(k, j) = x[j];
  if (k3ent::rank(aug) != k) return std::nullopt;
  // Pick k independent columns.
  std::vector<std::size_t> cols;
  HermiteForm hf = hermite_normal_form(basis);
  for (std::size_t i = 0, j = 0; i < hf.rank && j < n; ++j)
    if (hf.h(i, j) != 0) {
      cols.push_back(j);
      ++i;
    }
  IntMatrix sq(k, k);
  IntVector rhs(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) sq(a, b) = basis(b, cols[a]);
    rhs[a] = x[cols[a]];
  }
  auto c = solve_integral(sq, rhs);
  if (!c) return std::nullopt;
  IntVector back(n, Int(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) back[j] += (*c)[i] * basis(i, j);
  if (back != x) return std::nullopt;
  return c;
}

Sublattice orthogonal_complement(const MukaiVector& v) {
  require(!v.is_zero(), "orthogonal complement: zero vector");
  IntMatrix g = mukai_gram(v.d);
  IntVector functional = g * v.coords();
  IntMatrix row(1, 3);
  for (std::size_t j = 0; j < 3; ++j) row(0, j) = functional[j];
  Sublattice out = make_sublattice(g, integer_kernel(row));
  for (const auto& b : out.basis_vectors())
    ensure(dot(functional, b) == 0, "orthogonal complement: basis vector not orthogonal");
  return out;
}

Sublattice saturate(const Sublattice& s) {
  return make_sublattice(s.ambient_gram, saturate_rows(s.basis));
}

Int saturation_index(const Sublattice& s) {
  Sublattice sat = saturate(s);
  // Every basis vector of s has integral coordinates in sat; the index is
  // |det| of the coordinate matrix.
  IntMatrix coords(s.rank(), s.rank());
  auto rows = s.basis_vectors();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto c = sat.coordinates_of(rows[i]);
    ensure(c.has_value(), "saturation: original vector not in saturation");
    for (std::size_t j = 0; j < c->size(); ++j) coords(i, j) = (*c)[j];
  }
  return abs(determinant(coords));
}

} // namespace k3ent
