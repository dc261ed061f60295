#pragma once

#include "k3ent/bigint.hpp"
#include "k3ent/matrix.hpp"

#include <ostream>
#include <string>
#include <utility>

namespace k3ent {

/// Free abelian group with a non-degenerate symmetric integer Gram matrix.
class IntegerLattice {
public:
  /// Throws InvalidInput if gram is not square, not symmetric, or singular.
  explicit IntegerLattice(IntMatrix gram);

  std::size_t rank() const noexcept { return gram_.rows(); }
  const IntMatrix& gram() const noexcept { return gram_; }
  bool even() const;
  Int pairing(const IntVector& x, const IntVector& y) const;
  Int square(const IntVector& x) const { return pairing(x, x); }

private:
  IntMatrix gram_;
};

/// Signed determinant of the Gram matrix.
Int discriminant(const IntegerLattice& lattice);

/// Invariant factors of L*/L (Smith form of the Gram matrix), with the unit
/// factors dropped; their product is |discriminant|.
IntVector discriminant_group(const IntegerLattice& lattice);

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Exact signature: the characteristic polynomial of a symmetric matrix is
/// real-rooted, so Descartes' rule of signs counts positive and negative
/// eigenvalues exactly.
Signature signature(const IntegerLattice& lattice);

/// Class (r, t, s) in H^0 + Zh + H^4 of a K3 surface with Pic = Zh, h^2 = 2d.
struct MukaiVector {
  Int r;
  Int t;
  Int s;
  Int d; // h^2 = 2d, d >= 1

  MukaiVector() = default;
  MukaiVector(Int r_, Int t_, Int s_, Int d_);

  IntVector coords() const { return {r, t, s}; }
  static MukaiVector from_coords(const IntVector& c, const Int& d);
  bool is_zero() const { return r == 0 && t == 0 && s == 0; }
  bool primitive() const;

  friend bool operator==(const MukaiVector& a, const MukaiVector& b) {
    return a.r == b.r && a.t == b.t && a.s == b.s && a.d == b.d;
  }
  friend std::ostream& operator<<(std::ostream& os, const MukaiVector& v);
};

std::string format_mukai(const MukaiVector& v);

/// Gram matrix of the rank-3 algebraic Mukai lattice in the basis
/// (1,0,0), (0,h,0), (0,0,1): [[0,0,-1],[0,2d,0],[-1,0,0]].
IntMatrix mukai_gram(const Int& d);
IntegerLattice mukai_lattice(const Int& d);

/// <v,w> = 2d t1 t2 - r1 s2 - r2 s1. Throws InvalidInput on mismatched d.
Int mukai_pairing(const MukaiVector& v, const MukaiVector& w);
Int square(const MukaiVector& v);

/// Sublattice of an ambient lattice given by independent basis vectors
/// (ambient coordinates).
struct Sublattice {
  IntMatrix ambient_gram;
  IntMatrix basis; // rows
  IntMatrix gram;  // B G B^T

  std::size_t rank() const noexcept { return basis.rows(); }
  std::vector<IntVector> basis_vectors() const { return basis.row_vectors(); }
  /// Coordinates of an ambient vector in this basis, if it lies in the
  /// sublattice.
  std::optional<IntVector> coordinates_of(const IntVector& x) const;
};

Sublattice make_sublattice(const IntMatrix& ambient_gram, const IntMatrix& basis);

/// Saturated lattice {x : <v,x> = 0} in the rank-3 Mukai lattice, basis in
/// row Hermite normal form. Throws InvalidInput for v = 0.
Sublattice orthogonal_complement(const MukaiVector& v);

/// Primitive closure of S in its ambient lattice; idempotent.
Sublattice saturate(const Sublattice& s);

/// [ambient ∩ Q-span : span] for a sublattice, computed as the ratio of Gram
/// determinants' square roots; 1 iff primitive (Gram must be non-degenerate).
Int saturation_index(const Sublattice& s);

} // namespace k3ent
