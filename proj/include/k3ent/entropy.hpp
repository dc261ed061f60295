#pragma once

#include "k3ent/bigint.hpp"
#include "k3ent/lattice.hpp"
#include "k3ent/matrix.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <optional>
#include <string>

namespace k3ent {

using Real = boost::multiprecision::cpp_dec_float_50;

/// Closed interval with decimal endpoints, rounded outward on output.
struct Interval {
  Real lo;
  Real hi;
  Real width() const { return hi - lo; }
  bool contains(const Real& x) const { return lo <= x && x <= hi; }
  /// Endpoint rounded down / up to `decimals` places.
  std::string lower_string(int decimals = 30) const;
  std::string upper_string(int decimals = 30) const;
};

/// Polynomial helpers; coefficients low -> high.
Int evaluate(const IntVector& poly, const Int& x);
/// Number of distinct real roots in (lo, hi] by a Sturm sequence.
std::size_t count_real_roots(const IntVector& poly, const Rational& lo, const Rational& hi);
/// Exact division by a monic polynomial; throws if the remainder is nonzero.
IntVector divide_exact(const IntVector& poly, const IntVector& divisor);

/// Square integer matrix M with M^T G M = G, det M = +-1 (checked).
class IntegerIsometry {
public:
  IntegerIsometry(IntMatrix matrix, IntMatrix gram);
  const IntMatrix& matrix() const noexcept { return matrix_; }
  const IntMatrix& gram() const noexcept { return gram_; }
  Int det() const { return determinant(matrix_); }
  IntVector charpoly() const { return characteristic_polynomial(matrix_); }

private:
  IntMatrix matrix_;
  IntMatrix gram_;
};

/// (d+1, d, d^2-d+1), a class of square -2.
MukaiVector spherical_class(const Int& d);

/// x -> x + <x, w> w on the rank-3 Mukai lattice; w^2 must be -2.
IntegerIsometry reflection(const MukaiVector& w);

/// Matrix product g h, with the isometry property re-checked.
IntegerIsometry compose(const IntegerIsometry& g, const IntegerIsometry& h);

struct SpectralRadius {
  Interval radius;
  IntVector charpoly;
  std::vector<Int> integer_roots;  // with multiplicity
  IntVector residual;              // charpoly with the integer roots removed
  std::string method;
};

/// Certified interval for the largest root modulus of the characteristic
/// polynomial. Width is below 1e-25.
SpectralRadius spectral_radius(const IntegerIsometry& m);
SpectralRadius spectral_radius_of_polynomial(const IntVector& monic_poly);

/// Natural log of a positive interval, padded outward.
Interval log_interval(const Interval& x);

struct EntropyReport {
  Int d;
  IntegerIsometry phi1;
  IntegerIsometry phi2;
  IntegerIsometry phi;  // phi1 * phi2
  SpectralRadius rho;
  Interval log_rho;
  Interval h_cat_lower;
  std::optional<MukaiVector> v;
  std::optional<Int> dim;
  std::optional<Interval> h_top;  // (dim / 2) log_rho, context only
  std::optional<bool> fixes_v;    // phi(v) == v
  std::optional<Int> pairing_w0;  // <v, (1,0,1)>
  std::optional<Int> pairing_w;   // <v, spherical_class(d)>
};

EntropyReport entropy_report(const Int& d, const std::optional<MukaiVector>& v = std::nullopt);

struct FundamentalIsometry {
  IntegerIsometry isometry;
  SpectralRadius rho;
  Int t;  // unit (t + u sqrt(D)) / 2 of the primitive form's discriminant D
  Int u;
  Int disc;
};

/// Generator, up to sign, of the proper isometries of a rank-2 lattice of
/// signature (1,1) without isotropic vectors.
FundamentalIsometry fundamental_isometry(const IntegerLattice& n);

} // namespace k3ent
