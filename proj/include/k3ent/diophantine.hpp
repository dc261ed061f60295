#pragma once

#include "k3ent/bigint.hpp"
#include "k3ent/binary_form.hpp"
#include "k3ent/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace k3ent {

/// A x^2 + B x y + C y^2 + D x + E y + F = 0
struct QuadraticDiophantine {
  Int a, b, c, d, e, f;

  Int discriminant() const { return b * b - 4 * a * c; }
  Int evaluate(const Int& x, const Int& y) const {
    return a * x * x + b * x * y + c * y * y + d * x + e * y + f;
  }
  bool all_zero() const { return a == 0 && b == 0 && c == 0 && d == 0 && e == 0 && f == 0; }
  bool linear() const { return a == 0 && b == 0 && c == 0; }

  friend bool operator==(const QuadraticDiophantine&, const QuadraticDiophantine&) = default;
};

std::string format_equation(const QuadraticDiophantine& eq);

enum class ConicKind { Constant, Linear, Elliptic, Parabolic, HyperbolicSquare, HyperbolicNonSquare };
ConicKind classify_conic(const QuadraticDiophantine& eq);
const char* to_string(ConicKind kind);

enum class SolveStatus { Solvable, Unsolvable, Degenerate };
const char* to_string(SolveStatus status);

using Point = std::pair<Int, Int>;

/// The congruence has no solution modulo `modulus`. `attained` lists the
/// residues of A x^2 + B x y + C y^2 + D x + E y (mod n) over all residue
/// pairs (only for n <= 64); `required` is -F mod n.
struct ModularObstruction {
  Int modulus;
  std::vector<std::int64_t> attained;
  Int required;
};

/// Evidence for a negative answer from the reduction-cycle decision.
struct CycleEvidence {
  BinaryForm form;           // primitive form whose representations were decided
  Int target = 0;            // value to be represented by `form`
  std::size_t cycle_length = 0;
  std::size_t roots_checked = 0;       // (g, T) candidates tried
  std::size_t orbits_found = 0;        // candidates equivalent to `form`
  std::size_t congruence_period = 0;   // orbit period modulo |disc|
  Int congruence_modulus = 0;
};

/// Affine map (x, y) -> M (x, y) + K that sends solutions to solutions.
struct AffineStep {
  Mat2 matrix;
  Int offset_x = 0, offset_y = 0;

  Point apply(const Point& p) const;
  Point apply_inverse(const Point& p) const;
};

/// A solution, and when the solution set is infinite, a step generating its
/// family in both directions.
struct SolutionFamily {
  Point base;
  std::optional<AffineStep> step;
  std::string note;
};

struct SolvabilityCertificate {
  SolveStatus status = SolveStatus::Unsolvable;
  QuadraticDiophantine equation;          // as given
  QuadraticDiophantine reduced_equation;  // divided by the content
  Int content = 1;
  ConicKind kind = ConicKind::Constant;
  std::string method;
  std::optional<Point> witness;
  std::optional<ModularObstruction> obstruction;
  std::optional<CycleEvidence> cycle;
  std::vector<SolutionFamily> fundamental_solutions;
  bool infinite = false;
  std::string detail;

  bool solvable() const { return status != SolveStatus::Unsolvable; }
};

struct SolveOptions {
  /// Moduli for the residue sieve; empty selects the default schedule.
  std::vector<std::int64_t> sieve_moduli;
  /// Prime powers exactly dividing 4|disc| up to this bound join the default
  /// schedule.
  std::int64_t sieve_disc_bound = 256;
  bool sieve = true;
};

/// Default sieve schedule: all prime powers <= 64, then prime powers
/// exactly dividing 4|disc| up to `disc_bound`, ascending.
std::vector<std::int64_t> default_sieve_moduli(const Int& disc, std::int64_t disc_bound);

/// Complete integral solvability decision with certificate.
SolvabilityCertificate solve(const QuadraticDiophantine& eq, const SolveOptions& options = {});

/// Exhaustive residue check over all n^2 pairs (n >= 2).
std::optional<ModularObstruction> modular_obstruction(const QuadraticDiophantine& eq,
                                                      std::int64_t modulus);

/// Nonzero (x, y) with q_L(x, y) = m for a rank-2 lattice L.
SolvabilityCertificate represents(const IntegerLattice& lattice, const Int& m,
                                  const SolveOptions& options = {});

struct IsotropyCertificate {
  bool isotropic = false;
  Int minus_det = 0; // -det(L); isotropic iff a perfect square
  std::optional<Point> witness;
};
IsotropyCertificate exists_isotropic(const IntegerLattice& lattice);

/// Least (x, y), x, y > 0, with x^2 - D y^2 = 1. D must be positive and
/// not a perfect square.
std::pair<Int, Int> pell_fundamental(const Int& d);

/// Canonical ordering key: smaller |y|, then smaller |x|, then x >= 0, then
/// y >= 0.
bool canonical_less(const Point& l, const Point& r);

} // namespace k3ent
