#pragma once

#include "k3ent/diophantine.hpp"
#include "k3ent/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3ent {

enum class WallKind { BrillNoether, HilbertChow, LiGiesekerUhlenbeck, Flopping, Fake };

const char* to_string(WallKind kind);
bool divisorial(WallKind kind);

/// Kind plus the class (and for decompositions, its complement v - a)
/// that establishes it.
struct WallClass {
  WallKind kind = WallKind::Fake;
  std::optional<MukaiVector> a;
  std::optional<MukaiVector> b;
  std::string reason;
};

/// A solvable pair (m, k) = (a^2, <v, a>) in the admissible box.
struct WallCandidate {
  Int m;
  Int k;
  MukaiVector witness;                  // canonical solution
  std::vector<MukaiVector> alternates;  // one per further fundamental solution
  Sublattice saturated_h;               // saturation of <v, witness>
  bool hyperbolic = true;               // det of the span < 0
  SolvabilityCertificate certificate;
};

/// Outcome for one (m, k) in the admissible box, solvable or not.
struct PairDecision {
  Int m;
  Int k;
  bool gcd_excluded = false; // gcd of <v, .> does not divide k
  Int functional_gcd = 1;
  std::optional<SolvabilityCertificate> certificate;
};

struct Enumeration {
  MukaiVector v;
  Int v2;
  Sublattice v_perp;
  std::vector<PairDecision> pairs;     // sorted by (m, k)
  std::vector<WallCandidate> candidates;
};

/// Admissible pairs: even m with -2 <= m and 4m < v^2, 0 <= 2k <= v^2.
Enumeration enumerate_walls(const MukaiVector& v, const SolveOptions& options = {});
std::vector<WallCandidate> enumerate_candidates(const Int& d, const MukaiVector& v,
                                                const SolveOptions& options = {});

/// Classification of a rank-2 hyperbolic sublattice containing v.
WallClass classify(const Sublattice& h, const MukaiVector& v);

enum class WallStrength { Strict, Classified, Negative };
const char* to_string(WallStrength s);

struct ClassifiedWall {
  Int m;
  Int k;
  MukaiVector witness;
  std::optional<WallKind> direct; // condition met by the witness itself
  std::optional<WallClass> wall;   // empty for anomalies (non-hyperbolic span)
  Int span_det;
};

/// Condition of the classification met by a class with a^2 = m,
/// <v, a> = k on its own (the decomposition uses b = v - a).
std::optional<WallKind> direct_kind(const Int& m, const Int& k, const Int& v2);

struct WallVerdict {
  MukaiVector v;
  Int v2;
  Int dim;
  WallStrength strength = WallStrength::Negative;
  Enumeration enumeration;
  std::vector<ClassifiedWall> walls; // one per witness
  bool positive() const { return strength != WallStrength::Negative; }
};

WallVerdict all_walls_fake(const Int& d, const MukaiVector& v, const SolveOptions& options = {});

struct BoundaryVerdict {
  bool rational = false;
  IsotropyCertificate isotropy;
};

/// Rank-2 lattice of signature (1,1): the positive cone has rational
/// boundary rays iff there is an isotropic vector.
BoundaryVerdict nef_boundary_rationality(const IntegerLattice& n);

} // namespace k3ent
