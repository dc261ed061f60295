#pragma once

#include "k3ent/diophantine.hpp"
#include "k3ent/entropy.hpp"
#include "k3ent/factor.hpp"
#include "k3ent/walls.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3ent {

/// d > 6 and d = 0, 2 mod 6.
bool check_star(const Int& d);

struct Star2Evidence {
  bool holds = false;
  std::vector<PrimePower> factorization;
  std::string reason;
};

/// d not divisible by 4, by 9, or by any odd prime p = 2 mod 3.
Star2Evidence check_star2(const Int& d);

struct Star3Result {
  SolvabilityCertificate certificate;  // variables (x, y) = (n, a)
  std::optional<std::pair<Int, Int>> witness;  // (a, n)
};

/// a^2 d = 2n^2 + 2n + 2, solved as 2n^2 + 2n + 2 - d a^2 = 0.
Star3Result check_star3(const Int& d, const SolveOptions& options = {});

/// Gram matrix on (l1, l2, tau); requires check_star(d).
IntMatrix knum_gram(const Int& d);

struct FanoNs {
  IntMatrix basis;  // rows in (l1, l2, tau) coordinates
  IntMatrix gram;   // negated restriction to the orthogonal complement of l1
};

FanoNs fano_ns(const Int& d);
IntMatrix fano_ns_gram(const Int& d);

struct FanoVerdict {
  Int d;
  bool star = false;
  Star2Evidence star2;
  Star3Result star3;
  IntMatrix knum;
  Int knum_det;
  FanoNs ns;
  IsotropyCertificate isotropy;
  std::optional<SolvabilityCertificate> minus_two;  // represents(ns, -2)
  std::optional<BoundaryVerdict> boundary;
  std::optional<FundamentalIsometry> isometry;
  bool positive = false;
  bool exploratory = true;  // only d = 74 has a proof behind it
  std::string reason;
};

FanoVerdict fano_positive_entropy(const Int& d, const SolveOptions& options = {});

struct CubicScanRow {
  Int d;
  bool star2 = false;
  bool star3 = false;
  std::optional<std::pair<Int, Int>> witness;  // (a, n)
  std::string method;
};

/// All d in [8, max_d] with check_star(d).
std::vector<CubicScanRow> cubic_scan(const Int& max_d, const SolveOptions& options = {});

} // namespace k3ent
