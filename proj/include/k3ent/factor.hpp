#pragma once

#include "k3ent/bigint.hpp"

#include <utility>
#include <vector>

namespace k3ent {

struct PrimePower {
  Int prime;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Deterministic for n < 3.3e24 (Miller-Rabin with the first 13 prime
/// bases); probabilistic beyond.
bool is_probable_prime(const Int& n);

/// Prime factorization of |n| (n != 0), primes ascending.
std::vector<PrimePower> factorize(const Int& n);

/// All positive divisors of |n|, ascending.
std::vector<Int> divisors(const Int& n);

/// All residues t in [0, m) with t^2 ≡ a (mod m), m >= 1, ascending.
std::vector<Int> sqrt_mod(const Int& a, const Int& m);

} // namespace k3ent
