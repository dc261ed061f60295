#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace k3ent {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Int>;

/// Floor division, b != 0.
Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
/// Least non-negative residue of a modulo |m|.
Int mod_floor(const Int& a, const Int& m);

Int abs(const Int& a);
Int gcd(const Int& a, const Int& b);
Int gcd(const IntVector& values);
Int lcm(const Int& a, const Int& b);

/// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);
bool is_square(const Int& n);
/// Integer k-th root floor for n >= 0.
Int iroot(const Int& n, unsigned k);

struct ExtendedGcd {
  Int g; // non-negative
  Int x;
  Int y; // a*x + b*y = g
};
ExtendedGcd extended_gcd(const Int& a, const Int& b);

/// Inverse of a modulo m (m > 1), if it exists.
std::optional<Int> mod_inverse(const Int& a, const Int& m);

Int pow(const Int& base, unsigned exponent);

bool fits_int64(const Int& a);
std::int64_t to_int64(const Int& a);

/// Parses an optionally signed decimal integer; throws InvalidInput.
Int parse_int(std::string_view text);
std::string to_string(const Int& a);

int sign(const Int& a);

} // namespace k3ent
