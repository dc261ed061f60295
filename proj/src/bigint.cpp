#include "k3ent/bigint.hpp"

#include "k3ent/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <limits>

namespace k3ent {

namespace mp = boost::multiprecision;

Int floor_div(const Int& a, const Int& b) {
  require(b != 0, "floor_div: division by zero");
  Int q = a / b; // truncates toward zero
  Int r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

Int mod_floor(const Int& a, const Int& m) {
  require(m != 0, "mod_floor: zero modulus");
  Int mm = m < 0 ? Int(-m) : m;
  Int r = a % mm;
  if (r < 0) r += mm;
  return r;
}

Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

Int gcd(const Int& a, const Int& b) { return mp::gcd(abs(a), abs(b)); }

Int gcd(const IntVector& values) {
  Int g = 0;
  for (const auto& v : values) {
    g = gcd(g, v);
    if (g == 1) break;
  }
  return g;
}

Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

Int isqrt(const Int& n) {
  require(n >= 0, "isqrt: negative argument");
  return mp::sqrt(n);
}

bool is_square(const Int& n) {
  if (n < 0) return false;
  Int s = mp::sqrt(n);
  return s * s == n;
}

Int iroot(const Int& n, unsigned k) {
  require(n >= 0 && k >= 1, "iroot: invalid argument");
  if (k == 1 || n < 2) return n;
  // Newton iteration from an upper bound.
  unsigned bits = static_cast<unsigned>(mp::msb(n)) + 1;
  Int x = Int(1) << ((bits + k - 1) / k);
  while (true) {
    Int y = ((k - 1) * x + n / pow(x, k - 1)) / k;
    if (y >= x) break;
    x = y;
  }
  while (pow(x, k) > n) --x;
  while (pow(x + 1, k) <= n) ++x;
  return x;
}

ExtendedGcd extended_gcd(const Int& a, const Int& b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

std::optional<Int> mod_inverse(const Int& a, const Int& m) {
  auto eg = extended_gcd(mod_floor(a, m), abs(m));
  if (eg.g != 1) return std::nullopt;
  return mod_floor(eg.x, m);
}

Int pow(const Int& base, unsigned exponent) { return mp::pow(base, exponent); }

bool fits_int64(const Int& a) {
  return a >= std::numeric_limits<std::int64_t>::min() &&
         a <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t to_int64(const Int& a) {
  ensure(fits_int64(a), "integer does not fit in 64 bits: " + a.str());
  return a.convert_to<std::int64_t>();
}

Int parse_int(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  require(!body.empty(), "not an integer: '" + std::string(text) + "'");
  for (char c : body) {
    require(c >= '0' && c <= '9', "not an integer: '" + std::string(text) + "'");
  }
  Int value{std::string(body)};
  return negative ? Int(-value) : value;
}

std::string to_string(const Int& a) { return a.str(); }

int sign(const Int& a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }

} // namespace k3ent
