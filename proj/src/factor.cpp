#include "k3ent/factor.hpp"

#include "k3ent/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <map>

namespace k3ent {

namespace mp = boost::multiprecision;

namespace {

constexpr unsigned kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

Int powm(const Int& b, const Int& e, const Int& m) { return mp::powm(b, e, m); }

Int pollard_brent(const Int& n) {
  if (n % 2 == 0) return 2;
  for (Int c = 1;; ++c) {
    Int y = 2, x = 2, g = 1, q = 1, ys;
    std::size_t r = 1;
    constexpr std::size_t m = 128;
    auto f = [&](const Int& v) { return (v * v + c) % n; };
    do {
      x = y;
      for (std::size_t i = 0; i < r; ++i) y = f(y);
      std::size_t k = 0;
      do {
        ys = y;
        for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(x - y)) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Int d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

// Roots of t^2 ≡ a mod p^e by digit-wise lifting; used for p = 2 and for
// primes dividing a, where Hensel lifting is not unique.
std::vector<Int> sqrt_mod_prime_power_lift(const Int& a, const Int& p, unsigned e) {
  std::vector<Int> roots;
  Int am = mod_floor(a, p);
  for (Int t = 0; t < p; ++t)
    if ((t * t - am) % p == 0) roots.push_back(t);
  Int pk = p;
  for (unsigned k = 1; k < e; ++k) {
    Int next_mod = pk * p;
    std::vector<Int> next;
    for (const auto& t : roots)
      for (Int i = 0; i < p; ++i) {
        Int c = t + i * pk;
        if ((c * c - a) % next_mod == 0) next.push_back(c);
      }
    roots = std::move(next);
    pk = next_mod;
    if (roots.empty()) break;
  }
  return roots;
}

Int tonelli_shanks(const Int& a, const Int& p) {
  // p odd prime, a a nonzero quadratic residue.
  if (p % 4 == 3) return powm(a, (p + 1) / 4, p);
  Int q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (powm(z, (p - 1) / 2, p) != p - 1) ++z;
  Int m = s, c = powm(z, q, p), t = powm(a, q, p), r = powm(a, (q + 1) / 2, p);
  while (t != 1) {
    Int i = 0, tt = t;
    while (tt != 1) {
      tt = (tt * tt) % p;
      ++i;
    }
    Int b = c;
    for (Int j = 0; j < m - i - 1; ++j) b = (b * b) % p;
    m = i;
    c = (b * b) % p;
    t = (t * c) % p;
    r = (r * b) % p;
  }
  return r;
}

std::vector<Int> sqrt_mod_prime_power(const Int& a, const Int& p, unsigned e) {
  if (p == 2 || a % p == 0) return sqrt_mod_prime_power_lift(a, p, e);
  Int am = mod_floor(a, p);
  if (powm(am, (p - 1) / 2, p) != 1) return {};
  Int r = tonelli_shanks(am, p);
  Int pk = p;
  for (unsigned k = 1; k < e; ++k) {
    Int next_mod = pk * p;
    // Hensel: r <- r - (r^2 - a) / (2r) mod p^(k+1)
    Int inv = *mod_inverse(2 * r, next_mod);
    r = mod_floor(r - (r * r - a) * inv, next_mod);
    pk = next_mod;
  }
  std::vector<Int> roots{r, mod_floor(-r, pk)};
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

} // namespace

bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (unsigned base : kSmallPrimes) {
    Int x = powm(Int(base), d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = (x * x) % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(const Int& n) {
  require(n != 0, "factorize: zero");
  Int m = abs(n);
  std::map<Int, unsigned> acc;
  for (unsigned p = 2; p < 1000 && m > 1; p += (p == 2 ? 1 : 2)) {
    while (m % p == 0) {
      m /= p;
      ++acc[Int(p)];
    }
    if (Int(p) * p > m) break;
  }
  if (m > 1) factor_into(m, acc);
  std::vector<PrimePower> out;
  for (auto& [p, e] : acc) out.push_back({p, e});
  return out;
}

std::vector<Int> divisors(const Int& n) {
  std::vector<Int> out{1};
  for (const auto& pp : factorize(n)) {
    const std::size_t base = out.size();
    Int power = 1;
    for (unsigned k = 1; k <= pp.exponent; ++k) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Int> sqrt_mod(const Int& a, const Int& m) {
  require(m >= 1, "sqrt_mod: modulus must be positive");
  if (m == 1) return {Int(0)};
  std::vector<Int> roots{Int(0)};
  Int modulus = 1;
  for (const auto& pp : factorize(m)) {
    Int pe = pow(pp.prime, pp.exponent);
    auto local = sqrt_mod_prime_power(a, pp.prime, pp.exponent);
    if (local.empty()) return {};
    // CRT combine.
    Int inv = *mod_inverse(modulus, pe);
    std::vector<Int> next;
    next.reserve(roots.size() * local.size());
    for (const auto& r : roots)
      for (const auto& l : local) next.push_back(r + modulus * mod_floor((l - r) * inv, pe));
    modulus *= pe;
    roots = std::move(next);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

} // namespace k3ent
