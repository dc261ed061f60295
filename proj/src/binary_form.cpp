#include "k3ent/binary_form.hpp"

#include "k3ent/diophantine.hpp"
#include "k3ent/errors.hpp"

namespace k3ent {

Mat2 Mat2::inverse() const {
  Int dt = det();
  require(dt == 1 || dt == -1, "Mat2::inverse: determinant is not +-1");
  return {d * dt, -b * dt, -c * dt, a * dt};
}

Mat2 Mat2::mod(const Int& m) const {
  return {mod_floor(a, m), mod_floor(b, m), mod_floor(c, m), mod_floor(d, m)};
}

Mat2 power(const Mat2& m, std::size_t e) {
  Mat2 result = Mat2::identity();
  Mat2 base = m;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

BinaryForm BinaryForm::act(const Mat2& m) const {
  // f(a x + b y, c x + d y)
  return {evaluate(m.a, m.c), 2 * a * m.a * m.b + b * (m.a * m.d + m.b * m.c) + 2 * c * m.c * m.d,
          evaluate(m.b, m.d)};
}

namespace {

void require_indefinite(const BinaryForm& f) {
  Int disc = f.discriminant();
  require(disc > 0 && !is_square(disc), "indefinite form reduction needs a positive non-square discriminant");
}

} // namespace

bool is_reduced(const BinaryForm& f) {
  Int s = isqrt(f.discriminant());
  Int twice_a = 2 * abs(f.a);
  return f.b > 0 && f.b <= s && twice_a + f.b > s && twice_a - f.b <= s;
}

BinaryForm rho(const BinaryForm& f, Mat2* step) {
  Int disc = f.discriminant();
  Int s = isqrt(disc);
  Int two_c = 2 * abs(f.c);
  Int r;
  if (abs(f.c) <= s) {
    r = s - mod_floor(s + f.b, two_c); // r ≡ -b, sqrt(D) - 2|c| < r < sqrt(D)
  } else {
    r = mod_floor(-f.b, two_c); // r ≡ -b, -|c| < r <= |c|
    if (r > abs(f.c)) r -= two_c;
  }
  Int shift = (r + f.b) / (2 * f.c);
  ensure(shift * 2 * f.c == r + f.b, "rho: inexact shift");
  BinaryForm out{f.c, r, (r * r - disc) / (4 * f.c)};
  ensure(out.discriminant() == disc, "rho: discriminant changed");
  if (step) *step = Mat2{0, -1, 1, shift};
  return out;
}

Reduced reduce(const BinaryForm& f) {
  require_indefinite(f);
  Reduced out{f, Mat2::identity()};
  for (std::size_t guard = 0; !is_reduced(out.form); ++guard) {
    ensure(guard < 100000, "reduce: no reduced form reached");
    Mat2 step;
    out.form = rho(out.form, &step);
    out.transform = out.transform * step;
  }
  return out;
}

FormCycle::FormCycle(const BinaryForm& start) {
  require_indefinite(start);
  require(is_reduced(start), "FormCycle: start form is not reduced");
  BinaryForm current = start;
  Mat2 acc = Mat2::identity();
  do {
    index_.emplace(current, forms_.size());
    forms_.push_back(current);
    to_form_.push_back(acc);
    Mat2 step;
    current = rho(current, &step);
    acc = acc * step;
    ensure(forms_.size() < 10000000, "FormCycle: cycle did not close");
  } while (!(current == start));
  automorph_ = acc.trace() < 0 ? Mat2{-acc.a, -acc.b, -acc.c, -acc.d} : acc;
  ensure(start.act(automorph_) == start, "FormCycle: cycle product is not an automorph");
}

std::optional<std::pair<std::size_t, Mat2>> FormCycle::locate(const BinaryForm& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return std::make_pair(it->second, to_form_[it->second]);
}

std::optional<Mat2> proper_equivalence(const BinaryForm& f, const BinaryForm& g) {
  if (f.discriminant() != g.discriminant()) return std::nullopt;
  Reduced rf = reduce(f);
  Reduced rg = reduce(g);
  FormCycle cycle(rf.form);
  auto hit = cycle.locate(rg.form);
  if (!hit) return std::nullopt;
  Mat2 t = rf.transform * hit->second * rg.transform.inverse();
  ensure(f.act(t) == g, "proper_equivalence: transform check failed");
  return t;
}

std::pair<Int, Int> fundamental_unit_solution(const Int& disc) {
  require(disc > 0 && !is_square(disc), "unit solution: discriminant must be positive non-square");
  Int r = mod_floor(disc, 4);
  require(r == 0 || r == 1, "unit solution: discriminant must be 0 or 1 mod 4");
  if (r == 0) {
    auto [p, q] = pell_fundamental(disc / 4);
    return {2 * p, q};
  }
  auto [p, q] = pell_fundamental(disc);
  // An odd solution eps = (t + u sqrt(D))/2 exists iff eps^3 = p + q sqrt(D);
  // then t^3 - 3t = 2p.
  Int t = iroot(2 * p, 3);
  for (Int cand = t; cand <= t + 2; ++cand) {
    if (cand * cand * cand - 3 * cand != 2 * p) continue;
    Int num = cand * cand - 4;
    if (num % disc != 0) continue;
    Int u2 = num / disc;
    if (!is_square(u2)) continue;
    return {cand, isqrt(u2)};
  }
  return {2 * p, 2 * q};
}

Mat2 fundamental_automorph(const BinaryForm& f) {
  require(f.content() == 1, "fundamental_automorph: form must be primitive");
  auto [t, u] = fundamental_unit_solution(f.discriminant());
  Mat2 m{(t - f.b * u) / 2, -f.c * u, f.a * u, (t + f.b * u) / 2};
  ensure(m.det() == 1 && f.act(m) == f, "fundamental_automorph: not an automorph");
  return m;
}

} // namespace k3ent
