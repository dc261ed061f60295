#pragma once

#include "k3ent/bigint.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <tuple>
#include <utility>
#include <vector>

namespace k3ent {

/// 2x2 integer matrix [[a, b], [c, d]] acting on column vectors.
struct Mat2 {
  Int a = 1, b = 0, c = 0, d = 1;

  static Mat2 identity() { return {}; }
  Int det() const { return a * d - b * c; }
  Int trace() const { return a + d; }
  /// Inverse of a determinant +-1 matrix.
  Mat2 inverse() const;
  std::pair<Int, Int> apply(const Int& x, const Int& y) const {
    return {a * x + b * y, c * x + d * y};
  }
  Mat2 mod(const Int& m) const;

  friend Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
            l.c * r.b + l.d * r.d};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 power(const Mat2& m, std::size_t e);

/// a x^2 + b x y + c y^2
struct BinaryForm {
  Int a, b, c;

  Int discriminant() const { return b * b - 4 * a * c; }
  Int evaluate(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }
  Int content() const { return gcd(gcd(a, b), c); }
  /// The form f(M(x, y)).
  BinaryForm act(const Mat2& m) const;

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
  friend bool operator<(const BinaryForm& l, const BinaryForm& r) {
    return std::tie(l.a, l.b, l.c) < std::tie(r.a, r.b, r.c);
  }
  friend std::ostream& operator<<(std::ostream& os, const BinaryForm& f) {
    return os << '(' << f.a << ',' << f.b << ',' << f.c << ')';
  }
};

/// Reduction theory for indefinite forms of positive non-square
/// discriminant. A form is reduced when 0 < b < sqrt(D) and
/// sqrt(D) - b < 2|a| < sqrt(D) + b.
bool is_reduced(const BinaryForm& f);

/// One step of the normalizing operator: returns f.act(step) with
/// step = [[0,-1],[1,s]].
BinaryForm rho(const BinaryForm& f, Mat2* step = nullptr);

struct Reduced {
  BinaryForm form;
  Mat2 transform; // input.act(transform) == form
};
Reduced reduce(const BinaryForm& f);

/// The cycle of reduced forms through a reduced form, closed under rho.
class FormCycle {
public:
  explicit FormCycle(const BinaryForm& reduced_start);

  std::size_t length() const noexcept { return forms_.size(); }
  const std::vector<BinaryForm>& forms() const noexcept { return forms_; }
  /// Proper automorph of the start form obtained by walking the full cycle,
  /// normalized to positive trace.
  const Mat2& cycle_automorph() const noexcept { return automorph_; }
  /// Index of g (reduced) in the cycle, with start.act(transform) == g.
  std::optional<std::pair<std::size_t, Mat2>> locate(const BinaryForm& g) const;

private:
  std::vector<BinaryForm> forms_;
  std::vector<Mat2> to_form_;
  std::map<BinaryForm, std::size_t> index_;
  Mat2 automorph_;
};

/// Proper equivalence test: returns T with f.act(T) == g, det T = 1.
std::optional<Mat2> proper_equivalence(const BinaryForm& f, const BinaryForm& g);

/// Least (t, u), t, u > 0, with t^2 - D u^2 = 4 for D > 0 non-square,
/// D ≡ 0,1 (mod 4). Derived from the fundamental Pell solution.
std::pair<Int, Int> fundamental_unit_solution(const Int& disc);

/// Generator (up to sign) of the proper automorphs of a primitive form:
/// [[(t - b u)/2, -c u], [a u, (t + b u)/2]].
Mat2 fundamental_automorph(const BinaryForm& primitive_form);

} // namespace k3ent
