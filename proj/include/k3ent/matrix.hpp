#pragma once

#include "k3ent/bigint.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <vector>

namespace k3ent {

/// Dense row-major matrix over the integers.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);
  static IntMatrix identity(std::size_t n);
  /// Builds a matrix whose rows are the given vectors (all of equal length).
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector col(std::size_t j) const;
  std::vector<IntVector> row_vectors() const;

  IntMatrix transpose() const;
  bool symmetric() const;
  Int trace() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& x);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

Int dot(const IntVector& a, const IntVector& b);

/// Exact determinant (fraction-free Bareiss elimination).
Int determinant(const IntMatrix& m);

/// Characteristic polynomial det(xI - M), coefficients low to high degree
/// (monic, size n+1). Faddeev-LeVerrier with exact divisions.
IntVector characteristic_polynomial(const IntMatrix& m);

/// Row Hermite normal form. Returns H and unimodular U with U*A = H; nonzero
/// rows of H come first, pivots are positive, and entries above a pivot lie
/// in [0, pivot).
struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
  std::size_t rank = 0;
};
HermiteForm hermite_normal_form(const IntMatrix& a);

/// Nonzero invariant factors d1 | d2 | ... of the Smith normal form.
IntVector smith_invariants(const IntMatrix& a);

/// Basis (rows, in Hermite normal form) of {x in Z^n : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// Primitive closure (Q-span intersected with Z^n) of the row span of B;
/// rows of B independent. Result in Hermite normal form.
IntMatrix saturate_rows(const IntMatrix& b);

/// Rank over Q.
std::size_t rank(const IntMatrix& m);

/// Exact solution of M x = b over Q when M is square and invertible;
/// returns nullopt if the solution is not integral.
std::optional<IntVector> solve_integral(const IntMatrix& m, const IntVector& b);

} // namespace k3ent
