#include "k3ent/matrix.hpp"

#include "k3ent/errors.hpp"

#include <algorithm>
#include <utility>

namespace k3ent {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "IntMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, "IntMatrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t j) const {
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

std::vector<IntVector> IntMatrix::row_vectors() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::symmetric() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Int IntMatrix::trace() const {
  Int t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require(a.cols_ == b.rows_, "matrix product: shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
  require(a.cols_ == x.size(), "matrix-vector product: shape mismatch");
  IntVector y(a.rows_, Int(0));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
  return y;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix sum: shape mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix c = a;
  for (auto& x : c.data_) x = -x;
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.cols_; ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << ']';
  }
  return os << ']';
}

Int dot(const IntVector& a, const IntVector& b) {
  require(a.size() == b.size(), "dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int determinant(const IntMatrix& input) {
  require(input.square(), "determinant: matrix not square");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntVector characteristic_polynomial(const IntMatrix& a) {
  require(a.square(), "characteristic_polynomial: matrix not square");
  const std::size_t n = a.rows();
  IntVector c(n + 1, Int(0));
  c[n] = 1;
  IntMatrix mk(n, n); // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    Int tr = (a * mk).trace();
    ensure(tr % static_cast<long>(k) == 0, "Faddeev-LeVerrier: inexact division");
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

// row_dst -= q * row_src
void sub_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

} // namespace

HermiteForm hermite_normal_form(const IntMatrix& a) {
  HermiteForm out{a, IntMatrix::identity(a.rows()), 0};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  std::size_t pivot_row = 0;
  for (std::size_t j = 0; j < h.cols() && pivot_row < h.rows(); ++j) {
    while (true) {
      // Smallest nonzero entry in column j at or below pivot_row.
      std::size_t best = h.rows();
      for (std::size_t i = pivot_row; i < h.rows(); ++i) {
        if (h(i, j) != 0 && (best == h.rows() || abs(h(i, j)) < abs(h(best, j)))) best = i;
      }
      if (best == h.rows()) break;
      swap_rows(h, pivot_row, best);
      swap_rows(u, pivot_row, best);
      bool cleared = true;
      for (std::size_t i = pivot_row + 1; i < h.rows(); ++i) {
        if (h(i, j) == 0) continue;
        Int q = floor_div(h(i, j), h(pivot_row, j));
        sub_row(h, i, pivot_row, q);
        sub_row(u, i, pivot_row, q);
        if (h(i, j) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h(pivot_row, j) == 0) continue;
    if (h(pivot_row, j) < 0) {
      negate_row(h, pivot_row);
      negate_row(u, pivot_row);
    }
    for (std::size_t i = 0; i < pivot_row; ++i) {
      Int q = floor_div(h(i, j), h(pivot_row, j));
      sub_row(h, i, pivot_row, q);
      sub_row(u, i, pivot_row, q);
    }
    ++pivot_row;
  }
  out.rank = pivot_row;
  return out;
}

IntVector smith_invariants(const IntMatrix& input) {
  IntMatrix m = input;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntVector out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Bring the smallest nonzero entry of the trailing block to (t, t).
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m(i, j) != 0 && (bi == rows || abs(m(i, j)) < abs(m(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == rows) break;
    swap_rows(m, t, bi);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, t), m(i, bj));

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        Int q = m(i, t) / m(t, t);
        sub_row(m, i, t, q);
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        Int q = m(t, j) / m(t, t);
        for (std::size_t i = 0; i < rows; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row/column t onto the pivot.
        std::size_t si = t, sj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (m(i, t) != 0 && abs(m(i, t)) < abs(m(si, sj))) { si = i; sj = t; }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(t, j) != 0 && abs(m(t, j)) < abs(m(si, sj))) { si = t; sj = j; }
        swap_rows(m, t, si);
        for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, t), m(i, sj));
        continue;
      }
      // Divisibility: every trailing entry must be a multiple of the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            for (std::size_t c = 0; c < cols; ++c) m(t, c) += m(i, c);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    out.push_back(abs(m(t, t)));
  }
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  HermiteForm hf = hermite_normal_form(m.transpose());
  std::vector<IntVector> basis;
  for (std::size_t i = hf.rank; i < n; ++i) basis.push_back(hf.u.row(i));
  if (basis.empty()) return IntMatrix(0, n);
  HermiteForm canon = hermite_normal_form(IntMatrix::from_rows(basis, n));
  IntMatrix out(canon.rank, n);
  for (std::size_t i = 0; i < canon.rank; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = canon.h(i, j);
  return out;
}

IntMatrix saturate_rows(const IntMatrix& b) {
  const std::size_t n = b.cols();
  require(rank(b) == b.rows(), "saturate: basis vectors are dependent");
  IntMatrix orth = integer_kernel(b);
  if (orth.rows() == 0) return IntMatrix::identity(n);
  return integer_kernel(orth);
}

std::size_t rank(const IntMatrix& m) { return hermite_normal_form(m).rank; }

std::optional<IntVector> solve_integral(const IntMatrix& m, const IntVector& b) {
  require(m.square() && m.rows() == b.size(), "solve_integral: shape mismatch");
  Int det = determinant(m);
  require(det != 0, "solve_integral: singular matrix");
  IntVector x(b.size());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    IntMatrix mj = m;
    for (std::size_t i = 0; i < m.rows(); ++i) mj(i, j) = b[i];
    Int num = determinant(mj);
    if (num % det != 0) return std::nullopt;
    x[j] = num / det;
  }
  return x;
}

} // namespace k3ent
