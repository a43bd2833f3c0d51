#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "xrank/algebraic.hpp"
#include "xrank/poly.hpp"
#include "xrank/rational.hpp"

namespace xrank {

/// Dense row-major matrix over an exact scalar.
template <class K>
class Matrix {
 public:
  Matrix() : r_(0), c_(0) {}
  Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, K()) {}
  Matrix(size_t rows, size_t cols, std::vector<K> data)
      : r_(rows), c_(cols), a_(std::move(data)) {
    if (a_.size() != rows * cols) throw std::invalid_argument("Matrix: size mismatch");
  }
  static Matrix from_rows(const std::vector<std::vector<K>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.c_) throw std::invalid_argument("Matrix: ragged rows");
      for (size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<K>::from_rat(Rat(1));
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  K& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const K& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  std::vector<K> row(size_t i) const {
    return std::vector<K>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
  }
  void swap_rows(size_t i, size_t j) {
    for (size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  Matrix with_extra_row(const std::vector<K>& v) const {
    if (v.size() != c_) throw std::invalid_argument("Matrix: row length mismatch");
    Matrix m(r_ + 1, c_);
    m.a_ = a_;
    m.a_.insert(m.a_.end(), v.begin(), v.end());
    return m;
  }
  Matrix transposed() const {
    Matrix m(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

 private:
  size_t r_, c_;
  std::vector<K> a_;
};

template <class K>
K exact_div(const K& a, const K& b) {
  return a / b;
}

inline Poly<Rat> exact_div(const Poly<Rat>& a, const Poly<Rat>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_div: inexact polynomial division");
  return q;
}

namespace detail {

/// Reduced row echelon form by Gauss-Jordan with exact division. Pivot rule:
/// scan columns left to right, take the first row with a nonzero entry.
/// Returns the pivot columns. Over Q[t]/(m) the zero tests may split.
template <class K>
std::vector<size_t> rref_in_place(Matrix<K>& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t sel = row;
    bool found = false;
    for (; sel < m.rows(); ++sel) {
      if (!m(sel, col).is_zero()) {
        found = true;
        break;
      }
    }
    if (!found) continue;
    if (sel != row) m.swap_rows(sel, row);
    K inv = m(row, col).inverse();
    for (size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      K f = m(i, col);
      if (f.is_zero()) continue;
      for (size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Fraction-free Bareiss elimination over the integers; returns the rank.
/// Same first-nonzero pivot rule as rref_in_place.
inline size_t bareiss_rank(std::vector<std::vector<mpz_class>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  mpz_class prev(1);
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t sel = row;
    bool found = false;
    for (; sel < rows; ++sel) {
      if (m[sel][col] != 0) {
        found = true;
        break;
      }
    }
    if (!found) continue;
    if (sel != row) std::swap(m[sel], m[row]);
    const mpz_class pivot = m[row][col];
    for (size_t i = row + 1; i < rows; ++i) {
      for (size_t j = col + 1; j < cols; ++j) {
        mpz_class t = m[i][j] * pivot - m[i][col] * m[row][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][col] = 0;
    }
    prev = pivot;
    ++row;
  }
  return row;
}

/// Bareiss elimination over an arbitrary integral domain (exact division by
/// the previous pivot); returns the rank over the fraction field.
template <class K>
size_t bareiss_rank_domain(Matrix<K> m) {
  const size_t rows = m.rows(), cols = m.cols();
  K prev = scalar_traits<K>::from_rat(Rat(1));
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t sel = row;
    bool found = false;
    for (; sel < rows; ++sel) {
      if (!m(sel, col).is_zero()) {
        found = true;
        break;
      }
    }
    if (!found) continue;
    if (sel != row) m.swap_rows(sel, row);
    const K pivot = m(row, col);
    for (size_t i = row + 1; i < rows; ++i) {
      for (size_t j = col + 1; j < cols; ++j) {
        K t = m(i, j) * pivot - m(i, col) * m(row, j);
        m(i, j) = exact_div(t, prev);
      }
      m(i, col) = K();
    }
    prev = pivot;
    ++row;
  }
  return row;
}

/// Clears denominators row by row (row scaling leaves rank and right kernel
/// unchanged).
inline std::vector<std::vector<mpz_class>> to_int_rows(const Matrix<Rat>& m) {
  std::vector<std::vector<mpz_class>> out(m.rows(), std::vector<mpz_class>(m.cols()));
  for (size_t i = 0; i < m.rows(); ++i) {
    mpz_class l(1);
    for (size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).den().get_mpz_t());
    for (size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).num() * (l / m(i, j).den());
  }
  return out;
}

}  // namespace detail

/// Rank over the fraction field. Rationals go through fraction-free Bareiss
/// elimination; other scalar domains use plain Gaussian elimination.
template <class K>
size_t matrix_rank(const Matrix<K>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if constexpr (std::is_same_v<K, Rat>) {
    return detail::bareiss_rank(detail::to_int_rows(m));
  } else if constexpr (std::is_same_v<K, Poly<Rat>>) {
    return detail::bareiss_rank_domain(m);
  } else {
    Matrix<K> w = m;
    return detail::rref_in_place(w).size();
  }
}

/// Canonical basis of the right kernel: from the reduced echelon form, each
/// free column in column order yields one basis vector with a 1 there.
template <class K>
std::vector<std::vector<K>> kernel_basis(const Matrix<K>& m) {
  const K one = scalar_traits<K>::from_rat(Rat(1));
  Matrix<K> w = m;
  std::vector<size_t> pivots = detail::rref_in_place(w);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> basis;
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> v(m.cols(), K());
    v[f] = one;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -w(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// True iff v lies in the row span of basis.
template <class K>
bool span_contains(const std::vector<std::vector<K>>& basis, const std::vector<K>& v) {
  if (basis.empty()) {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }
  Matrix<K> b = Matrix<K>::from_rows(basis);
  if (v.size() != b.cols()) throw std::invalid_argument("span_contains: length mismatch");
  return matrix_rank(b) == matrix_rank(b.with_extra_row(v));
}

/// Solves A x = b exactly; returns nothing when inconsistent. When the system
/// is underdetermined the canonical solution sets all free variables to 0.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& a, const std::vector<K>& b) {
  Matrix<K> aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<size_t> pivots = detail::rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<K> x(a.cols(), K());
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
  return x;
}

/// Determinant of a square matrix over an integral domain by fraction-free
/// Bareiss elimination (exact division only).
template <class K>
K bareiss_det(Matrix<K> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("bareiss_det: not square");
  size_t n = m.rows();
  const K one = scalar_traits<K>::from_rat(Rat(1));
  if (n == 0) return one;
  K prev = one;
  int sign = 1;
  for (size_t col = 0; col + 1 < n; ++col) {
    size_t sel = col;
    bool found = false;
    for (; sel < n; ++sel) {
      if (!m(sel, col).is_zero()) {
        found = true;
        break;
      }
    }
    if (!found) return K();
    if (sel != col) {
      m.swap_rows(sel, col);
      sign = -sign;
    }
    const K pivot = m(col, col);
    for (size_t i = col + 1; i < n; ++i) {
      for (size_t j = col + 1; j < n; ++j) {
        K t = m(i, j) * pivot - m(i, col) * m(col, j);
        m(i, j) = exact_div(t, prev);
      }
      m(i, col) = K();
    }
    prev = pivot;
  }
  K d = m(n - 1, n - 1);
  return sign < 0 ? -d : d;
}

}  // namespace xrank
