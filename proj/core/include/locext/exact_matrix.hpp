#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "locext/gaussian_rational.hpp"

namespace locext {

using ExactVector = std::vector<GaussianRational>;

/// Dense row-major matrix over the Gaussian rationals.
///
/// The shape is fixed at construction. `hermitian_hint()` is only ever set
/// after an exact check, and any mutable element access drops it.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::initializer_list<std::initializer_list<GaussianRational>> rows);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix diagonal(const ExactVector& diag);
  /// |u><v| for column vectors u, v.
  static ExactMatrix outer(const ExactVector& u, const ExactVector& v);
  static ExactMatrix from_columns(const std::vector<ExactVector>& columns, std::size_t rows);
  static ExactMatrix from_rows(const std::vector<ExactVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const GaussianRational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  GaussianRational& operator()(std::size_t i, std::size_t j) {
    hermitian_hint_ = false;
    return data_[i * cols_ + j];
  }
  const GaussianRational& at(std::size_t i, std::size_t j) const;

  bool hermitian_hint() const { return hermitian_hint_; }
  /// Verifies Hermiticity exactly and records the hint; returns the verdict.
  bool mark_hermitian();
  bool is_hermitian() const;
  bool is_zero() const;
  bool is_real() const;

  ExactMatrix adjoint() const;
  ExactMatrix transpose() const;
  ExactMatrix conj() const;
  GaussianRational trace() const;

  ExactVector column(std::size_t j) const;
  ExactVector row(std::size_t i) const;
  /// Submatrix with the given row and column index lists.
  ExactMatrix select(const std::vector<std::size_t>& row_idx,
                     const std::vector<std::size_t>& col_idx) const;

  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  ExactMatrix& operator*=(const GaussianRational& s);

  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
  friend ExactMatrix operator*(ExactMatrix a, const GaussianRational& s) { return a *= s; }
  friend ExactMatrix operator*(const GaussianRational& s, ExactMatrix a) { return a *= s; }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactVector operator*(const ExactMatrix& a, const ExactVector& v);

  /// Entry-wise equality; the hint does not participate.
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<GaussianRational>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianRational> data_;
  bool hermitian_hint_ = false;
};

/// Kronecker product a (x) b.
ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b);
ExactVector kron(const ExactVector& a, const ExactVector& b);

/// <u|v> = sum conj(u_i) v_i.
GaussianRational inner(const ExactVector& u, const ExactVector& v);
ExactVector conj(const ExactVector& v);
ExactVector scaled(const ExactVector& v, const GaussianRational& s);
ExactVector add(const ExactVector& a, const ExactVector& b);
ExactVector sub(const ExactVector& a, const ExactVector& b);
bool is_zero(const ExactVector& v);
ExactVector unit_vector(std::size_t dim, std::size_t index);

}  // namespace locext
