#include "locext/exact_matrix.hpp"

#include <string>

#include "locext/errors.hpp"

namespace locext {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<GaussianRational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  m.hermitian_hint_ = true;
  return m;
}

ExactMatrix ExactMatrix::diagonal(const ExactVector& diag) {
  const std::size_t n = diag.size();
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = diag[i];
  return m;
}

ExactMatrix ExactMatrix::outer(const ExactVector& u, const ExactVector& v) {
  ExactMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) m.data_[i * v.size() + j] = u[i] * v[j].conj();
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<ExactVector>& columns, std::size_t rows) {
  ExactMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw Error(ErrorKind::DimensionMismatch, "column length");
    for (std::size_t i = 0; i < rows; ++i) m.data_[i * columns.size() + j] = columns[j][i];
  }
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<ExactVector>& rows, std::size_t cols) {
  ExactMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "row length");
    for (std::size_t j = 0; j < cols; ++j) m.data_[i * cols + j] = rows[i][j];
  }
  return m;
}

const GaussianRational& ExactMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_)
    throw Error(ErrorKind::BoundsViolation,
                "entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                    std::to_string(rows_) + "x" + std::to_string(cols_));
  return data_[i * cols_ + j];
}

bool ExactMatrix::is_hermitian() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i).conj()) return false;
  return true;
}

bool ExactMatrix::mark_hermitian() {
  hermitian_hint_ = is_hermitian();
  return hermitian_hint_;
}

bool ExactMatrix::is_zero() const {
  for (const auto& z : data_)
    if (!z.is_zero()) return false;
  return true;
}

bool ExactMatrix::is_real() const {
  for (const auto& z : data_)
    if (!z.is_real()) return false;
  return true;
}

ExactMatrix ExactMatrix::adjoint() const {
  ExactMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.data_[j * rows_ + i] = (*this)(i, j).conj();
  m.hermitian_hint_ = hermitian_hint_;
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.data_[j * rows_ + i] = (*this)(i, j);
  m.hermitian_hint_ = hermitian_hint_;
  return m;
}

ExactMatrix ExactMatrix::conj() const {
  ExactMatrix m = *this;
  for (auto& z : m.data_) z = z.conj();
  return m;
}

GaussianRational ExactMatrix::trace() const {
  GaussianRational t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ExactVector ExactMatrix::column(std::size_t j) const {
  ExactVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

ExactVector ExactMatrix::row(std::size_t i) const {
  return ExactVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

ExactMatrix ExactMatrix::select(const std::vector<std::size_t>& row_idx,
                                const std::vector<std::size_t>& col_idx) const {
  ExactMatrix m(row_idx.size(), col_idx.size());
  for (std::size_t a = 0; a < row_idx.size(); ++a)
    for (std::size_t b = 0; b < col_idx.size(); ++b) m.data_[a * col_idx.size() + b] = at(row_idx[a], col_idx[b]);
  return m;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
  hermitian_hint_ = hermitian_hint_ && o.hermitian_hint_;
  return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
  hermitian_hint_ = hermitian_hint_ && o.hermitian_hint_;
  return *this;
}

ExactMatrix& ExactMatrix::operator*=(const GaussianRational& s) {
  for (auto& z : data_)
    if (!z.is_zero()) z *= s;
  hermitian_hint_ = hermitian_hint_ && s.is_real();
  return *this;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product");
  ExactMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const GaussianRational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const GaussianRational& bkj = b(k, j);
        if (!bkj.is_zero()) m.data_[i * b.cols_ + j] += aik * bkj;
      }
    }
  return m;
}

ExactVector operator*(const ExactMatrix& a, const ExactVector& v) {
  if (a.cols_ != v.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
  ExactVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const GaussianRational& aik = a(i, k);
      if (!aik.is_zero() && !v[k].is_zero()) out[i] += aik * v[k];
    }
  return out;
}

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

ExactVector kron(const ExactVector& a, const ExactVector& b) {
  ExactVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) out[i * b.size() + j] = a[i] * b[j];
  }
  return out;
}

GaussianRational inner(const ExactVector& u, const ExactVector& v) {
  if (u.size() != v.size()) throw Error(ErrorKind::DimensionMismatch, "inner product");
  GaussianRational s;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!u[i].is_zero() && !v[i].is_zero()) s += u[i].conj() * v[i];
  return s;
}

ExactVector conj(const ExactVector& v) {
  ExactVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].conj();
  return out;
}

ExactVector scaled(const ExactVector& v, const GaussianRational& s) {
  ExactVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out[i] = v[i] * s;
  return out;
}

ExactVector add(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector sum");
  ExactVector out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

ExactVector sub(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector difference");
  ExactVector out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

bool is_zero(const ExactVector& v) {
  for (const auto& z : v)
    if (!z.is_zero()) return false;
  return true;
}

ExactVector unit_vector(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorKind::BoundsViolation, "unit vector index");
  ExactVector v(dim);
  v[index] = 1;
  return v;
}

}  // namespace locext
