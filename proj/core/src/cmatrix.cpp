#include "coarse/cmatrix.hpp"

#include <cmath>

#include "coarse/error.hpp"

namespace coarse {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw Error("invalid_matrix", "entry count does not match rows * cols");
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error("invalid_matrix", "matrix entries must be finite");
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

CMatrix CMatrix::outer(std::span<const Complex> w, std::span<const Complex> v) {
  CMatrix out(w.size(), v.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = w[i] * std::conj(v[j]);
  return out;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

CMatrix CMatrix::select(std::span<const std::size_t> rows,
                        std::span<const std::size_t> cols) const {
  CMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(i, j) = (*this)(rows[i], cols[j]);
  return out;
}

CVector CMatrix::apply(std::span<const Complex> v) const {
  CVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex acc = 0.0;
    const Complex* row = &data_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
  return out;
}

CVector CMatrix::apply_adjoint(std::span<const Complex> w) const {
  CVector out(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const Complex wi = w[i];
    if (wi == Complex{}) continue;
    const Complex* row = &data_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j) out[j] += std::conj(row[j]) * wi;
  }
  return out;
}

double CMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& z : data_) acc += std::norm(z);
  return std::sqrt(acc);
}

double CMatrix::max_abs() const {
  double out = 0.0;
  for (const auto& z : data_) out = std::max(out, std::abs(z));
  return out;
}

bool CMatrix::is_zero() const {
  for (const auto& z : data_)
    if (z != Complex{}) return false;
  return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error("dimension_mismatch", "matrix sum with different shapes");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error("dimension_mismatch", "matrix difference with different shapes");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex c) {
  for (auto& z : data_) z *= c;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows())
    throw Error("dimension_mismatch", "matrix product with incompatible shapes");
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double norm(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

}  // namespace coarse
