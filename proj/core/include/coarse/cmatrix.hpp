#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace coarse {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

  static CMatrix identity(std::size_t n);
  /// w v^*, i.e. h -> <v, h> w.
  static CMatrix outer(std::span<const Complex> w, std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  const std::vector<Complex>& data() const noexcept { return data_; }

  CMatrix adjoint() const;
  /// Rows and columns picked by index (χ_B M χ_A as a compressed block).
  CMatrix select(std::span<const std::size_t> rows,
                 std::span<const std::size_t> cols) const;

  CVector apply(std::span<const Complex> v) const;
  CVector apply_adjoint(std::span<const Complex> w) const;

  double frobenius_norm() const;
  double max_abs() const;
  bool is_zero() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex c);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex c) { return a *= c; }
  friend CMatrix operator*(Complex c, CMatrix a) { return a *= c; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  bool operator==(const CMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

double norm(std::span<const Complex> v);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a, b>, conjugate-linear in a

}  // namespace coarse
