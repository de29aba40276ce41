#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "grassgeo/errors.hpp"

namespace grassgeo {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. The single carrier type for every
/// algebra element (projections, partial isometries, tangent vectors, ...).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n, n); }
  static ComplexMatrix diagonal(std::span<const cplx> d);
  static ComplexMatrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(double s, ComplexMatrix a);

/// a·b* without forming the adjoint.
ComplexMatrix multiply_adjoint(const ComplexMatrix& a, const ComplexMatrix& b);
/// a*·b without forming the adjoint.
ComplexMatrix adjoint_multiply(const ComplexMatrix& a, const ComplexMatrix& b);

bool all_finite(const ComplexMatrix& a) noexcept;
double max_abs(const ComplexMatrix& a) noexcept;
double frobenius_norm(const ComplexMatrix& a) noexcept;

ComplexMatrix hermitian_part(const ComplexMatrix& a);
ComplexMatrix anti_hermitian_part(const ComplexMatrix& a);

void require_square(const ComplexMatrix& a, const char* what);
void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);
void require_finite(const ComplexMatrix& a, const char* what);

}  // namespace grassgeo
