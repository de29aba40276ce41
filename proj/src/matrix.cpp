#include "grassgeo/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace grassgeo {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BranchCut: return "BranchCut";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotInLp: return "NotInLp";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::InvalidTangent: return "InvalidTangent";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::NotFinitePoint: return "NotFinitePoint";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::NotInDisk: return "NotInDisk";
    case ErrorCode::NotEpsUnitary: return "NotEpsUnitary";
    case ErrorCode::IOError: return "IOError";
  }
  return "Unknown";
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    fail(ErrorCode::InvalidInput, "entry count " + std::to_string(data_.size()) +
                                      " does not match shape " + std::to_string(rows_) + "x" +
                                      std::to_string(cols_));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::InvalidInput, "ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    fail(ErrorCode::InvalidInput, "matrix product shape mismatch");
  }
  const std::size_t n = a.rows(), m = b.cols(), inner = a.cols();
  ComplexMatrix c(n, m);
  // i-k-j order keeps the inner loop contiguous in both b and c.
  const cplx* __restrict pa = a.data().data();
  const cplx* __restrict pb = b.data().data();
  cplx* __restrict pc = c.data().data();
  for (std::size_t i = 0; i < n; ++i) {
    cplx* __restrict ci = pc + i * m;
    for (std::size_t k = 0; k < inner; ++k) {
      const cplx aik = pa[i * inner + k];
      if (aik == cplx(0.0)) continue;
      const cplx* __restrict bk = pb + k * m;
      for (std::size_t j = 0; j < m; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

ComplexMatrix multiply_adjoint(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) fail(ErrorCode::InvalidInput, "a·b* shape mismatch");
  ComplexMatrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * std::conj(b(j, k));
      c(i, j) = s;
    }
  return c;
}

ComplexMatrix adjoint_multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) fail(ErrorCode::InvalidInput, "a*·b shape mismatch");
  ComplexMatrix c(a.cols(), b.cols());
  const std::size_t n = a.cols(), m = b.cols();
  const cplx* __restrict pa = a.data().data();
  const cplx* __restrict pb = b.data().data();
  cplx* __restrict pc = c.data().data();
  for (std::size_t k = 0; k < a.rows(); ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const cplx aki = std::conj(pa[k * n + i]);
      if (aki == cplx(0.0)) continue;
      const cplx* __restrict bk = pb + k * m;
      cplx* __restrict ci = pc + i * m;
      for (std::size_t j = 0; j < m; ++j) ci[j] += aki * bk[j];
    }
  return c;
}

bool all_finite(const ComplexMatrix& a) noexcept {
  return std::all_of(a.data().begin(), a.data().end(), [](const cplx& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

double max_abs(const ComplexMatrix& a) noexcept {
  double m = 0.0;
  for (const auto& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double frobenius_norm(const ComplexMatrix& a) noexcept {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  require_square(a, "hermitian_part");
  ComplexMatrix h(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return h;
}

ComplexMatrix anti_hermitian_part(const ComplexMatrix& a) {
  require_square(a, "anti_hermitian_part");
  ComplexMatrix h(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) h(i, j) = 0.5 * (a(i, j) - std::conj(a(j, i)));
  return h;
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square() || a.rows() == 0) {
    fail(ErrorCode::InvalidInput, std::string(what) + ": expected a non-empty square matrix");
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::InvalidInput, std::string(what) + ": shape mismatch");
  }
}

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!all_finite(a)) fail(ErrorCode::InvalidInput, std::string(what) + ": non-finite entry");
}

}  // namespace grassgeo
