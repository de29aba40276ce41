#pragma once

// Brute-force reference computations used to cross-check the library. None of
// these call into the Jacobi kernel or the library's exponential.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "grassgeo/matrix.hpp"

namespace oracle {

using grassgeo::ComplexMatrix;
using grassgeo::cplx;

inline std::vector<cplx> mat_vec(const ComplexMatrix& a, const std::vector<cplx>& v) {
  std::vector<cplx> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

inline std::vector<cplx> adj_vec(const ComplexMatrix& a, const std::vector<cplx>& v) {
  std::vector<cplx> out(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += std::conj(a(i, j)) * v[i];
  return out;
}

inline double vec_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return std::sqrt(s);
}

// Largest singular value by power iteration on a*a, started from a fixed
// dense vector and run until the Rayleigh quotient settles.
inline double power_norm(const ComplexMatrix& a, int max_iter = 200000) {
  std::vector<cplx> v(a.cols());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(1.0 + 0.37 * i, 0.11 * (i % 3));
  double prev = -1.0, est = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const double nv = vec_norm(v);
    if (nv == 0.0) return 0.0;
    for (cplx& x : v) x /= nv;
    std::vector<cplx> w = adj_vec(a, mat_vec(a, v));
    est = std::sqrt(vec_norm(w));
    if (std::abs(est - prev) <= 1e-15 * std::max(1.0, est) && it > 50) break;
    prev = est;
    v = std::move(w);
  }
  return est;
}

// Orthogonal projection onto the span of the `rank` dominant directions of
// the columns of a, by modified Gram-Schmidt with column pivoting.
inline ComplexMatrix range_projection(const ComplexMatrix& a, std::size_t rank) {
  const std::size_t n = a.rows();
  std::vector<std::vector<cplx>> cols(a.cols(), std::vector<cplx>(n));
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) cols[j][i] = a(i, j);
  std::vector<std::vector<cplx>> q;
  for (std::size_t k = 0; k < rank; ++k) {
    std::size_t best = k;
    for (std::size_t j = k; j < cols.size(); ++j)
      if (vec_norm(cols[j]) > vec_norm(cols[best])) best = j;
    std::swap(cols[k], cols[best]);
    std::vector<cplx> e = cols[k];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : q) {
        cplx d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += std::conj(b[i]) * e[i];
        for (std::size_t i = 0; i < n; ++i) e[i] -= d * b[i];
      }
    }
    const double ne = vec_norm(e);
    for (cplx& x : e) x /= ne;
    for (std::size_t j = k + 1; j < cols.size(); ++j) {
      cplx d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += std::conj(e[i]) * cols[j][i];
      for (std::size_t i = 0; i < n; ++i) cols[j][i] -= d * e[i];
    }
    q.push_back(std::move(e));
  }
  ComplexMatrix p(n, n);
  for (const auto& b : q)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) += b[i] * std::conj(b[j]);
  return p;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

// exp by scaling and squaring with a long Taylor series.
inline ComplexMatrix expm(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  double nrm = 0.0;
  for (const cplx& x : a.data()) nrm += std::abs(x);
  int s = 0;
  while (nrm > 0.25) {
    nrm /= 2.0;
    ++s;
  }
  ComplexMatrix scaled = std::ldexp(1.0, -s) * a;
  ComplexMatrix term = ComplexMatrix::identity(n);
  ComplexMatrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = (1.0 / k) * matmul(term, scaled);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = matmul(sum, sum);
  return sum;
}

inline double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace oracle
