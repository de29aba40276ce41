#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "grassgeo/matrix.hpp"

namespace grassgeo {

/// Spectral decomposition a = V·diag(eigenvalues)·V* of a Hermitian matrix.
/// Eigenvalues are ascending; the columns of V are the matching eigenvectors.
struct HermitianEig {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

struct Polar {
  ComplexMatrix u;    // partial isometry (unitary when a is invertible)
  ComplexMatrix pos;  // (a*a)^{1/2}
};

bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_unitary(const ComplexMatrix& a, double tol);

/// Cyclic complex Jacobi. Throws NotHermitian if ‖a − a*‖ exceeds
/// tol.eq_tol·(1 + max|a|).
HermitianEig hermitian_eig(const ComplexMatrix& a, const Tolerance& tol = {});
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, const Tolerance& tol = {});

/// Largest singular value.
double op_norm(const ComplexMatrix& a);
/// Singular values, ascending, min(rows, cols) of them.
std::vector<double> singular_values(const ComplexMatrix& a);
double min_singular_value(const ComplexMatrix& a);

/// V·diag(f(λᵢ))·V*. Throws DomainError if f yields a non-finite value.
template <class F>
ComplexMatrix func_calc(F&& f, const HermitianEig& eig) {
  const std::size_t n = eig.eigenvalues.size();
  std::vector<double> fv(n);
  for (std::size_t i = 0; i < n; ++i) {
    fv[i] = f(eig.eigenvalues[i]);
    if (!std::isfinite(fv[i])) {
      fail(ErrorCode::DomainError,
           "function undefined at eigenvalue " + std::to_string(eig.eigenvalues[i]));
    }
  }
  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += v(i, k) * fv[k] * std::conj(v(j, k));
      r(i, j) = s;
      r(j, i) = std::conj(s);
    }
  for (std::size_t i = 0; i < n; ++i) r(i, i) = r(i, i).real();
  return r;
}

template <class F>
ComplexMatrix func_calc(F&& f, const ComplexMatrix& a, const Tolerance& tol = {}) {
  return func_calc(std::forward<F>(f), hermitian_eig(a, tol));
}

Polar polar(const ComplexMatrix& a, const Tolerance& tol = {});

ComplexMatrix exp_m(const ComplexMatrix& a);
/// Scaling-and-squaring Taylor exponential, used for general matrices and
/// kept callable to cross-check the spectral paths.
ComplexMatrix exp_m_taylor(const ComplexMatrix& a);

/// Principal logarithm of a unitary; result is anti-Hermitian with spectrum
/// in (−iπ, iπ). Throws BranchCut when −1 is within eq_tol of the spectrum.
ComplexMatrix log_unitary(const ComplexMatrix& u, const Tolerance& tol = {});
ComplexMatrix log_posdef(const ComplexMatrix& a, const Tolerance& tol = {});
ComplexMatrix sqrt_posdef(const ComplexMatrix& a, const Tolerance& tol = {});
/// aᵗ for positive definite a.
ComplexMatrix power_posdef(const ComplexMatrix& a, double t, const Tolerance& tol = {});

/// LU with partial pivoting. Throws NotInvertible on a numerically zero pivot.
ComplexMatrix inverse(const ComplexMatrix& a);

/// Orthogonal projection onto the span of the top-`rank` left singular
/// vectors of a (the column space when rank(a) = rank).
ComplexMatrix range_projection(const ComplexMatrix& a, std::size_t rank);

/// Columns of the eigenvector matrix whose eigenvalues lie above `threshold`.
ComplexMatrix eigenspace_basis(const HermitianEig& eig, double threshold, bool above = true);

/// B·(B*aB)^{-1}·B* for an orthonormal column basis B of a subspace: the
/// inverse of a's compression to that subspace, embedded back into n×n.
/// Throws NotInvertible if the compression's smallest singular value is
/// below tol.
ComplexMatrix compressed_inverse(const ComplexMatrix& a, const ComplexMatrix& basis, double tol);
/// Smallest singular value of B*aB.
double compressed_min_singular(const ComplexMatrix& a, const ComplexMatrix& basis);

}  // namespace grassgeo
