#include "grassgeo/projective.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace grassgeo {

Projection Projection::make(const ComplexMatrix& m, const Tolerance& tol) {
  require_square(m, "Projection");
  require_finite(m, "Projection");
  if (!is_hermitian(m, tol.eq_tol) || !is_projection(m, tol.eq_tol)) {
    fail(ErrorCode::InvalidInput, "matrix is not a Hermitian idempotent within eq_tol");
  }
  const cplx tr = m.trace();
  const double rounded = std::round(tr.real());
  if (std::abs(tr.imag()) > tol.eq_tol || std::abs(tr.real() - rounded) > tol.eq_tol) {
    fail(ErrorCode::InvalidInput, "projection trace is not an integer");
  }
  ComplexMatrix sym = hermitian_part(m);
  const HermitianEig eig = hermitian_eig(sym, tol);
  ComplexMatrix range = eigenspace_basis(eig, 0.5, true);
  ComplexMatrix kernel = eigenspace_basis(eig, 0.5, false);
  const auto rank = static_cast<std::size_t>(rounded);
  if (range.cols() != rank) fail(ErrorCode::InvalidInput, "projection spectrum disagrees with trace");
  return Projection(std::move(sym), rank, std::move(range), std::move(kernel));
}

Projection Projection::from_bases(ComplexMatrix range_basis, ComplexMatrix kernel_basis,
                                  const Tolerance& tol) {
  const std::size_t n = range_basis.rows();
  if (kernel_basis.rows() != n || range_basis.cols() + kernel_basis.cols() != n) {
    fail(ErrorCode::InvalidInput, "projection bases have incompatible shapes");
  }
  require_finite(range_basis, "Projection");
  require_finite(kernel_basis, "Projection");
  const std::size_t k = range_basis.cols();
  const double residual = std::max(
      {frobenius_norm(adjoint_multiply(range_basis, range_basis) - ComplexMatrix::identity(k)),
       frobenius_norm(adjoint_multiply(kernel_basis, kernel_basis) - ComplexMatrix::identity(n - k)),
       frobenius_norm(adjoint_multiply(range_basis, kernel_basis))});
  if (residual >= tol.eq_tol) fail(ErrorCode::InvalidInput, "projection bases are not orthonormal");
  ComplexMatrix m = hermitian_part(multiply_adjoint(range_basis, range_basis));
  return Projection(std::move(m), k, std::move(range_basis), std::move(kernel_basis));
}

ComplexMatrix Projection::complement() const { return ComplexMatrix::identity(dim()) - mat_; }

ComplexMatrix Projection::symmetry() const {
  return 2.0 * mat_ - ComplexMatrix::identity(dim());
}

double projection_residual(const ComplexMatrix& m) {
  return std::max(op_norm(m * m - m), op_norm(m.adjoint() - m));
}

bool is_projection(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  const ComplexMatrix idem = m * m - m;
  const ComplexMatrix skew = m.adjoint() - m;
  // The Frobenius norm bounds the operator norm, so it settles the easy case.
  if (std::max(frobenius_norm(idem), frobenius_norm(skew)) < tol) return true;
  return std::max(op_norm(idem), op_norm(skew)) < tol;
}

bool same_context(const Projection& a, const Projection& b, double tol) {
  return a.dim() == b.dim() && a.rank() == b.rank() && max_abs(a.mat() - b.mat()) <= tol;
}

PartialIsometry PartialIsometry::make(const ComplexMatrix& v, const Projection& p,
                                      const Tolerance& tol) {
  if (v.rows() != p.dim() || v.cols() != p.dim()) {
    fail(ErrorCode::InvalidInput, "partial isometry shape does not match context");
  }
  if (op_norm(v - v * p.mat()) >= tol.eq_tol || op_norm(adjoint_multiply(v, v) - p.mat()) >= tol.eq_tol) {
    fail(ErrorCode::InvalidInput, "matrix is not in K_p (v*v != p)");
  }
  return PartialIsometry(v);
}

bool in_Lp(const ComplexMatrix& a, const Projection& p, const Tolerance& tol) {
  if (a.rows() != p.dim() || a.cols() != p.dim()) {
    fail(ErrorCode::InvalidInput, "in_Lp: dimension mismatch");
  }
  require_finite(a, "in_Lp");
  if (op_norm(a - a * p.mat()) > tol.eq_tol * (1.0 + op_norm(a))) return false;
  if (p.rank() == 0) return true;
  // Smallest eigenvalue of the compression of a*a to ran(p) is σ_min(a·B)².
  const double sigma = min_singular_value(a * p.range_basis());
  return sigma * sigma > tol.eq_tol;
}

ProjectivePoint classify(const ComplexMatrix& a, const Projection& p, const Tolerance& tol) {
  if (!in_Lp(a, p, tol)) fail(ErrorCode::NotInLp, "element is not in L_p");
  const std::size_t n = p.dim();
  ComplexMatrix rep;
  if (op_norm(adjoint_multiply(a, a) - p.mat()) <= std::min(tol.eq_tol, 1e-13)) {
    rep = a;
  } else if (p.rank() == 0) {
    rep = ComplexMatrix(n, n);
  } else {
    const ComplexMatrix& b = p.range_basis();
    const ComplexMatrix ab = a * b;
    const ComplexMatrix h = hermitian_part(adjoint_multiply(ab, ab));
    const ComplexMatrix h_inv_sqrt = func_calc([](double x) { return 1.0 / std::sqrt(x); }, h, tol);
    rep = multiply_adjoint(ab * h_inv_sqrt, b);
  }
  ComplexMatrix range = hermitian_part(multiply_adjoint(rep, rep));
  return ProjectivePoint(PartialIsometry::make(rep, p, tol), Projection::make(range, tol), p);
}

bool class_equal(const ProjectivePoint& m, const ProjectivePoint& n, const Tolerance& tol) {
  if (m.dim() != n.dim()) fail(ErrorCode::InvalidInput, "class_equal: dimension mismatch");
  return op_norm(m.range().mat() - n.range().mat()) < tol.eq_tol;
}

ComplexMatrix unitary_extension(const ComplexMatrix& g, const Projection& p, const Tolerance& tol) {
  if (g.rows() != p.dim() || g.cols() != p.dim()) {
    fail(ErrorCode::InvalidInput, "unitary_extension: dimension mismatch");
  }
  if (min_singular_value(g) <= tol.eq_tol) fail(ErrorCode::NotInvertible, "g is singular");
  const ProjectivePoint m = classify(g * p.mat(), p, tol);
  // Complete v₁ (ran p → ran q isometric) by any isometry ker p → ker q.
  return m.rep() + multiply_adjoint(m.range().kernel_basis(), p.kernel_basis());
}

ProjectivePoint point_from_range(const Projection& q, const Projection& p, const Tolerance& tol) {
  if (q.dim() != p.dim() || q.rank() != p.rank()) {
    fail(ErrorCode::InvalidInput, "point_from_range: rank or dimension mismatch");
  }
  ComplexMatrix rep = multiply_adjoint(q.range_basis(), p.range_basis());
  return ProjectivePoint(PartialIsometry::make(rep, p, tol), q, p);
}

ProjectivePoint rebase(const ProjectivePoint& m, const Projection& q, const Tolerance& tol) {
  return point_from_range(m.range(), q, tol);
}

ComplexMatrix random_off_diagonal(const Projection& p, Rng& rng) {
  const std::size_t n = p.dim();
  return p.complement() * random_gaussian(n, n, rng) * p.mat();
}

Projection random_projection(std::size_t n, std::size_t rank, Rng& rng) {
  if (n == 0 || rank > n) fail(ErrorCode::InvalidInput, "random_projection: rank out of range");
  if (rank == n) return Projection::make(ComplexMatrix::identity(n));
  if (rank == 0) return Projection::make(ComplexMatrix::zero(n));
  const HermitianEig eig = hermitian_eig(random_hermitian(n, rng));
  ComplexMatrix b(n, rank);
  for (std::size_t c = 0; c < rank; ++c)
    for (std::size_t r = 0; r < n; ++r) b(r, c) = eig.eigenvectors(r, n - rank + c);
  return Projection::make(hermitian_part(multiply_adjoint(b, b)));
}

Projection random_projection(std::size_t n, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_projection(n, rank, rng);
}

ProjectivePoint random_point_near(const Projection& p, double radius, Rng& rng,
                                  const Tolerance& tol) {
  if (!(radius > 0.0 && radius < 1.0)) {
    fail(ErrorCode::InvalidInput, "random_point_near: radius must lie in (0, 1)");
  }
  ComplexMatrix a = random_off_diagonal(p, rng);
  const double na = op_norm(a);
  if (na == 0.0) return classify(p.mat(), p, tol);
  // ‖e^z p e^{−z} − p‖ = sin‖z‖, so ‖z‖ ≤ asin(radius) keeps the point within radius.
  a *= std::asin(radius) * rng.uniform(0.0, 1.0) / na;
  const ComplexMatrix z = a - a.adjoint();
  return classify(exp_m(z) * p.mat(), p, tol);
}

ProjectivePoint random_point_near(const Projection& p, double radius, std::uint64_t seed,
                                  const Tolerance& tol) {
  Rng rng(seed);
  return random_point_near(p, radius, rng, tol);
}

}  // namespace grassgeo
