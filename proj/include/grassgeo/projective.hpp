#pragma once

#include <cstdint>

#include "grassgeo/linalg.hpp"
#include "grassgeo/random.hpp"

namespace grassgeo {

/// Hermitian idempotent matrix with its rank and orthonormal bases of its
/// range and kernel (eigenvectors for eigenvalues 1 and 0).
class Projection {
 public:
  /// Validates ‖m² − m‖ < eq_tol, ‖m* − m‖ < eq_tol and an integral trace;
  /// throws InvalidInput otherwise.
  static Projection make(const ComplexMatrix& m, const Tolerance& tol = {});
  /// p = y·y* from orthonormal bases y of the range and k of the kernel.
  /// Throws InvalidInput unless [y k] is unitary within eq_tol.
  static Projection from_bases(ComplexMatrix range_basis, ComplexMatrix kernel_basis,
                               const Tolerance& tol = {});

  const ComplexMatrix& mat() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.rows(); }
  std::size_t rank() const noexcept { return rank_; }
  ComplexMatrix complement() const;  // 1 − p
  ComplexMatrix symmetry() const;    // 2p − 1
  const ComplexMatrix& range_basis() const noexcept { return range_basis_; }
  const ComplexMatrix& kernel_basis() const noexcept { return kernel_basis_; }

 private:
  Projection(ComplexMatrix m, std::size_t rank, ComplexMatrix range_basis,
             ComplexMatrix kernel_basis)
      : mat_(std::move(m)),
        rank_(rank),
        range_basis_(std::move(range_basis)),
        kernel_basis_(std::move(kernel_basis)) {}

  ComplexMatrix mat_;
  std::size_t rank_ = 0;
  ComplexMatrix range_basis_;
  ComplexMatrix kernel_basis_;
};

/// max(‖m² − m‖, ‖m* − m‖).
double projection_residual(const ComplexMatrix& m);
/// projection_residual(m) < tol, skipping the eigensolver when possible.
bool is_projection(const ComplexMatrix& m, double tol);
bool same_context(const Projection& a, const Projection& b, double tol);

/// v with v·p = v and v*v = p.
class PartialIsometry {
 public:
  static PartialIsometry make(const ComplexMatrix& v, const Projection& p, const Tolerance& tol = {});
  const ComplexMatrix& mat() const noexcept { return mat_; }

 private:
  explicit PartialIsometry(ComplexMatrix v) : mat_(std::move(v)) {}
  ComplexMatrix mat_;
};

/// A class [v] of P(p): canonical partial-isometry representative, its range
/// projection v·v* and the context projection p. Classes are compared on
/// range projections only.
class ProjectivePoint {
 public:
  ProjectivePoint(PartialIsometry rep, Projection range, Projection context)
      : rep_(std::move(rep)), range_(std::move(range)), context_(std::move(context)) {}

  const ComplexMatrix& rep() const noexcept { return rep_.mat(); }
  const Projection& range() const noexcept { return range_; }
  const Projection& context() const noexcept { return context_; }
  std::size_t dim() const noexcept { return context_.dim(); }

 private:
  PartialIsometry rep_;
  Projection range_;
  Projection context_;
};

bool in_Lp(const ComplexMatrix& a, const Projection& p, const Tolerance& tol = {});

/// [a] with representative a·|a|⁻¹ (inverse in pAp). Throws NotInLp.
ProjectivePoint classify(const ComplexMatrix& a, const Projection& p, const Tolerance& tol = {});

bool class_equal(const ProjectivePoint& m, const ProjectivePoint& n, const Tolerance& tol = {});

/// Unitary v with [v·p] = [g·p]. Throws NotInvertible for singular g.
ComplexMatrix unitary_extension(const ComplexMatrix& g, const Projection& p,
                                const Tolerance& tol = {});

/// The point of P(p) whose range projection is q (ranks must agree).
ProjectivePoint point_from_range(const Projection& q, const Projection& p,
                                 const Tolerance& tol = {});
/// Same range projection, viewed in P(q).
ProjectivePoint rebase(const ProjectivePoint& m, const Projection& q, const Tolerance& tol = {});

/// (1 − p)·G·p for a Gaussian G.
ComplexMatrix random_off_diagonal(const Projection& p, Rng& rng);

Projection random_projection(std::size_t n, std::size_t rank, Rng& rng);
Projection random_projection(std::size_t n, std::size_t rank, std::uint64_t seed);
ProjectivePoint random_point_near(const Projection& p, double radius, Rng& rng,
                                  const Tolerance& tol = {});
ProjectivePoint random_point_near(const Projection& p, double radius, std::uint64_t seed,
                                  const Tolerance& tol = {});

}  // namespace grassgeo
