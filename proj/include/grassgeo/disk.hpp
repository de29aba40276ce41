#pragma once

#include <cstdint>

#include "grassgeo/moebius.hpp"

namespace grassgeo {

/// ε = 2p − 1, the symmetry defining the indefinite form ⟨ε·,·⟩.
struct EpsSymmetry {
  ComplexMatrix eps;
  Projection context;

  static EpsSymmetry from(const Projection& p) { return EpsSymmetry{p.symmetry(), p}; }
};

/// ‖u*εu − ε‖ / max(1, ‖u‖²).
double eps_unitary_residual(const ComplexMatrix& u, const EpsSymmetry& eps);
bool is_eps_unitary(const ComplexMatrix& u, const EpsSymmetry& eps, const Tolerance& tol = {});

/// Positive definite ε-unitary λ = e^X, X = x + x* with x ∈ H_p unique.
/// Caches λ^{1/2} and λ^{−1/2}, which every disk metric needs.
class PositiveEpsUnitary {
 public:
  static PositiveEpsUnitary from_parameter(const HpVector& x, const Tolerance& tol = {});
  /// Validates positivity and the ε-unitary identity; recovers x from log λ.
  static PositiveEpsUnitary from_matrix(const ComplexMatrix& lambda, const Projection& p,
                                        const Tolerance& tol = {});

  const ComplexMatrix& mat() const noexcept { return mat_; }
  const HpVector& xparam() const noexcept { return xparam_; }
  const Projection& context() const noexcept { return xparam_.context(); }
  const ComplexMatrix& sqrt() const noexcept { return sqrt_; }
  const ComplexMatrix& inv_sqrt() const noexcept { return inv_sqrt_; }

 private:
  PositiveEpsUnitary(ComplexMatrix m, HpVector x, ComplexMatrix s, ComplexMatrix is)
      : mat_(std::move(m)), xparam_(std::move(x)), sqrt_(std::move(s)), inv_sqrt_(std::move(is)) {}

  ComplexMatrix mat_;
  HpVector xparam_;
  ComplexMatrix sqrt_;
  ComplexMatrix inv_sqrt_;
};

PositiveEpsUnitary random_pos_eps_unitary(const Projection& p, double scale, Rng& rng,
                                          const Tolerance& tol = {});
PositiveEpsUnitary random_pos_eps_unitary(const Projection& p, double scale, std::uint64_t seed,
                                          const Tolerance& tol = {});
/// λ·w with λ random in the positive cone and w a unitary commuting with p.
ComplexMatrix random_eps_unitary(const Projection& p, double scale, Rng& rng);

/// A point of the disk D⁺ together with its cone coordinate λ = Y⁻¹(point).
struct DiskPoint {
  ProjectivePoint point;
  PositiveEpsUnitary lambda;
};

/// Y(λ) = [λ^{1/2}·p].
DiskPoint Y(const PositiveEpsUnitary& lambda, const Tolerance& tol = {});
/// Inverse of Y through the chart coordinate. Throws NotInDisk.
PositiveEpsUnitary Y_inv(const ProjectivePoint& m, const Tolerance& tol = {});
DiskPoint to_disk(const ProjectivePoint& m, const Tolerance& tol = {});

/// Cor. membership tests: d_k < 1, d_c < √2/2, d_r < π/4 (each against [p]).
struct DiskMembership {
  bool by_dk = false;
  bool by_chordal = false;
  bool by_spherical = false;
};
DiskMembership disk_membership(const ProjectivePoint& m, const Tolerance& tol = {});
bool in_disk(const ProjectivePoint& m, const Tolerance& tol = {});

double rho(const DiskPoint& m, const DiskPoint& n);
double d_pc(const DiskPoint& m, const DiskPoint& n);
double E_n(const DiskPoint& m, const DiskPoint& n);
double d_plus(const PositiveEpsUnitary& mu, const PositiveEpsUnitary& nu);
double d_plus(const DiskPoint& m, const DiskPoint& n);

/// ν^{1/2}(ν^{−1/2}μν^{−1/2})ᵗν^{1/2}: ν at t = 0, μ at t = 1.
PositiveEpsUnitary eps_geodesic(const PositiveEpsUnitary& mu, const PositiveEpsUnitary& nu,
                                double t, const Tolerance& tol = {});

/// u × m = Y(u·λ·u*). Throws NotEpsUnitary.
DiskPoint eps_action(const ComplexMatrix& u, const DiskPoint& m, const Tolerance& tol = {});

/// Sum of d₊ between consecutive samples of a cone-valued curve; parallel
/// evaluation, ordered summation (bitwise equal to the serial version).
double cone_curve_length(const std::function<PositiveEpsUnitary(double)>& sample, int resolution);
double cone_curve_length_serial(const std::function<PositiveEpsUnitary(double)>& sample,
                                int resolution);

}  // namespace grassgeo
