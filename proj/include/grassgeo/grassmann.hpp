#pragma once

#include <functional>

#include "grassgeo/projective.hpp"

namespace grassgeo {

/// Anti-Hermitian z with p·z = z·(1 − p): the velocity space of geodesics
/// leaving p.
class TangentVector {
 public:
  /// Throws InvalidTangent when either invariant fails by eq_tol.
  static TangentVector make(const ComplexMatrix& z, const Projection& p, const Tolerance& tol = {});
  /// z = a − a* for a = (1 − p)·a·p.
  static TangentVector from_block(const ComplexMatrix& a, const Projection& p,
                                  const Tolerance& tol = {});

  const ComplexMatrix& mat() const noexcept { return mat_; }
  const Projection& context() const noexcept { return context_; }
  double norm() const { return op_norm(mat_); }

 private:
  TangentVector(ComplexMatrix z, Projection p) : mat_(std::move(z)), context_(std::move(p)) {}
  ComplexMatrix mat_;
  Projection context_;
};

/// Random tangent at p with operator norm exactly `norm` (zero if p is 0 or 1).
TangentVector random_tangent(const Projection& p, double norm, Rng& rng);

double d_chordal(const Projection& p, const Projection& q);
double d_chordal(const ProjectivePoint& m, const ProjectivePoint& n, const Tolerance& tol = {});

/// arcsin of the chordal distance. Throws OutOfRange when d_c ≥ 1 − eq_tol.
double d_spherical(const Projection& p, const Projection& q, const Tolerance& tol = {});
double d_spherical(const ProjectivePoint& m, const ProjectivePoint& n, const Tolerance& tol = {});

/// e^{tz}·p·e^{−tz}.
Projection geodesic(const Projection& p, const TangentVector& z, double t, const Tolerance& tol = {});

/// The unique z (‖z‖ < π/2) with e^z p e^{−z} = q.
TangentVector geodesic_log(const Projection& p, const Projection& q, const Tolerance& tol = {});

/// A curve sampled at `resolution` uniformly spaced parameters 0 = t₀ < … < t_{N−1} = 1.
struct Curve {
  std::function<ComplexMatrix(double)> sample;
  int resolution = 2000;
};

/// Sum of chordal distances between consecutive samples. Samples are
/// evaluated in parallel; the sum is always accumulated in sample order so
/// the result matches curve_length_serial bit for bit.
double curve_length(const Curve& c, const Tolerance& tol = {});
double curve_length_serial(const Curve& c, const Tolerance& tol = {});

/// Projection onto the column space of g·q, from the idempotent r = g q g⁻¹
/// via r·r*·(1 + (r − r*)*(r − r*))⁻¹.
Projection projectivity(const ComplexMatrix& g, const Projection& q, const Tolerance& tol = {});

}  // namespace grassgeo
