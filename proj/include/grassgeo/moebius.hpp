#pragma once

#include "grassgeo/grassmann.hpp"

namespace grassgeo {

/// Element of the corner H_p = (1 − p)·A·p; the affine chart parameter.
class HpVector {
 public:
  /// Throws InvalidInput unless ‖p·x‖ and ‖x·(1 − p)‖ are below eq_tol.
  static HpVector make(const ComplexMatrix& x, const Projection& p, const Tolerance& tol = {});
  static HpVector zero(const Projection& p);

  const ComplexMatrix& mat() const noexcept { return mat_; }
  const Projection& context() const noexcept { return context_; }
  double norm() const { return op_norm(mat_); }

 private:
  HpVector(ComplexMatrix x, Projection p) : mat_(std::move(x)), context_(std::move(p)) {}
  ComplexMatrix mat_;
  Projection context_;
};

HpVector random_hp_vector(const Projection& p, double norm, Rng& rng);

/// g in p-block form: x = p g p, y = p g (1−p), z = (1−p) g p, w = (1−p) g (1−p).
struct MoebiusMap {
  ComplexMatrix g;
  Projection context;
  ComplexMatrix x, y, z, w;

  /// Throws NotInvertible for singular g.
  static MoebiusMap make(const ComplexMatrix& g, const Projection& p, const Tolerance& tol = {});
};

/// k(x) = [p + x].
ProjectivePoint chart(const HpVector& x, const Tolerance& tol = {});
/// True iff p·rep·p is invertible on ran(p).
bool is_finite_point(const ProjectivePoint& m, const Tolerance& tol = {});
/// x = v₂·v₁⁻¹. Throws NotFinitePoint.
HpVector chart_inv(const ProjectivePoint& m, const Tolerance& tol = {});
double d_k(const ProjectivePoint& m, const ProjectivePoint& n, const Tolerance& tol = {});

bool moebius_domain(const MoebiusMap& g, const HpVector& b, const Tolerance& tol = {});
/// (z + w·b)·(x + y·b)⁻¹. Throws OutsideDomain.
HpVector moebius_apply(const MoebiusMap& g, const HpVector& b, const Tolerance& tol = {});

/// Coordinates at q of the point with coordinates x at r:
/// (1−q)(r+x)q·(q(r+x)q)⁻¹, inverse in qAq. Throws OutsideDomain.
HpVector chart_transition(const Projection& q, const Projection& r, const HpVector& x,
                          const Tolerance& tol = {});

}  // namespace grassgeo
