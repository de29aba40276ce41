#pragma once

#include "grassgeo/disk.hpp"

namespace grassgeo {

/// Rank drawn uniformly from [1, n − 1] (so both p and 1 − p are non-zero).
std::size_t random_rank(std::size_t n, Rng& rng);
/// A random projection of random proper rank.
Projection random_context(std::size_t n, Rng& rng);

/// e^{z}·p·e^{−z} with ‖z‖ = angle exactly, so d_spherical(p, q) = angle.
Projection neighbor_at(const Projection& p, double angle, Rng& rng, const Tolerance& tol = {});

/// Invertible element of pAp, B·M·B* with M well conditioned.
ComplexMatrix random_pAp_invertible(const Projection& p, Rng& rng);

/// Unitary commuting with p (block diagonal in p-coordinates).
ComplexMatrix random_p_commuting_unitary(const Projection& p, Rng& rng);

/// Hermitian ε-anticommuting X = x + x* with x ∈ H_p and ‖x‖ = norm.
ComplexMatrix random_eps_anticommuting(const Projection& p, double norm, Rng& rng);

/// A point of P(p) that is exactly not finite: e^{z}p with a tangent z
/// whose largest angle is π/2, so p·v·p has a zero singular value.
ProjectivePoint random_nonfinite_point(const Projection& p, Rng& rng, const Tolerance& tol = {});

/// A random disk point Y(λ) with ‖x(λ)‖ ≤ scale.
DiskPoint random_disk_point(const Projection& p, double scale, Rng& rng, const Tolerance& tol = {});

}  // namespace grassgeo
