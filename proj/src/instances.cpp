#include "grassgeo/instances.hpp"

#include <cmath>
#include <numbers>

namespace grassgeo {

std::size_t random_rank(std::size_t n, Rng& rng) {
  if (n < 2) fail(ErrorCode::InvalidInput, "random_rank: dimension must be at least 2");
  return rng.index(1, n - 1);
}

Projection random_context(std::size_t n, Rng& rng) {
  const std::size_t k = random_rank(n, rng);
  return random_projection(n, k, rng);
}

Projection neighbor_at(const Projection& p, double angle, Rng& rng, const Tolerance& tol) {
  return geodesic(p, random_tangent(p, angle, rng), 1.0, tol);
}

ComplexMatrix random_pAp_invertible(const Projection& p, Rng& rng) {
  const ComplexMatrix& b = p.range_basis();
  if (b.cols() == 0) return ComplexMatrix::zero(p.dim());
  return multiply_adjoint(b * random_invertible(b.cols(), rng), b);
}

ComplexMatrix random_p_commuting_unitary(const Projection& p, Rng& rng) {
  const ComplexMatrix& b = p.range_basis();
  const ComplexMatrix& k = p.kernel_basis();
  ComplexMatrix w(p.dim(), p.dim());
  if (b.cols() > 0) w += multiply_adjoint(b * random_unitary(b.cols(), rng), b);
  if (k.cols() > 0) w += multiply_adjoint(k * random_unitary(k.cols(), rng), k);
  return w;
}

ComplexMatrix random_eps_anticommuting(const Projection& p, double norm, Rng& rng) {
  const HpVector x = random_hp_vector(p, norm, rng);
  return x.mat() + x.mat().adjoint();
}

ProjectivePoint random_nonfinite_point(const Projection& p, Rng& rng, const Tolerance& tol) {
  const ComplexMatrix& b = p.range_basis();
  const ComplexMatrix& k = p.kernel_basis();
  if (b.cols() == 0 || k.cols() == 0) {
    fail(ErrorCode::InvalidInput, "random_nonfinite_point: p must be a proper projection");
  }
  // Unit vectors e ∈ ran p, f ∈ ker p; the block a = (π/2)·f e* + a' with a'
  // acting between the orthogonal complements and ‖a'‖ < π/2.
  const ComplexMatrix u_b = random_unitary(b.cols(), rng);
  const ComplexMatrix u_k = random_unitary(k.cols(), rng);
  const ComplexMatrix bb = b * u_b;
  const ComplexMatrix kk = k * u_k;
  const std::size_t n = p.dim();
  const std::size_t kb = bb.cols(), kk_cols = kk.cols();
  ComplexMatrix e(n, 1), f(n, 1), b_rest(n, kb - 1), k_rest(n, kk_cols - 1);
  for (std::size_t r = 0; r < n; ++r) {
    e(r, 0) = bb(r, 0);
    f(r, 0) = kk(r, 0);
    for (std::size_t c = 1; c < kb; ++c) b_rest(r, c - 1) = bb(r, c);
    for (std::size_t c = 1; c < kk_cols; ++c) k_rest(r, c - 1) = kk(r, c);
  }
  ComplexMatrix a = (std::numbers::pi / 2.0) * multiply_adjoint(f, e);
  if (kb > 1 && kk_cols > 1) {
    const ComplexMatrix rest =
        multiply_adjoint(k_rest * random_gaussian(kk_cols - 1, kb - 1, rng), b_rest);
    const double nr = op_norm(rest);
    if (nr > 0.0) a += (rng.uniform(0.0, 1.4) / nr) * rest;
  }
  const ComplexMatrix z = a - a.adjoint();
  return classify(exp_m(z) * p.mat(), p, tol);
}

DiskPoint random_disk_point(const Projection& p, double scale, Rng& rng, const Tolerance& tol) {
  return Y(random_pos_eps_unitary(p, scale, rng, tol), tol);
}

}  // namespace grassgeo
