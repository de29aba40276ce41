#include "grassgeo/disk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace grassgeo {

double eps_unitary_residual(const ComplexMatrix& u, const EpsSymmetry& eps) {
  if (u.rows() != eps.eps.rows() || u.cols() != eps.eps.cols()) {
    fail(ErrorCode::InvalidInput, "eps-unitary test: dimension mismatch");
  }
  const double nu = op_norm(u);
  return op_norm(adjoint_multiply(u, eps.eps * u) - eps.eps) / std::max(1.0, nu * nu);
}

bool is_eps_unitary(const ComplexMatrix& u, const EpsSymmetry& eps, const Tolerance& tol) {
  return eps_unitary_residual(u, eps) < tol.eq_tol;
}

PositiveEpsUnitary PositiveEpsUnitary::from_parameter(const HpVector& x, const Tolerance& tol) {
  const ComplexMatrix big_x = x.mat() + x.mat().adjoint();
  ComplexMatrix s = exp_m(0.5 * big_x);
  ComplexMatrix is = exp_m(-0.5 * big_x);
  ComplexMatrix lambda = hermitian_part(s * s);
  (void)tol;
  return PositiveEpsUnitary(std::move(lambda), x, std::move(s), std::move(is));
}

PositiveEpsUnitary PositiveEpsUnitary::from_matrix(const ComplexMatrix& lambda, const Projection& p,
                                                   const Tolerance& tol) {
  if (lambda.rows() != p.dim() || lambda.cols() != p.dim()) {
    fail(ErrorCode::InvalidInput, "cone element: dimension mismatch");
  }
  const HermitianEig eig = hermitian_eig(lambda, tol);
  if (eig.eigenvalues.front() <= tol.eq_tol) {
    fail(ErrorCode::NotPositive, "cone element is not positive definite");
  }
  if (!is_eps_unitary(lambda, EpsSymmetry::from(p), tol)) {
    fail(ErrorCode::NotEpsUnitary, "cone element is not eps-unitary");
  }
  const ComplexMatrix log = func_calc([](double v) { return std::log(v); }, eig);
  HpVector x = HpVector::make(p.complement() * log * p.mat(), p,
                              Tolerance{std::max(tol.eq_tol, tol.geo_tol), tol.geo_tol});
  ComplexMatrix s = func_calc([](double v) { return std::sqrt(v); }, eig);
  ComplexMatrix is = func_calc([](double v) { return 1.0 / std::sqrt(v); }, eig);
  return PositiveEpsUnitary(hermitian_part(lambda), std::move(x), std::move(s), std::move(is));
}

PositiveEpsUnitary random_pos_eps_unitary(const Projection& p, double scale, Rng& rng,
                                          const Tolerance& tol) {
  if (!(scale > 0.0)) fail(ErrorCode::InvalidInput, "random_pos_eps_unitary: scale must be positive");
  return PositiveEpsUnitary::from_parameter(random_hp_vector(p, scale * rng.uniform(0.0, 1.0), rng),
                                            tol);
}

PositiveEpsUnitary random_pos_eps_unitary(const Projection& p, double scale, std::uint64_t seed,
                                          const Tolerance& tol) {
  Rng rng(seed);
  return random_pos_eps_unitary(p, scale, rng, tol);
}

ComplexMatrix random_eps_unitary(const Projection& p, double scale, Rng& rng) {
  const PositiveEpsUnitary lambda = random_pos_eps_unitary(p, scale, rng);
  const ComplexMatrix& b = p.range_basis();
  const ComplexMatrix& k = p.kernel_basis();
  ComplexMatrix w(p.dim(), p.dim());
  if (b.cols() > 0) w += multiply_adjoint(b * random_unitary(b.cols(), rng), b);
  if (k.cols() > 0) w += multiply_adjoint(k * random_unitary(k.cols(), rng), k);
  return lambda.mat() * w;
}

DiskPoint Y(const PositiveEpsUnitary& lambda, const Tolerance& tol) {
  const Projection& p = lambda.context();
  return DiskPoint{classify(lambda.sqrt() * p.mat(), p, tol), lambda};
}

DiskMembership disk_membership(const ProjectivePoint& m, const Tolerance& tol) {
  DiskMembership out;
  const Projection& p = m.context();
  const double dc = op_norm(m.range().mat() - p.mat());
  out.by_chordal = dc < std::numbers::sqrt2 / 2.0 - tol.eq_tol;
  out.by_spherical = dc < 1.0 - tol.eq_tol && std::asin(dc) < std::numbers::pi / 4.0 - tol.eq_tol;
  out.by_dk = is_finite_point(m, tol) && chart_inv(m, tol).norm() < 1.0 - tol.eq_tol;
  return out;
}

bool in_disk(const ProjectivePoint& m, const Tolerance& tol) {
  return is_finite_point(m, tol) && chart_inv(m, tol).norm() < 1.0 - tol.eq_tol;
}

PositiveEpsUnitary Y_inv(const ProjectivePoint& m, const Tolerance& tol) {
  if (!in_disk(m, tol)) fail(ErrorCode::NotInDisk, "point is not in the disk (d_k >= 1)");
  const Projection& p = m.context();
  const std::size_t n = p.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix x = chart_inv(m, tol).mat();

  // d = x·(p − x*x)^{−1/2}, the power taken in pAp.
  const ComplexMatrix& b = p.range_basis();
  ComplexMatrix d(n, n);
  if (b.cols() > 0) {
    const ComplexMatrix xb = x * b;
    const ComplexMatrix h =
        hermitian_part(ComplexMatrix::identity(b.cols()) - adjoint_multiply(xb, xb));
    const ComplexMatrix h_inv_sqrt =
        func_calc([](double v) { return 1.0 / std::sqrt(v); }, h, tol);
    d = multiply_adjoint(xb * h_inv_sqrt, b);
  }
  // λ^{1/2} = [[(p + d*d)^{1/2}, d*], [d, (1 − p + dd*)^{1/2}]].
  const ComplexMatrix cp = p.complement();
  const ComplexMatrix top = p.mat() * sqrt_posdef(id + adjoint_multiply(d, d), tol) * p.mat();
  const ComplexMatrix bottom = cp * sqrt_posdef(id + multiply_adjoint(d, d), tol) * cp;
  const ComplexMatrix s = hermitian_part(top + bottom + d + d.adjoint());
  return PositiveEpsUnitary::from_matrix(hermitian_part(s * s), p, tol);
}

DiskPoint to_disk(const ProjectivePoint& m, const Tolerance& tol) {
  return DiskPoint{m, Y_inv(m, tol)};
}

namespace {
void require_same_disk(const DiskPoint& m, const DiskPoint& n) {
  if (!same_context(m.point.context(), n.point.context(), 1e-12)) {
    fail(ErrorCode::InvalidInput, "disk points belong to different contexts");
  }
}
}  // namespace

double rho(const DiskPoint& m, const DiskPoint& n) {
  require_same_disk(m, n);
  const Projection& p = m.point.context();
  return op_norm(p.complement() * m.lambda.sqrt() * p.symmetry() * n.lambda.sqrt() * p.mat());
}

double d_pc(const DiskPoint& m, const DiskPoint& n) {
  const double r = rho(m, n);
  return r / std::sqrt(1.0 + r * r);
}

double E_n(const DiskPoint& m, const DiskPoint& n) {
  // ½·log((1 + d_pc)/(1 − d_pc)) = artanh(d_pc) = asinh(ρ); the last form
  // does not cancel when d_pc is close to 1.
  return std::asinh(rho(m, n));
}

double d_plus(const PositiveEpsUnitary& mu, const PositiveEpsUnitary& nu) {
  const ComplexMatrix sandwich = hermitian_part(nu.inv_sqrt() * mu.mat() * nu.inv_sqrt());
  const std::vector<double> ev = hermitian_eigenvalues(sandwich);
  double out = 0.0;
  for (double v : ev) {
    if (!(v > 0.0)) fail(ErrorCode::NotPositive, "d_plus: sandwich is not positive definite");
    out = std::max(out, std::abs(std::log(v)));
  }
  return out;
}

double d_plus(const DiskPoint& m, const DiskPoint& n) {
  require_same_disk(m, n);
  return d_plus(m.lambda, n.lambda);
}

PositiveEpsUnitary eps_geodesic(const PositiveEpsUnitary& mu, const PositiveEpsUnitary& nu,
                                double t, const Tolerance& tol) {
  const ComplexMatrix sandwich = hermitian_part(nu.inv_sqrt() * mu.mat() * nu.inv_sqrt());
  const ComplexMatrix powered = power_posdef(sandwich, t, tol);
  return PositiveEpsUnitary::from_matrix(hermitian_part(nu.sqrt() * powered * nu.sqrt()),
                                         nu.context(), tol);
}

DiskPoint eps_action(const ComplexMatrix& u, const DiskPoint& m, const Tolerance& tol) {
  const Projection& p = m.point.context();
  if (!is_eps_unitary(u, EpsSymmetry::from(p), tol)) {
    fail(ErrorCode::NotEpsUnitary, "acting element is not eps-unitary");
  }
  const ComplexMatrix moved = hermitian_part(multiply_adjoint(u * m.lambda.mat(), u));
  return Y(PositiveEpsUnitary::from_matrix(moved, p, tol), tol);
}

namespace {

double cone_length_impl(const std::function<PositiveEpsUnitary(double)>& sample, int resolution,
                        bool parallel) {
  if (resolution < 2) fail(ErrorCode::InvalidInput, "curve resolution must be at least 2");
  const int n = resolution;
  std::vector<std::optional<PositiveEpsUnitary>> pts(static_cast<std::size_t>(n));
  std::vector<double> steps(static_cast<std::size_t>(n - 1));
  std::atomic<bool> bad{false};

  auto eval = [&](int i) {
    try {
      pts[static_cast<std::size_t>(i)] = sample(static_cast<double>(i) / (n - 1));
    } catch (const GeometryError&) {
      bad = true;
    }
  };
  auto step = [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      steps[k] = d_plus(*pts[k + 1], *pts[k]);
    } catch (const GeometryError&) {
      bad = true;
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) eval(i);
    if (bad) fail(ErrorCode::InvalidCurve, "a cone curve sample is invalid");
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n - 1; ++i) step(i);
  } else {
    for (int i = 0; i < n; ++i) eval(i);
    if (bad) fail(ErrorCode::InvalidCurve, "a cone curve sample is invalid");
    for (int i = 0; i < n - 1; ++i) step(i);
  }
  if (bad) fail(ErrorCode::InvalidCurve, "cone curve step failed");
  double total = 0.0;
  for (double s : steps) total += s;
  return total;
}

}  // namespace

double cone_curve_length(const std::function<PositiveEpsUnitary(double)>& sample, int resolution) {
  return cone_length_impl(sample, resolution, true);
}

double cone_curve_length_serial(const std::function<PositiveEpsUnitary(double)>& sample,
                                int resolution) {
  return cone_length_impl(sample, resolution, false);
}

}  // namespace grassgeo
