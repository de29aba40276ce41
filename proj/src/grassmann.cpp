#include "grassgeo/grassmann.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace grassgeo {
namespace {

// e^{tz}·e for an orthonormal basis e of range(p) or ker(p). With a = z·e and
// a*a = v·diag(λ)·v*, e^{tz}·e·v = e·v·cos(t√λ) + a·v·sin(t√λ)/√λ. Both factors
// are smooth in λ, so rounding in the small eigenvalues does not get amplified.
ComplexMatrix rotate_basis(const ComplexMatrix& e, const ComplexMatrix& z, double t, const Tolerance& tol) {
  if (e.cols() == 0) return e;
  // z maps e's span into its complement; dropping the in-span remainder keeps
  // the rotated basis orthonormal.
  const ComplexMatrix ze = z * e;
  const ComplexMatrix a = ze - e * adjoint_multiply(e, ze);
  const HermitianEig eig = hermitian_eig(hermitian_part(adjoint_multiply(a, a)), tol);
  const ComplexMatrix ev = e * eig.eigenvectors;
  const ComplexMatrix av = a * eig.eigenvectors;
  ComplexMatrix out(e.rows(), e.cols());
  for (std::size_t c = 0; c < e.cols(); ++c) {
    const double s = std::sqrt(std::max(eig.eigenvalues[c], 0.0));
    const double x = t * s;
    const double cos_x = std::cos(x);
    const double sin_over = std::abs(x) < 1e-4 ? t * (1.0 - x * x / 6.0 + x * x * x * x / 120.0) : std::sin(x) / s;
    for (std::size_t r = 0; r < e.rows(); ++r) out(r, c) = ev(r, c) * cos_x + av(r, c) * sin_over;
  }
  return out;
}

void require_same_space(const Projection& p, const Projection& q, const char* what) {
  if (p.dim() != q.dim() || p.rank() != q.rank()) {
    fail(ErrorCode::InvalidInput, std::string(what) + ": projections differ in dimension or rank");
  }
}

void require_same_context(const ProjectivePoint& m, const ProjectivePoint& n, const Tolerance& tol) {
  if (!same_context(m.context(), n.context(), tol.eq_tol)) {
    fail(ErrorCode::InvalidInput, "points belong to different contexts");
  }
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& p) {
  return hermitian_part(multiply_adjoint(u * p, u));
}

}  // namespace

TangentVector TangentVector::make(const ComplexMatrix& z, const Projection& p, const Tolerance& tol) {
  if (z.rows() != p.dim() || z.cols() != p.dim()) {
    fail(ErrorCode::InvalidTangent, "tangent shape does not match context");
  }
  require_finite(z, "TangentVector");
  const ComplexMatrix sym = z + z.adjoint();
  // The Frobenius norm bounds the operator norm, so it settles the easy case.
  if (frobenius_norm(sym) >= tol.eq_tol && op_norm(sym) >= tol.eq_tol) {
    fail(ErrorCode::InvalidTangent, "tangent is not anti-Hermitian");
  }
  // ‖p·z·p‖ = ‖e*·z·e‖ for an orthonormal basis e of range(p), likewise for 1 − p.
  const ComplexMatrix& e = p.range_basis();
  const ComplexMatrix& f = p.kernel_basis();
  const ComplexMatrix pzp = adjoint_multiply(e, z * e);
  const ComplexMatrix qzq = adjoint_multiply(f, z * f);
  if (std::max(frobenius_norm(pzp), frobenius_norm(qzq)) >= tol.eq_tol &&
      std::max(op_norm(pzp), op_norm(qzq)) >= tol.eq_tol) {
    fail(ErrorCode::InvalidTangent, "tangent is not p-off-diagonal");
  }
  return TangentVector(z, p);
}

TangentVector TangentVector::from_block(const ComplexMatrix& a, const Projection& p,
                                        const Tolerance& tol) {
  const ComplexMatrix corner = p.complement() * a * p.mat();
  return make(corner - corner.adjoint(), p, tol);
}

TangentVector random_tangent(const Projection& p, double norm, Rng& rng) {
  ComplexMatrix a = random_off_diagonal(p, rng);
  const double na = op_norm(a);
  if (na > 0.0) a *= norm / na;
  return TangentVector::from_block(a, p);
}

double d_chordal(const Projection& p, const Projection& q) {
  require_same_space(p, q, "d_chordal");
  return op_norm(p.mat() - q.mat());
}

double d_chordal(const ProjectivePoint& m, const ProjectivePoint& n, const Tolerance& tol) {
  require_same_context(m, n, tol);
  return d_chordal(m.range(), n.range());
}

double d_spherical(const Projection& p, const Projection& q, const Tolerance& tol) {
  const double dc = d_chordal(p, q);
  if (dc >= 1.0 - tol.eq_tol) {
    fail(ErrorCode::OutOfRange, "chordal distance " + std::to_string(dc) + " is not below 1");
  }
  return std::asin(dc);
}

double d_spherical(const ProjectivePoint& m, const ProjectivePoint& n, const Tolerance& tol) {
  require_same_context(m, n, tol);
  return d_spherical(m.range(), n.range(), tol);
}

Projection geodesic(const Projection& p, const TangentVector& z, double t, const Tolerance& tol) {
  if (!same_context(p, z.context(), tol.eq_tol)) {
    fail(ErrorCode::InvalidTangent, "tangent belongs to a different base projection");
  }
  if (t == 0.0) return p;
  return Projection::from_bases(rotate_basis(p.range_basis(), z.mat(), t, tol),
                                rotate_basis(p.kernel_basis(), z.mat(), t, tol), tol);
}

TangentVector geodesic_log(const Projection& p, const Projection& q, const Tolerance& tol) {
  require_same_space(p, q, "geodesic_log");
  if (d_chordal(p, q) >= 1.0 - tol.eq_tol) {
    fail(ErrorCode::OutOfRange, "geodesic_log requires ‖p − q‖ < 1");
  }
  // ε_q·ε_p = e^{2z}; its spectrum avoids −1 exactly when ‖p − q‖ < 1.
  const ComplexMatrix log = log_unitary(q.symmetry() * p.symmetry(), tol);
  const ComplexMatrix cp = p.complement();
  ComplexMatrix z = 0.5 * anti_hermitian_part(p.mat() * log * cp + cp * log * p.mat());
  TangentVector out = TangentVector::make(z, p, tol);
  const double residual = op_norm(conjugate(exp_m(out.mat()), p.mat()) - q.mat());
  if (residual >= tol.geo_tol) {
    fail(ErrorCode::DomainError, "geodesic_log residual " + std::to_string(residual));
  }
  return out;
}

namespace {

std::vector<double> chord_lengths(const Curve& c, const Tolerance& tol, bool parallel) {
  if (c.resolution < 2) fail(ErrorCode::InvalidInput, "curve resolution must be at least 2");
  const int n = c.resolution;
  std::vector<ComplexMatrix> samples(static_cast<std::size_t>(n));
  std::vector<double> chords(static_cast<std::size_t>(n - 1));
  std::atomic<bool> bad{false};

  auto eval = [&](int i) {
    const double t = static_cast<double>(i) / (n - 1);
    ComplexMatrix s = c.sample(t);
    if (!s.is_square() || !all_finite(s) || !is_hermitian(s, tol.eq_tol) ||
        !is_projection(s, tol.eq_tol)) {
      bad = true;
    }
    samples[static_cast<std::size_t>(i)] = std::move(s);
  };
  auto chord = [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    chords[k] = op_norm(samples[k + 1] - samples[k]);
  };

  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      try {
        eval(i);
      } catch (const GeometryError&) {
        bad = true;
      }
    }
    if (bad) fail(ErrorCode::InvalidCurve, "a curve sample is not a projection");
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n - 1; ++i) {
      try {
        chord(i);
      } catch (const GeometryError&) {
        bad = true;
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      try {
        eval(i);
      } catch (const GeometryError&) {
        bad = true;
      }
    }
    if (bad) fail(ErrorCode::InvalidCurve, "a curve sample is not a projection");
    for (int i = 0; i < n - 1; ++i) chord(i);
  }
  if (bad) fail(ErrorCode::InvalidCurve, "curve samples have inconsistent shapes");
  return chords;
}

double ordered_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

double curve_length(const Curve& c, const Tolerance& tol) {
  return ordered_sum(chord_lengths(c, tol, true));
}

double curve_length_serial(const Curve& c, const Tolerance& tol) {
  return ordered_sum(chord_lengths(c, tol, false));
}

Projection projectivity(const ComplexMatrix& g, const Projection& q, const Tolerance& tol) {
  if (g.rows() != q.dim() || g.cols() != q.dim()) {
    fail(ErrorCode::InvalidInput, "projectivity: dimension mismatch");
  }
  require_finite(g, "projectivity");
  if (min_singular_value(g) <= tol.eq_tol * std::max(1.0, op_norm(g))) {
    fail(ErrorCode::NotInvertible, "projectivity: g is singular");
  }
  const ComplexMatrix r = g * q.mat() * inverse(g);
  const ComplexMatrix skew = r - r.adjoint();
  const ComplexMatrix denom = ComplexMatrix::identity(q.dim()) + adjoint_multiply(skew, skew);
  return Projection::make(hermitian_part(multiply_adjoint(r, r) * inverse(denom)), tol);
}

}  // namespace grassgeo
