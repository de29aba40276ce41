#include "grassgeo/moebius.hpp"

namespace grassgeo {

HpVector HpVector::make(const ComplexMatrix& x, const Projection& p, const Tolerance& tol) {
  if (x.rows() != p.dim() || x.cols() != p.dim()) {
    fail(ErrorCode::InvalidInput, "H_p vector shape does not match context");
  }
  require_finite(x, "HpVector");
  if (op_norm(p.mat() * x) >= tol.eq_tol || op_norm(x * p.complement()) >= tol.eq_tol) {
    fail(ErrorCode::InvalidInput, "matrix is not in (1 - p)Ap");
  }
  return HpVector(x, p);
}

HpVector HpVector::zero(const Projection& p) { return HpVector(ComplexMatrix::zero(p.dim()), p); }

HpVector random_hp_vector(const Projection& p, double norm, Rng& rng) {
  ComplexMatrix x = random_off_diagonal(p, rng);
  const double nx = op_norm(x);
  if (nx > 0.0) x *= norm / nx;
  return HpVector::make(x, p);
}

MoebiusMap MoebiusMap::make(const ComplexMatrix& g, const Projection& p, const Tolerance& tol) {
  if (g.rows() != p.dim() || g.cols() != p.dim()) {
    fail(ErrorCode::InvalidInput, "Moebius map: dimension mismatch");
  }
  require_finite(g, "MoebiusMap");
  if (min_singular_value(g) <= tol.eq_tol * std::max(1.0, op_norm(g))) {
    fail(ErrorCode::NotInvertible, "Moebius map: g is singular");
  }
  const ComplexMatrix& pm = p.mat();
  const ComplexMatrix cp = p.complement();
  return MoebiusMap{g, p, pm * g * pm, pm * g * cp, cp * g * pm, cp * g * cp};
}

ProjectivePoint chart(const HpVector& x, const Tolerance& tol) {
  const Projection& p = x.context();
  return classify(p.mat() + x.mat(), p, tol);
}

bool is_finite_point(const ProjectivePoint& m, const Tolerance& tol) {
  return compressed_min_singular(m.rep(), m.context().range_basis()) > tol.eq_tol;
}

HpVector chart_inv(const ProjectivePoint& m, const Tolerance& tol) {
  const Projection& p = m.context();
  if (!is_finite_point(m, tol)) fail(ErrorCode::NotFinitePoint, "p·v·p is not invertible in pAp");
  const ComplexMatrix v1_inv = compressed_inverse(m.rep(), p.range_basis(), 0.0);
  return HpVector::make(p.complement() * m.rep() * v1_inv, p, tol);
}

double d_k(const ProjectivePoint& m, const ProjectivePoint& n, const Tolerance& tol) {
  if (!same_context(m.context(), n.context(), tol.eq_tol)) {
    fail(ErrorCode::InvalidInput, "d_k: points belong to different contexts");
  }
  return op_norm(chart_inv(m, tol).mat() - chart_inv(n, tol).mat());
}

namespace {
void require_matching(const MoebiusMap& g, const HpVector& b, const Tolerance& tol) {
  if (!same_context(g.context, b.context(), tol.eq_tol)) {
    fail(ErrorCode::InvalidInput, "Moebius map and argument use different projections");
  }
}
}  // namespace

bool moebius_domain(const MoebiusMap& g, const HpVector& b, const Tolerance& tol) {
  require_matching(g, b, tol);
  return compressed_min_singular(g.x + g.y * b.mat(), g.context.range_basis()) > tol.eq_tol;
}

HpVector moebius_apply(const MoebiusMap& g, const HpVector& b, const Tolerance& tol) {
  if (!moebius_domain(g, b, tol)) fail(ErrorCode::OutsideDomain, "x + y·b is not invertible");
  const ComplexMatrix denom_inv =
      compressed_inverse(g.x + g.y * b.mat(), g.context.range_basis(), 0.0);
  return HpVector::make((g.z + g.w * b.mat()) * denom_inv, g.context, tol);
}

HpVector chart_transition(const Projection& q, const Projection& r, const HpVector& x,
                          const Tolerance& tol) {
  if (!same_context(r, x.context(), tol.eq_tol)) {
    fail(ErrorCode::InvalidInput, "chart_transition: x does not live at r");
  }
  if (q.dim() != r.dim() || q.rank() != r.rank()) {
    fail(ErrorCode::InvalidInput, "chart_transition: q and r are not equivalent");
  }
  const ComplexMatrix a = r.mat() + x.mat();
  if (compressed_min_singular(a, q.range_basis()) <= tol.eq_tol) {
    fail(ErrorCode::OutsideDomain, "point lies outside the chart at q");
  }
  const ComplexMatrix inv = compressed_inverse(a, q.range_basis(), 0.0);
  return HpVector::make(q.complement() * a * inv, q, tol);
}

}  // namespace grassgeo
