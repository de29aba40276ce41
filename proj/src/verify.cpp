#include "grassgeo/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <json.hpp>

namespace grassgeo {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCurveSamples = 2000;

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& p) {
  return hermitian_part(multiply_adjoint(u * p, u));
}

double eps_res(const ComplexMatrix& u, const Projection& p) {
  return eps_unitary_residual(u, EpsSymmetry::from(p));
}

double positivity_gap(const ComplexMatrix& a) {
  return hermitian_eigenvalues(a).front() > 0.0 ? 0.0 : 1.0;
}

// e^{z(t)} p e^{−z(t)} with z(t) = t·z + t(1 − t)·w; w = 0 gives the geodesic.
double grassmann_path_length(const Projection& p, const ComplexMatrix& z, const ComplexMatrix& w) {
  const Curve c{[&](double t) { return conjugate(exp_m(t * z + (t * (1.0 - t)) * w), p.mat()); },
                kCurveSamples};
  return curve_length_serial(c);
}

// γ(t)^{1/2}·e^{t(1−t)W}·γ(t)^{1/2}: an ε-unitary congruence of a cone
// element, so it stays in the cone and keeps both endpoints.
double cone_path_length(const PositiveEpsUnitary& mu, const PositiveEpsUnitary& nu,
                        const ComplexMatrix& w) {
  return cone_curve_length_serial(
      [&](double t) {
        const PositiveEpsUnitary g = eps_geodesic(mu, nu, t);
        if (t == 0.0 || t == 1.0) return g;
        const ComplexMatrix bent = hermitian_part(g.sqrt() * exp_m((t * (1.0 - t)) * w) * g.sqrt());
        return PositiveEpsUnitary::from_matrix(bent, nu.context());
      },
      kCurveSamples);
}

ComplexMatrix random_anti_hermitian(std::size_t n, double norm, Rng& rng) {
  ComplexMatrix h = random_hermitian(n, rng);
  const double nh = op_norm(h);
  if (nh > 0.0) h *= norm / nh;
  return cplx(0.0, 1.0) * h;
}

// g whose Möbius domain at p contains b with compression margin ≥ 0.05,
// obtained by resampling.
ComplexMatrix invertible_with_margin(const Projection& p, const HpVector& b, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    ComplexMatrix g = random_invertible(p.dim(), rng, 8.0);
    const MoebiusMap m = MoebiusMap::make(g, p);
    if (compressed_min_singular(m.x + m.y * b.mat(), p.range_basis()) > 0.05) return g;
  }
  return ComplexMatrix::identity(p.dim());
}

ProjectivePoint point_at_angle(const Projection& p, double angle, Rng& rng) {
  return point_from_range(neighbor_at(p, angle, rng), p);
}

std::vector<Property> build_registry() {
  std::vector<Property> r;
  auto add = [&](std::string name, std::string statement, TolKind kind, double fixed, bool expensive,
                 std::function<double(std::size_t, Rng&, const Tolerance&)> f) {
    r.push_back(Property{std::move(name), std::move(statement), kind, fixed, expensive, std::move(f)});
  };

  // linalg
  add("linalg.func_calc_spectrum", "spec f(a) = f(spec a)", TolKind::Eq, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const ComplexMatrix a = random_hermitian(n, rng);
        const auto f = [](double x) { return std::cos(x); };
        std::vector<double> got = hermitian_eigenvalues(func_calc(f, a, tol), tol);
        std::vector<double> want = hermitian_eigenvalues(a, tol);
        for (double& v : want) v = f(v);
        std::sort(want.begin(), want.end());
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(got[i] - want[i]));
        return res;
      });
  add("linalg.polar_residual", "a = u|a|, u unitary", TolKind::Eq, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const ComplexMatrix a = random_invertible(n, rng);
        const Polar pol = polar(a, tol);
        return std::max(op_norm(a - pol.u * pol.pos) / (1.0 + op_norm(a)),
                        op_norm(adjoint_multiply(pol.u, pol.u) - ComplexMatrix::identity(n)));
      });
  add("linalg.log_exp_unitary", "log_unitary(exp z) = z, |z| <= pi - 0.1", TolKind::Geo, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const ComplexMatrix z = random_anti_hermitian(n, rng.uniform(0.0, kPi - 0.1), rng);
        return op_norm(log_unitary(exp_m(z), tol) - z);
      });
  add("linalg.op_norm_laws", "|ab| <= |a||b|, |uav| = |a|", TolKind::Eq, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance&) {
        const ComplexMatrix a = random_gaussian(n, n, rng);
        const ComplexMatrix b = random_gaussian(n, n, rng);
        const ComplexMatrix u = random_unitary(n, rng);
        const ComplexMatrix v = random_unitary(n, rng);
        const double na = op_norm(a);
        return std::max(std::max(0.0, op_norm(a * b) - na * op_norm(b)),
                        std::abs(op_norm(u * a * v) - na));
      });

  // projective-space
  add("projective.class_well_defined", "range of [g p h] = range of [g p], h in G(pAp)", TolKind::Eq,
      0, false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const ComplexMatrix gp = random_invertible(n, rng) * p.mat();
        const ComplexMatrix h = random_pAp_invertible(p, rng);
        return d_chordal(classify(gp * h, p, tol).range(), classify(gp, p, tol).range());
      });
  add("projective.classify_idempotent", "classify(v) = v for v in K_p (exact)", TolKind::Fixed,
      std::numeric_limits<double>::min(), false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const ComplexMatrix v = random_unitary(n, rng) * p.mat();
        return max_abs(classify(v, p, tol).rep() - v);
      });
  add("projective.rank_preserved", "rank [a] = rank p", TolKind::Fixed, 0.5, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const ProjectivePoint m = classify(random_invertible(n, rng) * p.mat(), p, tol);
        return std::abs(static_cast<double>(m.range().rank()) - static_cast<double>(p.rank()));
      });
  add("projective.unitary_extension", "v unitary, [v p] = [g p]", TolKind::Eq, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const ComplexMatrix g = random_invertible(n, rng);
        const ComplexMatrix v = unitary_extension(g, p, tol);
        return std::max(op_norm(adjoint_multiply(v, v) - ComplexMatrix::identity(n)),
                        d_chordal(classify(v * p.mat(), p, tol).range(),
                                  classify(g * p.mat(), p, tol).range()));
      });

  // grassmann-geometry
  add("grassmann.sin_identity", "d_c = sin(d_r) and d_r = |z| on geodesics", TolKind::Fixed, 1e-10,
      false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const double angle = rng.uniform(0.0, std::asin(0.95));
        const Projection q = neighbor_at(p, angle, rng, tol);
        const double dr = d_spherical(p, q, tol);
        return std::max(std::abs(d_chordal(p, q) - std::sin(dr)), std::abs(dr - angle));
      });
  add("grassmann.exp_log_roundtrip", "exp and log are inverse on |z| <= pi/2 - 0.05", TolKind::Geo, 0,
      false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const TangentVector z = random_tangent(p, rng.uniform(0.0, kPi / 2 - 0.05), rng);
        const Projection q = geodesic(p, z, 1.0, tol);
        const TangentVector back = geodesic_log(p, q, tol);
        return std::max(op_norm(back.mat() - z.mat()),
                        d_chordal(geodesic(p, back, 1.0, tol), q));
      });
  add("grassmann.geodesic_length", "discretized geodesic length = arcsin|p - q|", TolKind::Fixed, 1e-4,
      true, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const TangentVector z = random_tangent(p, rng.uniform(0.05, kPi / 2 - 0.05), rng);
        const double len = grassmann_path_length(p, z.mat(), ComplexMatrix::zero(n));
        return std::abs(len - d_spherical(p, geodesic(p, z, 1.0, tol), tol));
      });
  add("grassmann.geodesic_minimality", "perturbed length >= geodesic length", TolKind::Fixed, 1e-6,
      true, [](std::size_t n, Rng& rng, const Tolerance&) {
        const Projection p = random_context(n, rng);
        const TangentVector z = random_tangent(p, rng.uniform(0.05, kPi / 2 - 0.05), rng);
        const TangentVector w = random_tangent(p, rng.uniform(0.0, 1.0), rng);
        const double geo = grassmann_path_length(p, z.mat(), ComplexMatrix::zero(n));
        const double bent = grassmann_path_length(p, z.mat(), w.mat());
        return std::max(0.0, geo - bent);
      });
  add("grassmann.sin_triangle", "|r - w| <= sin(t1 + t2)", TolKind::Fixed, 1e-10, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection r0 = random_context(n, rng);
        const Projection s0 = neighbor_at(r0, rng.uniform(0.0, kPi / 4), rng, tol);
        const Projection w0 = neighbor_at(s0, rng.uniform(0.0, kPi / 4), rng, tol);
        const double t1 = std::asin(d_chordal(r0, s0));
        const double t2 = std::asin(d_chordal(s0, w0));
        return std::max(0.0, d_chordal(r0, w0) - std::sin(t1 + t2));
      });
  add("grassmann.projectivity_action", "T_g T_h = T_gh", TolKind::Geo, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection q = random_context(n, rng);
        const ComplexMatrix g = random_invertible(n, rng);
        const ComplexMatrix h = random_invertible(n, rng);
        return d_chordal(projectivity(g, projectivity(h, q, tol), tol), projectivity(g * h, q, tol));
      });
  add("grassmann.projectivity_range", "T_g(q) = range projection of g q; T_u(q) = u q u*",
      TolKind::Geo, 0, false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection q = random_context(n, rng);
        const ComplexMatrix g = random_invertible(n, rng);
        const ComplexMatrix u = random_unitary(n, rng);
        const double svd = op_norm(projectivity(g, q, tol).mat() - range_projection(g * q.mat(), q.rank()));
        const double uni = op_norm(projectivity(u, q, tol).mat() - conjugate(u, q.mat()));
        return std::max(svd, uni);
      });
  add("grassmann.chordal_unitary_invariance", "d_c(u m, u n) = d_c(m, n)", TolKind::Eq, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const Projection q = neighbor_at(p, rng.uniform(0.0, kPi / 2), rng, tol);
        const ComplexMatrix u = random_unitary(n, rng);
        return std::abs(op_norm(conjugate(u, p.mat()) - conjugate(u, q.mat())) - d_chordal(p, q));
      });

  // finite-moebius
  add("moebius.finiteness_agreement", "pap invertible <=> |p - q| < 1 <=> d_r < pi/2", TolKind::Fixed,
      0.5, false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const bool finite = rng.uniform() < 0.5;
        const ProjectivePoint m = finite
                                      ? point_at_angle(p, rng.uniform(0.0, std::asin(1.0 - 1e-6)), rng)
                                      : random_nonfinite_point(p, rng, tol);
        const bool a = is_finite_point(m, tol);
        const bool b = d_chordal(m.range(), p) < 1.0 - tol.eq_tol;
        bool c = true;
        try {
          c = d_spherical(m.range(), p, tol) < kPi / 2;
        } catch (const GeometryError& e) {
          if (e.code() != ErrorCode::OutOfRange) throw;
          c = false;
        }
        return (a == b && b == c && a == finite) ? 0.0 : 1.0;
      });
  add("moebius.chart_roundtrip", "chart and chart_inv are mutually inverse", TolKind::Geo, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const HpVector x = random_hp_vector(p, rng.uniform(0.0, 3.0), rng);
        const double r1 = op_norm(chart_inv(chart(x, tol), tol).mat() - x.mat());
        const ProjectivePoint m = point_at_angle(p, rng.uniform(0.0, kPi / 2 - 0.01), rng);
        const double r2 = d_chordal(chart(chart_inv(m, tol), tol).range(), m.range());
        return std::max(r1, r2);
      });
  add("moebius.dk_tan_identity", "d_k(m,[p]) = tan d_r, d_c = sin d_r (|p - q| <= 0.95)",
      TolKind::Fixed, 1e-9, false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const ProjectivePoint m = point_at_angle(p, rng.uniform(0.0, std::asin(0.95)), rng);
        const ProjectivePoint base = classify(p.mat(), p, tol);
        const double dr = d_spherical(m, base, tol);
        return std::max(std::abs(d_k(m, base, tol) - std::tan(dr)),
                        std::abs(d_chordal(m, base, tol) - std::sin(dr)));
      });
  add("moebius.identity_map", "M_I = id", TolKind::Fixed, 1e-12, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const HpVector b = random_hp_vector(p, rng.uniform(0.0, 3.0), rng);
        const MoebiusMap id = MoebiusMap::make(ComplexMatrix::identity(n), p, tol);
        return op_norm(moebius_apply(id, b, tol).mat() - b.mat());
      });
  add("moebius.projectivity_consistency", "M_g = chart_inv . T_g . chart", TolKind::Geo, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const HpVector b = random_hp_vector(p, rng.uniform(0.0, 2.0), rng);
        const ComplexMatrix g = invertible_with_margin(p, b, rng);
        const HpVector direct = moebius_apply(MoebiusMap::make(g, p, tol), b, tol);
        const Projection image = projectivity(g, chart(b, tol).range(), tol);
        const HpVector routed = chart_inv(point_from_range(image, p, tol), tol);
        return op_norm(direct.mat() - routed.mat());
      });
  add("moebius.domain_agreement", "b in D(g) <=> T_g(k(b)) finite", TolKind::Fixed, 0.5, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const HpVector b = random_hp_vector(p, rng.uniform(0.0, 2.0), rng);
        const ProjectivePoint m = chart(b, tol);
        ComplexMatrix g = random_invertible(n, rng);
        const bool outside = rng.uniform() < 0.5;
        if (outside) {
          // A unitary carrying ran k(b) onto the range of a non-finite point.
          const ProjectivePoint bad = random_nonfinite_point(p, rng, tol);
          g = multiply_adjoint(bad.range().range_basis(), m.range().range_basis()) +
              multiply_adjoint(bad.range().kernel_basis(), m.range().kernel_basis());
        }
        const bool dom = moebius_domain(MoebiusMap::make(g, p, tol), b, tol);
        const bool fin = is_finite_point(point_from_range(projectivity(g, m.range(), tol), p, tol), tol);
        return (dom == fin && dom != outside) ? 0.0 : 1.0;
      });
  add("moebius.composition", "M_g M_h = M_gh on nested domains", TolKind::Geo, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const HpVector b = random_hp_vector(p, rng.uniform(0.0, 2.0), rng);
        const ComplexMatrix h = invertible_with_margin(p, b, rng);
        const HpVector hb = moebius_apply(MoebiusMap::make(h, p, tol), b, tol);
        const ComplexMatrix g = invertible_with_margin(p, hb, rng);
        const HpVector lhs = moebius_apply(MoebiusMap::make(g, p, tol), hb, tol);
        const HpVector rhs = moebius_apply(MoebiusMap::make(g * h, p, tol), b, tol);
        return op_norm(lhs.mat() - rhs.mat());
      });
  add("moebius.transition_formula", "(1-q)(r+x)q (q(r+x)q)^-1 = chart composition", TolKind::Geo, 0,
      false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection c = random_context(n, rng);
        const Projection r0 = neighbor_at(c, rng.uniform(0.0, kPi / 8), rng, tol);
        const Projection q0 = neighbor_at(c, rng.uniform(0.0, kPi / 8), rng, tol);
        const Projection m0 = neighbor_at(c, rng.uniform(0.0, kPi / 8), rng, tol);
        const HpVector x = chart_inv(point_from_range(m0, r0, tol), tol);
        const HpVector oracle = chart_inv(point_from_range(m0, q0, tol), tol);
        return op_norm(chart_transition(q0, r0, x, tol).mat() - oracle.mat());
      });
  add("moebius.transition_cocycle", "T(s->q) T(r->s) = T(r->q)", TolKind::Geo, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection c = random_context(n, rng);
        const Projection r0 = neighbor_at(c, rng.uniform(0.0, kPi / 8), rng, tol);
        const Projection s0 = neighbor_at(c, rng.uniform(0.0, kPi / 8), rng, tol);
        const Projection q0 = neighbor_at(c, rng.uniform(0.0, kPi / 8), rng, tol);
        const Projection m0 = neighbor_at(c, rng.uniform(0.0, kPi / 8), rng, tol);
        const HpVector x = chart_inv(point_from_range(m0, r0, tol), tol);
        const HpVector two = chart_transition(q0, s0, chart_transition(s0, r0, x, tol), tol);
        return op_norm(two.mat() - chart_transition(q0, r0, x, tol).mat());
      });

  // poincare-disk
  add("disk.block_form", "p lam p = cosh|x|, (1-p) lam p = x sinh|x|/|x|, |(1-p) lam p| = sinh|x|",
      TolKind::Geo, 0, false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const PositiveEpsUnitary lam = random_pos_eps_unitary(p, 2.0, rng, tol);
        const ComplexMatrix& x = lam.xparam().mat();
        const ComplexMatrix xx = hermitian_part(adjoint_multiply(x, x));
        const ComplexMatrix ch =
            func_calc([](double s) { return std::cosh(std::sqrt(std::max(s, 0.0))); }, xx, tol);
        const ComplexMatrix shc = func_calc(
            [](double s) {
              const double r = std::sqrt(std::max(s, 0.0));
              return r < 1e-8 ? 1.0 + s / 6.0 : std::sinh(r) / r;
            },
            xx, tol);
        const ComplexMatrix cp = p.complement();
        const double r1 = op_norm(p.mat() * lam.mat() * p.mat() - p.mat() * ch * p.mat());
        const double r2 = op_norm(cp * lam.mat() * p.mat() - x * shc);
        const double r3 = std::abs(op_norm(cp * lam.mat() * p.mat()) - std::sinh(op_norm(x)));
        return std::max({r1, r2, r3});
      });
  add("disk.cone_closure", "u in U_eps => u*, u^-1, |u| in U_eps; e^X and p-commuting unitaries",
      TolKind::Eq, 0, false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const ComplexMatrix u = random_eps_unitary(p, 1.0, rng) * random_eps_unitary(p, 1.0, rng);
        const ComplexMatrix ex = exp_m(random_eps_anticommuting(p, rng.uniform(0.0, 2.0), rng));
        return std::max({eps_res(u, p), eps_res(u.adjoint(), p), eps_res(inverse(u), p),
                         eps_res(sqrt_posdef(hermitian_part(adjoint_multiply(u, u)), tol), p),
                         eps_res(ex, p), eps_res(random_p_commuting_unitary(p, rng), p)});
      });
  add("disk.power_stability", "lam^t in U_eps+ for t in {-1, 1/2, 2, 0.3}; lam eps lam = eps",
      TolKind::Eq, 0, false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const PositiveEpsUnitary lam = random_pos_eps_unitary(p, 1.5, rng, tol);
        double res = 0.0;
        for (double t : {-1.0, 0.5, 2.0, 0.3}) {
          const ComplexMatrix lt = power_posdef(lam.mat(), t, tol);
          res = std::max({res, eps_res(lt, p), positivity_gap(lt)});
        }
        const double nl = op_norm(lam.mat());
        const ComplexMatrix eps = p.symmetry();
        return std::max(res, op_norm(lam.mat() * eps * lam.mat() - eps) / (nl * nl));
      });
  add("disk.metric_chain", "at [p]: d_pc = d_k, rho = sinh(|x|/2), 2 E_n = d_plus = |x|",
      TolKind::Geo, 0, false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const DiskPoint m = random_disk_point(p, 3.0, rng, tol);
        const DiskPoint o = Y(PositiveEpsUnitary::from_parameter(HpVector::zero(p)), tol);
        const double nx = m.lambda.xparam().norm();
        return std::max({std::abs(d_pc(m, o) - d_k(m.point, o.point, tol)),
                         std::abs(rho(m, o) - std::sinh(nx / 2.0)),
                         std::abs(2.0 * E_n(m, o) - d_plus(m, o)), std::abs(d_plus(m, o) - nx)});
      });
  add("disk.hyperbolic_identity", "2 E_n = d_plus", TolKind::Geo, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const DiskPoint m = random_disk_point(p, 2.0, rng, tol);
        const DiskPoint k = random_disk_point(p, 2.0, rng, tol);
        return std::abs(2.0 * E_n(m, k) - d_plus(m, k));
      });
  add("disk.eps_invariance", "rho, d_pc, E_n, d_plus invariant under U_eps", TolKind::Geo, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const DiskPoint m = random_disk_point(p, 1.5, rng, tol);
        const DiskPoint k = random_disk_point(p, 1.5, rng, tol);
        const ComplexMatrix u = random_eps_unitary(p, 1.0, rng);
        const DiskPoint um = eps_action(u, m, tol);
        const DiskPoint uk = eps_action(u, k, tol);
        return std::max({std::abs(rho(um, uk) - rho(m, k)), std::abs(d_pc(um, uk) - d_pc(m, k)),
                         std::abs(E_n(um, uk) - E_n(m, k)), std::abs(d_plus(um, uk) - d_plus(m, k))});
      });
  add("disk.Y_roundtrip", "Y_inv Y = id, Y Y_inv = id", TolKind::Geo, 0, false,
      [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const PositiveEpsUnitary lam = random_pos_eps_unitary(p, 2.0, rng, tol);
        const double r1 = op_norm(Y_inv(Y(lam, tol).point, tol).mat() - lam.mat()) / op_norm(lam.mat());
        const ProjectivePoint m = point_at_angle(p, rng.uniform(0.0, kPi / 4 - 0.05), rng);
        const double r2 = d_chordal(Y(Y_inv(m, tol), tol).point.range(), m.range());
        return std::max(r1, r2);
      });
  add("disk.membership_agreement", "d_k < 1 <=> d_c < sqrt2/2 <=> d_r < pi/4", TolKind::Fixed, 0.5,
      false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        double angle = rng.uniform(0.0, kPi / 2 - 1e-3);
        while (std::abs(angle - kPi / 4) < 1e-6) angle = rng.uniform(0.0, kPi / 2 - 1e-3);
        const ProjectivePoint m = point_at_angle(p, angle, rng);
        const DiskMembership dm = disk_membership(m, tol);
        const bool want = angle < kPi / 4;
        return (dm.by_dk == want && dm.by_chordal == want && dm.by_spherical == want &&
                in_disk(m, tol) == want)
                   ? 0.0
                   : 1.0;
      });
  add("disk.cone_geodesic_closure", "gamma(t) in U_eps+, gamma(0) = nu, gamma(1) = mu", TolKind::Eq, 0,
      false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const PositiveEpsUnitary mu = random_pos_eps_unitary(p, 1.5, rng, tol);
        const PositiveEpsUnitary nu = random_pos_eps_unitary(p, 1.5, rng, tol);
        double res = 0.0;
        for (int i = 0; i < 50; ++i) {
          const PositiveEpsUnitary g = eps_geodesic(mu, nu, i / 49.0, tol);
          res = std::max({res, eps_res(g.mat(), p), positivity_gap(g.mat())});
        }
        const double e0 = op_norm(eps_geodesic(mu, nu, 0.0, tol).mat() - nu.mat()) / op_norm(nu.mat());
        const double e1 = op_norm(eps_geodesic(mu, nu, 1.0, tol).mat() - mu.mat()) / op_norm(mu.mat());
        return std::max({res, e0, e1});
      });
  add("disk.cone_geodesic_additivity", "d_plus(gamma(0), gamma(t)) = t d_plus(mu, nu), midpoint",
      TolKind::Geo, 0, false, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const PositiveEpsUnitary mu = random_pos_eps_unitary(p, 1.5, rng, tol);
        const PositiveEpsUnitary nu = random_pos_eps_unitary(p, 1.5, rng, tol);
        const double d = d_plus(mu, nu);
        double res = 0.0;
        for (double t : {0.25, 0.8}) {
          res = std::max(res, std::abs(d_plus(nu, eps_geodesic(mu, nu, t, tol)) - t * d));
        }
        const PositiveEpsUnitary mid = eps_geodesic(mu, nu, 0.5, tol);
        return std::max({res, std::abs(d_plus(mid, mu) - d / 2), std::abs(d_plus(mid, nu) - d / 2)});
      });
  add("disk.cone_geodesic_length", "discretized d_plus length of gamma = d_plus(mu, nu)",
      TolKind::Fixed, 1e-4, true, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const PositiveEpsUnitary mu = random_pos_eps_unitary(p, 1.5, rng, tol);
        const PositiveEpsUnitary nu = random_pos_eps_unitary(p, 1.5, rng, tol);
        const double len = cone_path_length(mu, nu, ComplexMatrix::zero(n));
        return std::abs(len - d_plus(mu, nu));
      });
  add("disk.cone_geodesic_minimality", "perturbed cone path length >= d_plus(mu, nu)", TolKind::Fixed,
      1e-6, true, [](std::size_t n, Rng& rng, const Tolerance& tol) {
        const Projection p = random_context(n, rng);
        const PositiveEpsUnitary mu = random_pos_eps_unitary(p, 1.5, rng, tol);
        const PositiveEpsUnitary nu = random_pos_eps_unitary(p, 1.5, rng, tol);
        const ComplexMatrix w = random_eps_anticommuting(p, rng.uniform(0.0, 1.0), rng);
        const double geo = cone_path_length(mu, nu, ComplexMatrix::zero(n));
        const double bent = cone_path_length(mu, nu, w);
        return std::max(0.0, geo - bent);
      });

  std::sort(r.begin(), r.end(), [](const Property& a, const Property& b) { return a.name < b.name; });
  return r;
}

struct Task {
  std::size_t prop;
  std::size_t dim;
  int trial;
};

struct Outcome {
  double residual = 0.0;
  bool error = false;
};

Outcome evaluate(const Property& prop, const RunConfig& cfg, std::size_t dim, int trial) {
  Rng rng(derive_seed(cfg.seed, prop.name, dim, static_cast<std::uint64_t>(trial)));
  try {
    const double r = prop.trial(dim, rng, cfg.tol);
    if (!std::isfinite(r) || r < 0.0) return {0.0, true};
    return {r, false};
  } catch (const std::exception&) {
    return {0.0, true};
  }
}

std::vector<PropertyRecord> run_all(const std::vector<const Property*>& props, const RunConfig& cfg,
                                    bool parallel) {
  cfg.validate();
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < props.size(); ++i)
    for (std::size_t dim : cfg.dims)
      for (int t = 0; t < props[i]->trial_count(cfg.trials); ++t) tasks.push_back({i, dim, t});

  std::vector<Outcome> out(tasks.size());
  const auto count = static_cast<long>(tasks.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      const Task& task = tasks[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = evaluate(*props[task.prop], cfg, task.dim, task.trial);
    }
  } else {
    for (long i = 0; i < count; ++i) {
      const Task& task = tasks[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = evaluate(*props[task.prop], cfg, task.dim, task.trial);
    }
  }

  std::vector<PropertyRecord> records(props.size());
  for (std::size_t i = 0; i < props.size(); ++i) {
    records[i].name = props[i]->name;
    records[i].paper_ref = props[i]->statement;
    records[i].tolerance = props[i]->threshold(cfg.tol);
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    PropertyRecord& rec = records[tasks[i].prop];
    ++rec.trials;
    if (out[i].error) {
      ++rec.errors;
    } else {
      rec.max_residual = std::max(rec.max_residual, out[i].residual);
    }
  }
  for (auto& rec : records) rec.pass = rec.errors == 0 && rec.max_residual < rec.tolerance;
  return records;
}

Report run_report(const RunConfig& cfg, bool parallel) {
  std::vector<const Property*> props;
  for (const Property& p : properties()) props.push_back(&p);
  Report rep{cfg, run_all(props, cfg, parallel)};
  std::sort(rep.records.begin(), rep.records.end(),
            [](const PropertyRecord& a, const PropertyRecord& b) { return a.name < b.name; });
  return rep;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt_double(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

}  // namespace

void RunConfig::validate() const {
  if (trials < 1) fail(ErrorCode::InvalidInput, "trials must be at least 1");
  if (dims.empty()) fail(ErrorCode::InvalidInput, "dims must not be empty");
  for (std::size_t d : dims) {
    if (d < 2) fail(ErrorCode::InvalidInput, "every dimension must be at least 2");
    if (d > 64) fail(ErrorCode::InvalidInput, "dimensions above 64 are not supported");
  }
  tol.validate();
}

double Property::threshold(const Tolerance& tol) const {
  switch (kind) {
    case TolKind::Eq:
      return tol.eq_tol;
    case TolKind::Geo:
      return tol.geo_tol;
    case TolKind::Fixed:
      break;
  }
  return fixed_tol;
}

int Property::trial_count(int trials) const { return expensive ? std::max(1, trials / 10) : trials; }

bool Report::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const PropertyRecord& r) { return r.pass; });
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = config.seed;
  j["dims"] = config.dims;
  j["trials"] = config.trials;
  j["eq_tol"] = config.tol.eq_tol;
  j["geo_tol"] = config.tol.geo_tol;
  j["all_pass"] = all_pass();
  nlohmann::ordered_json props = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["paper_ref"] = r.paper_ref;
    e["trials"] = r.trials;
    e["max_residual"] = r.max_residual;
    e["tolerance"] = r.tolerance;
    e["errors"] = r.errors;
    e["pass"] = r.pass;
    props.push_back(std::move(e));
  }
  j["properties"] = std::move(props);
  return j.dump(2) + "\n";
}

std::string Report::to_csv() const {
  std::string out = "name,paper_ref,trials,max_residual,tolerance,errors,pass\n";
  for (const auto& r : records) {
    out += r.name + "," + csv_quote(r.paper_ref) + "," + std::to_string(r.trials) + "," +
           fmt_double(r.max_residual) + "," + fmt_double(r.tolerance) + "," +
           std::to_string(r.errors) + "," + (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

const std::vector<Property>& properties() {
  static const std::vector<Property> registry = build_registry();
  return registry;
}

PropertyRecord run_property(const Property& prop, const RunConfig& cfg, bool parallel) {
  return run_all({&prop}, cfg, parallel).front();
}

Report run_verify(const RunConfig& cfg) { return run_report(cfg, true); }

Report run_verify_serial(const RunConfig& cfg) { return run_report(cfg, false); }

}  // namespace grassgeo
