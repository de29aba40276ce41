// Acceptance suite: one PASS/FAIL line per criterion. Counts, tolerances and
// time limits are fixed here and independent of any RunConfig.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "grassgeo/instances.hpp"
#include "oracles.hpp"

using namespace grassgeo;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20240601;
const std::vector<std::size_t> kDims{2, 3, 4, 5, 6, 7, 8};

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Max {
  double value = 0.0;
  void operator()(double r) { value = std::isfinite(r) ? std::max(value, r) : INFINITY; }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s  %2d  %-44s %s; %.2f s (limit %.0f s)%s\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(),
              secs, limit_s, in_time ? "" : " TIME EXCEEDED");
  std::fflush(stdout);
}

Rng rng_for(const char* name, std::size_t dim, std::uint64_t trial) {
  return Rng(derive_seed(kSeed, name, dim, trial));
}

// Length of t -> exp(t z + t(1-t) w) p exp(-(t z + t(1-t) w)); w = 0 gives the geodesic.
double grassmann_length(const Projection& p, const ComplexMatrix& z, const ComplexMatrix& w) {
  return curve_length(Curve{[&](double t) {
                              return geodesic(p, TangentVector::make(t * z + (t * (1.0 - t)) * w, p), 1.0).mat();
                            },
                            2000});
}

ProjectivePoint at_angle(const Projection& p, double angle, Rng& rng) {
  return point_from_range(neighbor_at(p, angle, rng), p);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  criterion(1, "metric identity d_c = sin(d_r)", 5.0, [] {
    Max res;
    for (std::size_t n : kDims) {
      for (int i = 0; i < 500; ++i) {
        Rng rng = rng_for("acc.1", n, i);
        const Projection p = random_context(n, rng);
        // d_r is the length of the geodesic the pair was built from.
        const double angle = rng.uniform(0.0, std::asin(0.95));
        const Projection q = neighbor_at(p, angle, rng);
        res(std::abs(d_chordal(p, q) - std::sin(angle)));
        res(std::abs(d_chordal(p, q) - std::sin(d_spherical(p, q))));
      }
    }
    return Outcome{res.value < 1e-10, fmt("3500 pairs, max residual %.3e (tol 1e-10)", res.value)};
  });

  criterion(2, "geodesic exp/log round trips", 10.0, [] {
    Max res;
    for (std::size_t n : kDims) {
      for (int i = 0; i < 500; ++i) {
        Rng rng = rng_for("acc.2", n, i);
        const Projection p = random_context(n, rng);
        const TangentVector z = random_tangent(p, rng.uniform(0.0, kPi / 2 - 0.05), rng);
        const Projection q = geodesic(p, z, 1.0);
        const TangentVector back = geodesic_log(p, q);
        res(op_norm(back.mat() - z.mat()));
        res(op_norm(geodesic(p, back, 1.0).mat() - q.mat()));
      }
    }
    return Outcome{res.value < 1e-8, fmt("3500 tangents, max residual %.3e (tol 1e-8)", res.value)};
  });

  criterion(3, "geodesic minimality and length", 60.0, [] {
    Max len_res;
    Max deficit;
    for (int pair = 0; pair < 100; ++pair) {
      const std::size_t n = kDims[pair % kDims.size()];
      Rng rng = rng_for("acc.3", n, pair);
      const Projection p = random_context(n, rng);
      const TangentVector z = random_tangent(p, rng.uniform(0.05, kPi / 2 - 0.05), rng);
      const Projection q = geodesic(p, z, 1.0);
      const ComplexMatrix zero = ComplexMatrix::zero(n);
      const double geo = grassmann_length(p, z.mat(), zero);
      len_res(std::abs(geo - std::asin(d_chordal(p, q))));
      for (int k = 0; k < 20; ++k) {
        const TangentVector w = random_tangent(p, rng.uniform(0.0, 1.0), rng);
        deficit(std::max(0.0, geo - grassmann_length(p, z.mat(), w.mat())));
      }
    }
    return Outcome{len_res.value < 1e-4 && deficit.value < 1e-6,
                   fmt("100 pairs x 20 paths, N=2000: length error %.3e (tol 1e-4), max shortfall %.3e (tol 1e-6)",
                       len_res.value, deficit.value)};
  });

  criterion(4, "chart identities", 10.0, [] {
    int disagree = 0;
    Max tan_res;
    for (std::size_t n : kDims) {
      for (int i = 0; i < 500; ++i) {
        Rng rng = rng_for("acc.4", n, i);
        const Projection p = random_context(n, rng);
        const Tolerance tol;
        const bool finite = i % 2 == 0;
        // Finite points keep a 1e-6 margin from chordal distance 1; the others
        // sit exactly on it.
        const ProjectivePoint m = finite ? at_angle(p, rng.uniform(0.0, std::asin(1.0 - 1e-6)), rng)
                                         : random_nonfinite_point(p, rng);
        const bool a = is_finite_point(m, tol);
        const bool b = d_chordal(m.range(), p) < 1.0 - tol.eq_tol;
        bool c = false;
        try {
          c = d_spherical(m.range(), p) < kPi / 2;
        } catch (const GeometryError& e) {
          if (e.code() != ErrorCode::OutOfRange) throw;
        }
        if (!(a == finite && b == finite && c == finite)) ++disagree;

        const double angle = rng.uniform(0.0, std::asin(0.95));
        const ProjectivePoint k = at_angle(p, angle, rng);
        const ProjectivePoint o = classify(p.mat(), p);
        tan_res(std::abs(d_k(k, o) - std::tan(angle)));
        tan_res(std::abs(d_k(k, o) - std::tan(d_spherical(k, o))));
      }
    }
    return Outcome{disagree == 0 && tan_res.value < 1e-9,
                   fmt("3500 points, %d disagreements; d_k vs tan(d_r) max %.3e (tol 1e-9)", disagree,
                       tan_res.value)};
  });

  criterion(5, "Moebius laws", 10.0, [] {
    Max id_res, comp_res, cons_res;
    int triples = 0, draws = 0;
    while (triples < 200) {
      const std::size_t n = kDims[draws % kDims.size()];
      Rng rng = rng_for("acc.5", n, draws++);
      const Projection p = random_context(n, rng);
      const HpVector b = random_hp_vector(p, rng.uniform(0.0, 2.0), rng);
      id_res(op_norm(moebius_apply(MoebiusMap::make(ComplexMatrix::identity(n), p), b).mat() - b.mat()));
      const ComplexMatrix g = random_invertible(n, rng, 8.0);
      const ComplexMatrix h = random_invertible(n, rng, 8.0);
      const MoebiusMap mg = MoebiusMap::make(g, p), mh = MoebiusMap::make(h, p);
      const auto margin = [&](const MoebiusMap& m, const HpVector& x) {
        return compressed_min_singular(m.x + m.y * x.mat(), p.range_basis());
      };
      // Nested domains: b ∈ D(h) and M_h(b) ∈ D(g), each with margin 0.05.
      if (margin(mh, b) < 0.05) continue;
      const HpVector hb = moebius_apply(mh, b);
      if (margin(mg, hb) < 0.05) continue;
      ++triples;
      comp_res(op_norm(moebius_apply(mg, hb).mat() - moebius_apply(MoebiusMap::make(g * h, p), b).mat()));
      const Projection image = projectivity(h, chart(b).range());
      cons_res(op_norm(hb.mat() - chart_inv(point_from_range(image, p)).mat()));
    }
    return Outcome{id_res.value < 1e-12 && comp_res.value < 1e-8 && cons_res.value < 1e-8,
                   fmt("200 triples (%d drawn): M_I %.3e (tol 1e-12), composition %.3e, consistency %.3e (tol 1e-8)",
                       draws, id_res.value, comp_res.value, cons_res.value)};
  });

  criterion(6, "chart transition formula and cocycle", 10.0, [] {
    Max formula, cocycle;
    for (int i = 0; i < 200; ++i) {
      const std::size_t n = kDims[i % kDims.size()];
      Rng rng = rng_for("acc.6", n, i);
      const Projection c = random_context(n, rng);
      const Projection r = neighbor_at(c, rng.uniform(0.0, kPi / 8), rng);
      const Projection s = neighbor_at(c, rng.uniform(0.0, kPi / 8), rng);
      const Projection q = neighbor_at(c, rng.uniform(0.0, kPi / 8), rng);
      const Projection m = neighbor_at(c, rng.uniform(0.0, kPi / 8), rng);
      const HpVector x = chart_inv(point_from_range(m, r));
      const HpVector direct = chart_transition(q, r, x);
      formula(op_norm(direct.mat() - chart_inv(point_from_range(m, q)).mat()));
      cocycle(op_norm(chart_transition(q, s, chart_transition(s, r, x)).mat() - direct.mat()));
    }
    return Outcome{formula.value < 1e-8 && cocycle.value < 1e-7,
                   fmt("200 triples: formula %.3e (tol 1e-8), cocycle %.3e (tol 1e-7)", formula.value,
                       cocycle.value)};
  });

  criterion(7, "hyperbolic identity 2 E_n = d_plus", 15.0, [] {
    Max hyp, pc;
    for (std::size_t n : kDims) {
      for (int i = 0; i < 500; ++i) {
        Rng rng = rng_for("acc.7", n, i);
        const Projection p = random_context(n, rng);
        const DiskPoint m = random_disk_point(p, 2.0, rng);
        const DiskPoint k = random_disk_point(p, 2.0, rng);
        hyp(std::abs(2.0 * E_n(m, k) - d_plus(m, k)));
        const DiskPoint o = Y(PositiveEpsUnitary::from_parameter(HpVector::zero(p)));
        pc(std::abs(d_pc(m, o) - d_k(m.point, o.point)));
      }
    }
    return Outcome{hyp.value < 1e-8 && pc.value < 1e-9,
                   fmt("3500 pairs: |2E_n - d_plus| %.3e (tol 1e-8), |d_pc - d_k| at [p] %.3e (tol 1e-9)",
                       hyp.value, pc.value)};
  });

  criterion(8, "invariance under eps-unitary actions", 10.0, [] {
    Max res;
    for (std::size_t n : kDims) {
      for (int i = 0; i < 100; ++i) {
        Rng rng = rng_for("acc.8", n, i);
        const Projection p = random_context(n, rng);
        const DiskPoint m = random_disk_point(p, 1.5, rng);
        const DiskPoint k = random_disk_point(p, 1.5, rng);
        const ComplexMatrix u = random_eps_unitary(p, 1.0, rng);
        const DiskPoint um = eps_action(u, m), uk = eps_action(u, k);
        res(std::abs(rho(um, uk) - rho(m, k)));
        res(std::abs(d_pc(um, uk) - d_pc(m, k)));
        res(std::abs(E_n(um, uk) - E_n(m, k)));
        res(std::abs(d_plus(um, uk) - d_plus(m, k)));
      }
    }
    return Outcome{res.value < 1e-8, fmt("700 actions, max change %.3e (tol 1e-8)", res.value)};
  });

  criterion(9, "cone geodesics", 30.0, [] {
    Max closure, additivity, length;
    for (std::size_t n : kDims) {
      for (int i = 0; i < 10; ++i) {
        Rng rng = rng_for("acc.9", n, i);
        const Projection p = random_context(n, rng);
        const EpsSymmetry eps = EpsSymmetry::from(p);
        const PositiveEpsUnitary mu = random_pos_eps_unitary(p, 1.5, rng);
        const PositiveEpsUnitary nu = random_pos_eps_unitary(p, 1.5, rng);
        for (int s = 0; s < 50; ++s) {
          const ComplexMatrix g = eps_geodesic(mu, nu, rng.uniform()).mat();
          closure(eps_unitary_residual(g, eps));
          closure(hermitian_eigenvalues(g).front() > 0.0 ? 0.0 : 1.0);
        }
        const double d = d_plus(mu, nu);
        const double t = rng.uniform();
        additivity(std::abs(d_plus(nu, eps_geodesic(mu, nu, t)) - t * d));
        const PositiveEpsUnitary mid = eps_geodesic(mu, nu, 0.5);
        additivity(std::abs(d_plus(mid, mu) - d / 2));
        additivity(std::abs(d_plus(mid, nu) - d / 2));
        if (i < 2) {
          length(std::abs(cone_curve_length([&](double s) { return eps_geodesic(mu, nu, s); }, 2000) - d));
        }
      }
    }
    return Outcome{closure.value < 1e-9 && additivity.value < 1e-8 && length.value < 1e-4,
                   fmt("70 pairs x 50 t: closure %.3e (tol 1e-9), additivity %.3e (tol 1e-8), "
                       "14 curves N=2000 length %.3e (tol 1e-4)",
                       closure.value, additivity.value, length.value)};
  });

  criterion(10, "range-projection formula vs SVD oracle", 5.0, [] {
    Max res;
    for (int i = 0; i < 300; ++i) {
      const std::size_t n = kDims[i % kDims.size()];
      Rng rng = rng_for("acc.10", n, i);
      const Projection q = random_context(n, rng);
      const ComplexMatrix g = random_invertible(n, rng);
      res(op_norm(projectivity(g, q).mat() - oracle::range_projection(g * q.mat(), q.rank())));
    }
    return Outcome{res.value < 1e-8, fmt("300 pairs, max residual %.3e (tol 1e-8)", res.value)};
  });

  criterion(11, "full verify run", 180.0, [&] {
    if (cli.empty()) return Outcome{false, "no CLI path given"};
    const auto report = std::filesystem::temp_directory_path() / "grassgeo_acceptance_report.json";
    const std::string cmd = "\"" + cli + "\" verify --serial --output \"" + report.string() + "\"";
    const int status = std::system(cmd.c_str());
    const int rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return Outcome{rc == 0, fmt("default config, exit code %d", rc)};
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
