#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "grassgeo/linalg.hpp"
#include "grassgeo/random.hpp"
#include "oracles.hpp"

using namespace grassgeo;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix random_anti_hermitian(std::size_t n, double norm, Rng& rng) {
  ComplexMatrix h = random_hermitian(n, rng);
  h *= norm / op_norm(h);
  return cplx(0.0, 1.0) * h;
}

}  // namespace

TEST_CASE("op_norm of simple matrices") {
  CHECK(op_norm(ComplexMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-15));
  const ComplexMatrix d{{2.0, 0.0}, {0.0, cplx(0.0, -3.0)}};
  CHECK(op_norm(d) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(op_norm(ComplexMatrix::zero(4)) == 0.0);
}

TEST_CASE("op_norm agrees with power iteration") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(derive_seed(11, "linalg.power", 5, s));
    const ComplexMatrix a = random_gaussian(5, 5, rng);
    CHECK(std::abs(op_norm(a) - oracle::power_norm(a)) < 1e-8);
  }
}

TEST_CASE("op_norm rejects non-finite input") {
  ComplexMatrix a = ComplexMatrix::identity(2);
  a(0, 1) = std::nan("");
  CHECK_THROWS_AS(op_norm(a), GeometryError);
}

TEST_CASE("hermitian_eig small cases") {
  const HermitianEig e = hermitian_eig(ComplexMatrix{{1.0, 0.0}, {0.0, 2.0}});
  CHECK(e.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(e.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(oracle::max_entry_diff(e.eigenvectors * e.eigenvectors.adjoint(), ComplexMatrix::identity(2)) < 1e-14);
  const std::vector<double> px = hermitian_eigenvalues(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}});
  CHECK(px[0] == doctest::Approx(-1.0));
  CHECK(px[1] == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig reconstruction and orthonormality") {
  for (std::size_t n : {1, 2, 6, 8, 16}) {
    Rng rng(derive_seed(3, "linalg.eig", n, 0));
    const ComplexMatrix a = random_hermitian(n, rng);
    const HermitianEig e = hermitian_eig(a);
    CHECK(op_norm(e.reconstruct() - a) < 1e-10);
    CHECK(op_norm(adjoint_multiply(e.eigenvectors, e.eigenvectors) - ComplexMatrix::identity(n)) < 1e-12);
    for (std::size_t i = 1; i < n; ++i) CHECK(e.eigenvalues[i - 1] <= e.eigenvalues[i]);
  }
}

TEST_CASE("hermitian_eigenvalues recovers planted spectra") {
  for (std::size_t n : {1, 2, 3, 5, 8, 16}) {
    for (double scale : {1e-150, 1.0, 1e150}) {
      Rng rng(derive_seed(4, "linalg.spectrum", n, 0));
      std::vector<double> want(n);
      for (std::size_t i = 0; i < n; ++i) want[i] = i % 3 == 0 ? 0.0 : (i % 2 ? 1.0 : -0.25 * i);
      const ComplexMatrix u = random_unitary(n, rng);
      const ComplexMatrix a = hermitian_part(u * ComplexMatrix::diagonal(std::span<const double>(want)) * u.adjoint());
      const std::vector<double> got = hermitian_eigenvalues(scale * a);
      std::sort(want.begin(), want.end());
      double top = 0.0;
      for (double w : want) top = std::max(top, std::abs(w));
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] / scale - want[i]) < 1e-13 * std::max(top, 1.0));
    }
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  try {
    (void)hermitian_eig(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
    FAIL("expected NotHermitian");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("func_calc spectral mapping") {
  const ComplexMatrix d{{0.0, 0.0}, {0.0, kPi / 3}};
  const ComplexMatrix c = func_calc([](double x) { return std::cos(x); }, d);
  CHECK(oracle::max_entry_diff(c, ComplexMatrix{{1.0, 0.0}, {0.0, 0.5}}) < 1e-15);

  Rng rng(derive_seed(5, "linalg.func", 6, 0));
  const ComplexMatrix a = random_hermitian(6, rng);
  CHECK(op_norm(func_calc([](double x) { return x; }, a) - a) < 1e-12);
  const ComplexMatrix s = func_calc([](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }, a);
  CHECK(op_norm(s * a - a * s) < 1e-9);
}

TEST_CASE("func_calc reports undefined values") {
  const ComplexMatrix a{{-1.0, 0.0}, {0.0, 1.0}};
  try {
    (void)func_calc([](double x) { return std::log(x); }, a);
    FAIL("expected DomainError");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::DomainError);
  }
}

TEST_CASE("polar decomposition") {
  const Polar two = polar(2.0 * ComplexMatrix::identity(3));
  CHECK(op_norm(two.u - ComplexMatrix::identity(3)) < 1e-14);
  CHECK(op_norm(two.pos - 2.0 * ComplexMatrix::identity(3)) < 1e-14);

  Rng rng(derive_seed(7, "linalg.polar", 4, 0));
  const ComplexMatrix u = random_unitary(4, rng);
  const Polar pu = polar(u);
  CHECK(op_norm(pu.u - u) < 1e-12);
  CHECK(op_norm(pu.pos - ComplexMatrix::identity(4)) < 1e-12);

  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = random_invertible(4, rng);
    const Polar pa = polar(a);
    CHECK(op_norm(adjoint_multiply(pa.u, pa.u) - ComplexMatrix::identity(4)) < 1e-9);
    CHECK(op_norm(a - pa.u * pa.pos) < 1e-9);
    CHECK(hermitian_eigenvalues(pa.pos).front() > 0.0);
  }
}

TEST_CASE("exp and log small cases") {
  CHECK(op_norm(exp_m(ComplexMatrix::zero(3)) - ComplexMatrix::identity(3)) == 0.0);
  const double e = std::exp(1.0);
  const ComplexMatrix l = log_posdef(ComplexMatrix{{e, 0.0}, {0.0, e * e}});
  CHECK(oracle::max_entry_diff(l, ComplexMatrix{{1.0, 0.0}, {0.0, 2.0}}) < 1e-14);
  const ComplexMatrix sq = sqrt_posdef(ComplexMatrix{{4.0, 0.0}, {0.0, 9.0}});
  CHECK(oracle::max_entry_diff(sq, ComplexMatrix{{2.0, 0.0}, {0.0, 3.0}}) < 1e-14);
}

TEST_CASE("exp_m matches an independent Taylor oracle") {
  for (std::size_t n = 2; n <= 8; ++n) {
    Rng rng(derive_seed(9, "linalg.exp", n, 0));
    const ComplexMatrix g = random_gaussian(n, n, rng);
    const ComplexMatrix z = random_anti_hermitian(n, 2.5, rng);
    CHECK(op_norm(exp_m(g) - oracle::expm(g)) < 1e-10 * op_norm(oracle::expm(g)));
    CHECK(op_norm(exp_m(z) - oracle::expm(z)) < 1e-12);
  }
}

TEST_CASE("log_unitary inverts exp_m on the principal branch") {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int t = 0; t < 10; ++t) {
      Rng rng(derive_seed(13, "linalg.logu", n, t));
      const ComplexMatrix z = random_anti_hermitian(n, rng.uniform(0.0, kPi - 0.1), rng);
      const ComplexMatrix l = log_unitary(exp_m(z));
      CHECK(op_norm(l - z) < 1e-8);
      CHECK(op_norm(l + l.adjoint()) < 1e-12);
    }
  }
}

TEST_CASE("log_unitary rejects eigenvalue -1") {
  const ComplexMatrix u{{-1.0, 0.0}, {0.0, 1.0}};
  try {
    (void)log_unitary(u);
    FAIL("expected BranchCut");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::BranchCut);
  }
}

TEST_CASE("log_posdef and sqrt_posdef reject non-positive input") {
  const ComplexMatrix a{{1.0, 0.0}, {0.0, -1.0}};
  CHECK_THROWS_AS(log_posdef(a), GeometryError);
  try {
    (void)sqrt_posdef(a);
    FAIL("expected NotPositive");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::NotPositive);
  }
}

TEST_CASE("log_posdef and exp_m round trip") {
  Rng rng(derive_seed(17, "linalg.logpd", 6, 0));
  const ComplexMatrix h = random_hermitian(6, rng);
  CHECK(op_norm(log_posdef(exp_m(h)) - h) < 1e-8);
}

TEST_CASE("singular values and inverse") {
  for (std::size_t n = 2; n <= 8; ++n) {
    Rng rng(derive_seed(19, "linalg.svd", n, 0));
    const ComplexMatrix a = random_invertible(n, rng);
    const std::vector<double> sv = singular_values(a);
    CHECK(std::abs(*std::max_element(sv.begin(), sv.end()) - oracle::power_norm(a)) < 1e-8);
    const ComplexMatrix ai = inverse(a);
    CHECK(op_norm(a * ai - ComplexMatrix::identity(n)) < 1e-10);
    CHECK(std::abs(min_singular_value(a) - 1.0 / oracle::power_norm(ai)) < 1e-8);
  }
}

TEST_CASE("op_norm is submultiplicative and unitarily invariant") {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int t = 0; t < 20; ++t) {
      Rng rng(derive_seed(23, "linalg.norm", n, t));
      const ComplexMatrix a = random_gaussian(n, n, rng);
      const ComplexMatrix b = random_gaussian(n, n, rng);
      const ComplexMatrix u = random_unitary(n, rng);
      CHECK(op_norm(a * b) <= op_norm(a) * op_norm(b) + 1e-9);
      CHECK(std::abs(op_norm(u * a) - op_norm(a)) < 1e-9);
    }
  }
}
