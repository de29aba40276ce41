#include <doctest.h>

#include <cmath>

#include "grassgeo/instances.hpp"
#include "oracles.hpp"

using namespace grassgeo;

namespace {

Projection diag_projection(std::initializer_list<double> d) {
  std::vector<double> v(d);
  return Projection::make(ComplexMatrix::diagonal(std::span<const double>(v)));
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.code();
  }
  FAIL("no GeometryError thrown");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("Projection validation") {
  const Projection p = diag_projection({1, 0, 1});
  CHECK(p.rank() == 2);
  CHECK(p.range_basis().cols() == 2);
  CHECK(p.kernel_basis().cols() == 1);
  CHECK(code_of([] { (void)Projection::make(ComplexMatrix{{1.0, 1.0}, {0.0, 0.0}}); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([] { (void)Projection::make(ComplexMatrix{{0.5, 0.0}, {0.0, 0.0}}); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("Projection from bases") {
  for (std::size_t n = 2; n <= 8; ++n) {
    Rng rng(derive_seed(9, "proj.bases", n, 0));
    const ComplexMatrix u = random_unitary(n, rng);
    const std::size_t k = random_rank(n, rng);
    ComplexMatrix y(n, k), f(n, n - k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) (j < k ? y(i, j) : f(i, j - k)) = u(i, j);
    const Projection p = Projection::from_bases(y, f);
    CHECK(p.rank() == k);
    CHECK(projection_residual(p.mat()) < 1e-13);
    CHECK(oracle::max_entry_diff(p.mat(), oracle::range_projection(y, k)) < 1e-12);
    CHECK(code_of([&] { (void)Projection::from_bases(y, y); }) == ErrorCode::InvalidInput);
    CHECK(code_of([&] { (void)Projection::from_bases(2.0 * y, f); }) == ErrorCode::InvalidInput);
  }
}

TEST_CASE("in_Lp") {
  const Projection p = diag_projection({1, 1, 0, 0});
  CHECK(in_Lp(p.mat(), p));
  CHECK_FALSE(in_Lp(ComplexMatrix::zero(4), p));
  CHECK_FALSE(in_Lp(ComplexMatrix::identity(4), p));
  CHECK(code_of([&] { (void)in_Lp(ComplexMatrix::identity(3), p); }) == ErrorCode::InvalidInput);

  for (std::size_t n = 2; n <= 8; ++n) {
    Rng rng(derive_seed(1, "proj.inlp", n, 0));
    const Projection q = random_context(n, rng);
    const ComplexMatrix g = random_invertible(n, rng);
    CHECK(in_Lp(g * q.mat(), q));
    // Independent check: the compression of p g*g p to ran p is invertible.
    const ComplexMatrix b = q.range_basis();
    const ComplexMatrix c = adjoint_multiply(b, adjoint_multiply(g, g) * b);
    CHECK(hermitian_eigenvalues(hermitian_part(c)).front() > 1e-9);
  }
}

TEST_CASE("classify quotients out scalings") {
  const Projection p = diag_projection({1, 0, 0});
  const ProjectivePoint a = classify(p.mat(), p);
  CHECK(op_norm(a.rep() - p.mat()) < 1e-14);
  CHECK(op_norm(a.range().mat() - p.mat()) < 1e-14);
  const ProjectivePoint b = classify(3.0 * p.mat(), p);
  CHECK(op_norm(b.rep() - p.mat()) < 1e-14);
  CHECK(class_equal(classify(p.mat(), p), classify(5.0 * p.mat(), p)));
  CHECK(code_of([&] { (void)classify(ComplexMatrix::zero(3), p); }) == ErrorCode::NotInLp);
}

TEST_CASE("classify range matches a Gram-Schmidt range oracle") {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int t = 0; t < 10; ++t) {
      Rng rng(derive_seed(2, "proj.classify", n, t));
      const Projection p = random_context(n, rng);
      const ComplexMatrix a = random_invertible(n, rng) * p.mat();
      const ProjectivePoint m = classify(a, p);
      CHECK(op_norm(adjoint_multiply(m.rep(), m.rep()) - p.mat()) < 1e-9);
      CHECK(op_norm(m.range().mat() - oracle::range_projection(a, p.rank())) < 1e-8);
    }
  }
}

TEST_CASE("class_equal distinguishes orthogonal ranges") {
  const Projection p = diag_projection({1, 0});
  const Projection q = diag_projection({0, 1});
  const ProjectivePoint mq = point_from_range(q, p);
  CHECK(d_chordal(p, q) == doctest::Approx(1.0));
  CHECK_FALSE(class_equal(classify(p.mat(), p), mq));
}

TEST_CASE("class of g p h does not depend on h") {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int t = 0; t < 20; ++t) {
      Rng rng(derive_seed(3, "proj.welldef", n, t));
      const Projection p = random_context(n, rng);
      const ComplexMatrix gp = random_invertible(n, rng) * p.mat();
      const ComplexMatrix h = random_pAp_invertible(p, rng);
      CHECK(class_equal(classify(gp * h, p), classify(gp, p)));
    }
  }
}

TEST_CASE("classify is exact on partial isometries") {
  for (std::size_t n = 2; n <= 8; ++n) {
    Rng rng(derive_seed(4, "proj.idem", n, 0));
    const Projection p = random_context(n, rng);
    const ComplexMatrix v = random_unitary(n, rng) * p.mat();
    CHECK(classify(v, p).rep() == v);
    CHECK(classify(v, p).range().rank() == p.rank());
  }
}

TEST_CASE("unitary_extension") {
  const Projection p = diag_projection({1, 1, 0});
  const ComplexMatrix g = ComplexMatrix::diagonal(std::vector<double>{2.0, 1.0, 1.0});
  const ComplexMatrix v = unitary_extension(g, p);
  CHECK(class_equal(classify(v * p.mat(), p), classify(g * p.mat(), p)));

  for (std::size_t n = 2; n <= 8; ++n) {
    Rng rng(derive_seed(5, "proj.ext", n, 0));
    const Projection q = random_context(n, rng);
    const ComplexMatrix u = random_unitary(n, rng);
    CHECK(class_equal(classify(unitary_extension(u, q) * q.mat(), q), classify(u * q.mat(), q)));
    const ComplexMatrix h = random_invertible(n, rng);
    const ComplexMatrix w = unitary_extension(h, q);
    CHECK(op_norm(adjoint_multiply(w, w) - ComplexMatrix::identity(n)) < 1e-9);
    CHECK(class_equal(classify(w * q.mat(), q), classify(h * q.mat(), q)));
  }
  CHECK(code_of([&] { (void)unitary_extension(ComplexMatrix::zero(3), p); }) == ErrorCode::NotInvertible);
}

TEST_CASE("random_projection") {
  CHECK(op_norm(random_projection(4, 4, 1).mat() - ComplexMatrix::identity(4)) < 1e-12);
  CHECK(op_norm(random_projection(4, 0, 1).mat()) < 1e-12);
  const Projection p = random_projection(6, 3, 42);
  CHECK(projection_residual(p.mat()) < 1e-10);
  CHECK(p.rank() == 3);
  CHECK(code_of([] { (void)random_projection(3, 4, 1); }) == ErrorCode::InvalidInput);
  CHECK(random_projection(6, 3, 42).mat() == p.mat());
}

TEST_CASE("random_point_near stays within the radius") {
  for (std::size_t n = 2; n <= 8; ++n) {
    Rng rng(derive_seed(6, "proj.near", n, 0));
    const Projection p = random_context(n, rng);
    for (double r : {0.1, 0.5, 0.9}) {
      const ProjectivePoint m = random_point_near(p, r, rng);
      CHECK(d_chordal(m.range(), p) <= r + 1e-12);
      CHECK(m.range().rank() == p.rank());
    }
  }
}
