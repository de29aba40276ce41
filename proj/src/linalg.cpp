#include "grassgeo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <numbers>

namespace grassgeo {
namespace {

constexpr int kMaxSweeps = 60;

// Cyclic Jacobi on a Hermitian working copy. When `vectors` is non-null the
// accumulated rotations are applied to it.
std::vector<double> jacobi_diagonalize(ComplexMatrix& a, ComplexMatrix* vectors) {
  const std::size_t n = a.rows();
  const double scale = frobenius_norm(a);
  const double stop = 1e-16 * scale;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= stop) break;
    // Early sweeps skip rotations that are small against the mean off-diagonal.
    const double skip = sweep < 3 ? 0.2 * std::sqrt(off) / static_cast<double>(n * n) : 0.0;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag2 = std::norm(apq);
        if (mag2 == 0.0) continue;
        const double mag = std::sqrt(mag2);
        if (mag < skip) continue;
        const double app0 = a(p, p).real();
        const double aqq0 = a(q, q).real();
        if (sweep > 3 && std::abs(app0) + 100.0 * mag == std::abs(app0) &&
            std::abs(aqq0) + 100.0 * mag == std::abs(aqq0)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }

        // Rotate the phase out of a(p,q), then apply a real Jacobi rotation.
        const cplx phase = apq / mag;
        const double app = app0;
        const double aqq = aqq0;
        const double tau = (aqq - app) / (2.0 * mag);
        const double atau = std::abs(tau);
        // For huge |tau|, t ≈ 1/(2|tau|) and tau² would overflow.
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (atau > 1e150 ? 2.0 * atau : atau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const cplx jqp = -s * std::conj(phase);
        const cplx jqq = c * std::conj(phase);

        // Only column entries are rotated; rows follow by Hermitian symmetry.
        cplx* d = a.data().data();
        const auto rotate = [&](std::size_t lo, std::size_t hi) {
          for (std::size_t k = lo; k < hi; ++k) {
            cplx* row = d + k * n;
            const cplx akp = row[p], akq = row[q];
            const cplx nkp = akp * c + akq * jqp;
            const cplx nkq = akp * s + akq * jqq;
            row[p] = nkp;
            row[q] = nkq;
            d[p * n + k] = std::conj(nkp);
            d[q * n + k] = std::conj(nkq);
          }
        };
        rotate(0, p);
        rotate(p + 1, q);
        rotate(q + 1, n);
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        if (vectors != nullptr) {
          cplx* vd = vectors->data().data();
          for (std::size_t k = 0; k < n; ++k) {
            cplx* row = vd + k * n;
            const cplx vkp = row[p], vkq = row[q];
            row[p] = vkp * c + vkq * jqp;
            row[q] = vkp * s + vkq * jqq;
          }
        }
      }
    }
  }

  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
  return ev;
}

// Eigenvalues only: Householder reduction to a real symmetric tridiagonal
// matrix followed by implicit QL. Backward stable, so every eigenvalue is
// accurate to a small multiple of eps·‖a‖.
std::vector<double> tridiagonal_eigenvalues(ComplexMatrix a) {
  const std::size_t n = a.rows();
  std::vector<double> d(n), e(n, 0.0);
  if (n == 0) return d;
  const double scale = max_abs(a);
  if (scale == 0.0) return d;
  a *= 1.0 / scale;

  std::vector<cplx> v(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha2 += std::norm(a(i, k));
    d[k] = a(k, k).real();
    const double alpha = std::sqrt(alpha2);
    e[k] = alpha;
    if (alpha == 0.0) continue;
    const cplx x0 = a(k + 1, k);
    const double ax0 = std::abs(x0);
    const cplx phase = ax0 == 0.0 ? cplx(1.0) : x0 / ax0;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] += phase * alpha;
    double vv = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vv += std::norm(v[i]);
    const double tau = 2.0 / vv;
    // w = tau·A·v − (tau/2)(v*·tau·A·v)·v, then A ← A − v·w* − w·v*.
    cplx vp = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      w[i] = tau * s;
      vp += std::conj(v[i]) * w[i];
    }
    const double half = 0.5 * tau * vp.real();
    for (std::size_t i = k + 1; i < n; ++i) w[i] -= half * v[i];
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);
  }
  if (n >= 2) {
    d[n - 2] = a(n - 2, n - 2).real();
    e[n - 2] = std::abs(a(n - 1, n - 2));
  }
  d[n - 1] = a(n - 1, n - 1).real();

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        if (std::abs(e[m]) <= 0.5 * eps * (std::abs(d[m]) + std::abs(d[m + 1]))) break;
      }
      if (m == l) break;
      if (++iter > 60) {
        e[l] = 0.0;
        break;
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        const double r2 = f * f + g * g;
        r = r2 > std::numeric_limits<double>::min() && r2 < std::numeric_limits<double>::max() ? std::sqrt(r2)
                                                                                               : std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  for (double& x : d) x *= scale;
  return d;
}

ComplexMatrix checked_hermitian_copy(const ComplexMatrix& a, const Tolerance& tol) {
  require_square(a, "hermitian_eig");
  require_finite(a, "hermitian_eig");
  if (!is_hermitian(a, tol.eq_tol)) {
    fail(ErrorCode::NotHermitian, "input is not Hermitian within eq_tol");
  }
  return hermitian_part(a);
}

// Hermitian eigenvalues of [[0, a], [a*, 0]] are ±σᵢ(a) plus |rows − cols|
// zeros; absolute accuracy is eps·‖a‖ for every σᵢ, including the smallest.
std::vector<double> jordan_wielandt_singular_values(const ComplexMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  ComplexMatrix jw(m + n, m + n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      jw(i, m + j) = a(i, j);
      jw(m + j, i) = std::conj(a(i, j));
    }
  std::vector<double> ev = tridiagonal_eigenvalues(std::move(jw));
  std::sort(ev.begin(), ev.end(), std::greater<>());
  const std::size_t k = std::min(m, n);
  std::vector<double> sv(ev.begin(), ev.begin() + static_cast<std::ptrdiff_t>(k));
  for (auto& s : sv) s = std::max(s, 0.0);
  std::sort(sv.begin(), sv.end());
  return sv;
}

}  // namespace

ComplexMatrix HermitianEig::reconstruct() const {
  return func_calc([](double x) { return x; }, *this);
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) return false;
  const double bound = tol * (1.0 + max_abs(a));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > bound) return false;
  return true;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) return false;
  return op_norm(adjoint_multiply(a, a) - ComplexMatrix::identity(a.rows())) < tol;
}

HermitianEig hermitian_eig(const ComplexMatrix& a, const Tolerance& tol) {
  ComplexMatrix work = checked_hermitian_copy(a, tol);
  const std::size_t n = work.rows();
  ComplexMatrix v = ComplexMatrix::identity(n);
  std::vector<double> ev = jacobi_diagonalize(work, &v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return ev[i] < ev[j]; });
  HermitianEig out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = ev[order[c]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, const Tolerance& tol) {
  std::vector<double> ev = tridiagonal_eigenvalues(checked_hermitian_copy(a, tol));
  std::sort(ev.begin(), ev.end());
  return ev;
}

double op_norm(const ComplexMatrix& a) {
  require_finite(a, "op_norm");
  if (a.empty()) return 0.0;
  if (a.is_square() && a == a.adjoint()) {
    const std::vector<double> ev = tridiagonal_eigenvalues(a);
    double top = 0.0;
    for (double v : ev) top = std::max(top, std::abs(v));
    return top;
  }
  // The Gram matrix on the smaller side; its top eigenvalue is ‖a‖².
  ComplexMatrix gram = a.rows() < a.cols() ? multiply_adjoint(a, a) : adjoint_multiply(a, a);
  const std::vector<double> ev = tridiagonal_eigenvalues(hermitian_part(gram));
  const double top = *std::max_element(ev.begin(), ev.end());
  return std::sqrt(std::max(top, 0.0));
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  require_finite(a, "singular_values");
  if (a.empty()) return {};
  return jordan_wielandt_singular_values(a);
}

double min_singular_value(const ComplexMatrix& a) {
  const auto sv = singular_values(a);
  return sv.empty() ? 0.0 : sv.front();
}

Polar polar(const ComplexMatrix& a, const Tolerance& tol) {
  require_square(a, "polar");
  require_finite(a, "polar");
  const HermitianEig gram = hermitian_eig(hermitian_part(adjoint_multiply(a, a)), tol);
  const double top = std::sqrt(std::max(gram.eigenvalues.back(), 0.0));
  // Eigenvalues of a*a below this cutoff are treated as kernel, making u a
  // partial isometry. The relative floor sits above the rounding noise of
  // forming a*a.
  const double cutoff = std::max(std::pow(tol.eq_tol * std::max(top, 1.0), 2),
                                 1e-14 * static_cast<double>(a.rows()) * top * top);

  Polar out;
  out.pos = func_calc([](double x) { return std::sqrt(std::max(x, 0.0)); }, gram);
  const ComplexMatrix pinv_sqrt = func_calc(
      [cutoff](double x) { return x > cutoff ? 1.0 / std::sqrt(x) : 0.0; },
      gram);
  out.u = a * pinv_sqrt;
  return out;
}

ComplexMatrix exp_m_taylor(const ComplexMatrix& a) {
  require_square(a, "exp_m");
  require_finite(a, "exp_m");
  const std::size_t n = a.rows();
  double norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(a(i, j));
    norm1 = std::max(norm1, col);
  }
  int squarings = 0;
  if (norm1 > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.25)));
  const ComplexMatrix b = std::ldexp(1.0, -squarings) * a;

  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = term * b;
    term *= 1.0 / k;
    result += term;
    if (max_abs(term) <= 1e-18 * max_abs(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

ComplexMatrix exp_m(const ComplexMatrix& a) {
  require_square(a, "exp_m");
  require_finite(a, "exp_m");
  const double structural = 1e-14 * (1.0 + max_abs(a));
  // Hermitian and anti-Hermitian inputs go through the spectral route, which
  // keeps the result exactly positive / unitary up to rounding.
  if (is_hermitian(a, 1e-14)) {
    return func_calc([](double x) { return std::exp(x); }, hermitian_part(a));
  }
  bool anti = true;
  for (std::size_t i = 0; i < a.rows() && anti; ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) + std::conj(a(j, i))) > structural) {
        anti = false;
        break;
      }
  if (anti) {
    // a = −i·H with H = i·a Hermitian, so e^a = V·diag(e^{−iλ})·V*.
    const HermitianEig eig = hermitian_eig(hermitian_part(cplx(0.0, 1.0) * a));
    const std::size_t n = a.rows();
    const ComplexMatrix& v = eig.eigenvectors;
    ComplexMatrix scaled(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const cplx phase = std::polar(1.0, -eig.eigenvalues[k]);
      for (std::size_t i = 0; i < n; ++i) scaled(i, k) = v(i, k) * phase;
    }
    return multiply_adjoint(scaled, v);
  }
  return exp_m_taylor(a);
}

ComplexMatrix log_unitary(const ComplexMatrix& u, const Tolerance& tol) {
  require_square(u, "log_unitary");
  require_finite(u, "log_unitary");
  const std::size_t n = u.rows();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  if (!is_unitary(u, tol.eq_tol)) fail(ErrorCode::InvalidInput, "log_unitary: input not unitary");
  const ComplexMatrix plus = id + u;
  if (min_singular_value(plus) < tol.eq_tol) {
    fail(ErrorCode::BranchCut, "log_unitary: eigenvalue at -1");
  }
  // Cayley transform: eigenvalue e^{iθ} of u maps to tan(θ/2) of c.
  const ComplexMatrix c = hermitian_part(cplx(0.0, 1.0) * ((id - u) * inverse(plus)));
  const HermitianEig eig = hermitian_eig(c, tol);
  const ComplexMatrix angles = func_calc([](double x) { return 2.0 * std::atan(x); }, eig);
  return anti_hermitian_part(cplx(0.0, 1.0) * angles);
}

namespace {
HermitianEig checked_posdef_eig(const ComplexMatrix& a, const Tolerance& tol, const char* what) {
  HermitianEig eig = hermitian_eig(a, tol);
  if (eig.eigenvalues.front() <= tol.eq_tol) {
    fail(ErrorCode::NotPositive, std::string(what) + ": matrix is not positive definite");
  }
  return eig;
}
}  // namespace

ComplexMatrix log_posdef(const ComplexMatrix& a, const Tolerance& tol) {
  return func_calc([](double x) { return std::log(x); }, checked_posdef_eig(a, tol, "log_posdef"));
}

ComplexMatrix sqrt_posdef(const ComplexMatrix& a, const Tolerance& tol) {
  return func_calc([](double x) { return std::sqrt(x); },
                   checked_posdef_eig(a, tol, "sqrt_posdef"));
}

ComplexMatrix power_posdef(const ComplexMatrix& a, double t, const Tolerance& tol) {
  return func_calc([t](double x) { return std::pow(x, t); },
                   checked_posdef_eig(a, tol, "power_posdef"));
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  require_square(a, "inverse");
  require_finite(a, "inverse");
  const std::size_t n = a.rows();
  ComplexMatrix lu = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  const double scale = max_abs(a);
  if (scale == 0.0) fail(ErrorCode::NotInvertible, "zero matrix");

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(lu(r, col)) > std::abs(lu(piv, col))) piv = r;
    if (std::abs(lu(piv, col)) <= 1e-14 * scale) {
      fail(ErrorCode::NotInvertible, "numerically singular matrix");
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(piv, j), lu(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const cplx d = 1.0 / lu(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      lu(col, j) *= d;
      inv(col, j) *= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const cplx f = lu(r, col);
      if (f == cplx(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        lu(r, j) -= f * lu(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

ComplexMatrix eigenspace_basis(const HermitianEig& eig, double threshold, bool above) {
  const std::size_t n = eig.eigenvectors.rows();
  std::vector<std::size_t> cols;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k)
    if ((eig.eigenvalues[k] > threshold) == above) cols.push_back(k);
  ComplexMatrix b(n, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) b(r, c) = eig.eigenvectors(r, cols[c]);
  return b;
}

ComplexMatrix range_projection(const ComplexMatrix& a, std::size_t rank) {
  require_square(a, "range_projection");
  const std::size_t n = a.rows();
  if (rank > n) fail(ErrorCode::InvalidInput, "range_projection: rank exceeds dimension");
  const HermitianEig eig = hermitian_eig(hermitian_part(multiply_adjoint(a, a)));
  ComplexMatrix b(n, rank);
  for (std::size_t c = 0; c < rank; ++c)
    for (std::size_t r = 0; r < n; ++r) b(r, c) = eig.eigenvectors(r, n - rank + c);
  return hermitian_part(multiply_adjoint(b, b));
}

double compressed_min_singular(const ComplexMatrix& a, const ComplexMatrix& basis) {
  if (basis.cols() == 0) return std::numeric_limits<double>::infinity();
  return min_singular_value(adjoint_multiply(basis, a * basis));
}

ComplexMatrix compressed_inverse(const ComplexMatrix& a, const ComplexMatrix& basis, double tol) {
  const std::size_t n = a.rows();
  if (basis.cols() == 0) return ComplexMatrix(n, n);
  const ComplexMatrix block = adjoint_multiply(basis, a * basis);
  if (min_singular_value(block) <= tol) {
    fail(ErrorCode::NotInvertible, "compression is not invertible on the subspace");
  }
  return multiply_adjoint(basis * inverse(block), basis);
}

}  // namespace grassgeo
