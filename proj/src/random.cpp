#include "grassgeo/random.hpp"

#include <cmath>

namespace grassgeo {
namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t dim,
                          std::uint64_t trial) noexcept {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ fnv1a(stream));
  h = splitmix64(h ^ dim);
  return splitmix64(h ^ trial);
}

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (auto& v : m.data()) v = rng.complex_normal() * std::sqrt(0.5);
  return m;
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  return hermitian_part(random_gaussian(n, n, rng));
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& a) {
  ComplexMatrix q = a;
  const std::size_t n = q.rows(), k = q.cols();
  for (std::size_t j = 0; j < k; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        cplx dot = 0.0;
        for (std::size_t r = 0; r < n; ++r) dot += std::conj(q(r, i)) * q(r, j);
        for (std::size_t r = 0; r < n; ++r) q(r, j) -= dot * q(r, i);
      }
    }
    double nrm = 0.0;
    for (std::size_t r = 0; r < n; ++r) nrm += std::norm(q(r, j));
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) fail(ErrorCode::InvalidInput, "orthonormalize_columns: dependent columns");
    for (std::size_t r = 0; r < n; ++r) q(r, j) /= nrm;
  }
  return q;
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  return orthonormalize_columns(random_gaussian(n, n, rng));
}

ComplexMatrix random_invertible(std::size_t n, Rng& rng, double cond_bound) {
  const ComplexMatrix u = random_unitary(n, rng);
  const ComplexMatrix v = random_unitary(n, rng);
  const double half = 0.5 * std::log(cond_bound);
  std::vector<double> s(n);
  for (auto& x : s) x = std::exp(rng.uniform(-half, half));
  return u * ComplexMatrix::diagonal(std::span<const double>(s)) * v;
}

}  // namespace grassgeo
