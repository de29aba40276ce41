#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "grassgeo/matrix.hpp"

namespace grassgeo {

/// Counter-based seed splitter: mixes (seed, stream name, dim, trial) into an
/// independent 64-bit seed so every trial owns a reproducible generator.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t dim,
                          std::uint64_t trial) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return normal_(engine_); }
  cplx complex_normal() { return {normal(), normal()}; }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);
/// Haar-like unitary from Gram–Schmidt on a Gaussian matrix.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);
/// Invertible matrix with singular values in [1/cond_bound, 1]·scale-ish:
/// U·diag(s)·V with s uniform in [1/sqrt(cond), sqrt(cond)].
ComplexMatrix random_invertible(std::size_t n, Rng& rng, double cond_bound = 20.0);

/// Orthonormalize the columns of a (modified Gram–Schmidt, two passes).
ComplexMatrix orthonormalize_columns(const ComplexMatrix& a);

}  // namespace grassgeo
