#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "grassgeo/instances.hpp"

namespace grassgeo {

enum class ReportFormat { Json, Csv };

struct RunConfig {
  std::uint64_t seed = 0;
  std::vector<std::size_t> dims{2, 3, 4, 5, 6, 7, 8};
  int trials = 200;
  Tolerance tol;
  std::string output;  // empty: stdout
  ReportFormat format = ReportFormat::Json;

  /// trials ≥ 1, every dim ≥ 2, tolerances positive; throws InvalidInput.
  void validate() const;
};

/// How a property's pass threshold is chosen.
enum class TolKind { Eq, Geo, Fixed };

/// One randomized identity. `trial` returns a non-negative residual; the
/// property passes when every trial returns below the threshold without
/// throwing.
struct Property {
  std::string name;
  std::string statement;  // reported as paper_ref
  TolKind kind = TolKind::Eq;
  double fixed_tol = 0.0;
  bool expensive = false;  // runs trials/10 (at least 1)
  std::function<double(std::size_t dim, Rng& rng, const Tolerance& tol)> trial;

  double threshold(const Tolerance& tol) const;
  int trial_count(int trials) const;
};

struct PropertyRecord {
  std::string name;
  std::string paper_ref;
  int trials = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  int errors = 0;
  bool pass = false;
};

struct Report {
  RunConfig config;
  std::vector<PropertyRecord> records;  // sorted by name

  bool all_pass() const;
  std::string to_json() const;
  std::string to_csv() const;
};

/// The full registry, sorted by name.
const std::vector<Property>& properties();

/// Runs one property over dims × trials. Trials are independent and each one
/// owns an Rng seeded by derive_seed(seed, name, dim, trial).
PropertyRecord run_property(const Property& prop, const RunConfig& cfg, bool parallel = true);

/// Every property; the (property, dim, trial) grid is evaluated in parallel
/// and reduced in a fixed order, so the result equals run_verify_serial.
Report run_verify(const RunConfig& cfg);
Report run_verify_serial(const RunConfig& cfg);

}  // namespace grassgeo
