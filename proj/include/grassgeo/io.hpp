#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "grassgeo/disk.hpp"

namespace grassgeo::io {

using json = nlohmann::json;

/// {"rows": n, "cols": m, "data": [[re, im], ...]} in row-major order.
json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const json& j);

/// Kind-tagged wrappers: "projection", "partial_isometry", "point",
/// "hp_vector", "pos_eps_unitary". Objects living over a context projection
/// carry it in a "context" field.
json to_json(const Projection& p);
json to_json(const ProjectivePoint& m);
json to_json(const HpVector& x);
json to_json(const PositiveEpsUnitary& lambda);
json partial_isometry_to_json(const ComplexMatrix& v, const Projection& p);

/// The "kind" tag, or "matrix" when absent.
std::string kind_of(const json& j);

Projection projection_from_json(const json& j, const Tolerance& tol = {});
/// Accepts a "point" (range projection in "data", optional "rep"), a
/// "partial_isometry" (classified) or a "hp_vector" (charted).
ProjectivePoint point_from_json(const json& j, const Tolerance& tol = {});
HpVector hp_vector_from_json(const json& j, const Tolerance& tol = {});
PositiveEpsUnitary pos_eps_unitary_from_json(const json& j, const Tolerance& tol = {});

/// Throws IOError when unreadable, InvalidInput when not valid JSON.
json read_json_file(const std::filesystem::path& path);
/// Throws IOError when the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace grassgeo::io
