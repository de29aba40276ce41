#include "grassgeo/io.hpp"

#include <fstream>
#include <sstream>

namespace grassgeo::io {
namespace {

json tagged(const char* kind, const ComplexMatrix& a) {
  json j = matrix_to_json(a);
  j["kind"] = kind;
  return j;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    fail(ErrorCode::InvalidInput, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

void expect_kind(const json& j, const char* kind) {
  const std::string k = kind_of(j);
  if (k != kind) fail(ErrorCode::InvalidInput, "expected kind \"" + std::string(kind) + "\", got \"" + k + "\"");
}

Projection context_of(const json& j, const Tolerance& tol) {
  return projection_from_json(field(j, "context"), tol);
}

}  // namespace

json matrix_to_json(const ComplexMatrix& a) {
  json data = json::array();
  for (const cplx& v : a.data()) data.push_back({v.real(), v.imag()});
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  try {
    const auto rows = field(j, "rows").get<std::size_t>();
    const auto cols = field(j, "cols").get<std::size_t>();
    const json& data = field(j, "data");
    if (rows == 0 || cols == 0) fail(ErrorCode::InvalidInput, "matrix dimensions must be positive");
    if (!data.is_array() || data.size() != rows * cols) {
      fail(ErrorCode::InvalidInput, "matrix data must hold rows*cols entries");
    }
    std::vector<cplx> entries;
    entries.reserve(data.size());
    for (const json& e : data) {
      if (e.is_number()) {
        entries.emplace_back(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        entries.emplace_back(e[0].get<double>(), e[1].get<double>());
      } else {
        fail(ErrorCode::InvalidInput, "matrix entries must be [re, im] pairs");
      }
    }
    ComplexMatrix out(rows, cols, std::move(entries));
    require_finite(out, "matrix JSON");
    return out;
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("malformed matrix JSON: ") + e.what());
  }
}

std::string kind_of(const json& j) {
  if (j.is_object() && j.contains("kind") && j.at("kind").is_string()) {
    return j.at("kind").get<std::string>();
  }
  return "matrix";
}

json to_json(const Projection& p) { return tagged("projection", p.mat()); }

json to_json(const ProjectivePoint& m) {
  json j = tagged("point", m.range().mat());
  j["context"] = to_json(m.context());
  j["rep"] = matrix_to_json(m.rep());
  return j;
}

json to_json(const HpVector& x) {
  json j = tagged("hp_vector", x.mat());
  j["context"] = to_json(x.context());
  return j;
}

json to_json(const PositiveEpsUnitary& lambda) {
  json j = tagged("pos_eps_unitary", lambda.mat());
  j["context"] = to_json(lambda.context());
  return j;
}

json partial_isometry_to_json(const ComplexMatrix& v, const Projection& p) {
  json j = tagged("partial_isometry", v);
  j["context"] = to_json(p);
  return j;
}

Projection projection_from_json(const json& j, const Tolerance& tol) {
  const std::string k = kind_of(j);
  if (k != "projection" && k != "matrix") {
    fail(ErrorCode::InvalidInput, "expected a projection, got \"" + k + "\"");
  }
  return Projection::make(matrix_from_json(j), tol);
}

ProjectivePoint point_from_json(const json& j, const Tolerance& tol) {
  const std::string k = kind_of(j);
  if (k == "hp_vector") return chart(hp_vector_from_json(j, tol), tol);
  const Projection p = context_of(j, tol);
  if (k == "partial_isometry") return classify(matrix_from_json(j), p, tol);
  if (k != "point") fail(ErrorCode::InvalidInput, "expected a point, got \"" + k + "\"");
  const Projection range = Projection::make(matrix_from_json(j), tol);
  if (!j.contains("rep")) return point_from_range(range, p, tol);
  ProjectivePoint m = classify(matrix_from_json(j.at("rep")), p, tol);
  if (d_chordal(m.range(), range) >= tol.eq_tol) {
    fail(ErrorCode::InvalidInput, "point: rep and range projection disagree");
  }
  return m;
}

HpVector hp_vector_from_json(const json& j, const Tolerance& tol) {
  expect_kind(j, "hp_vector");
  return HpVector::make(matrix_from_json(j), context_of(j, tol), tol);
}

PositiveEpsUnitary pos_eps_unitary_from_json(const json& j, const Tolerance& tol) {
  expect_kind(j, "pos_eps_unitary");
  return PositiveEpsUnitary::from_matrix(matrix_from_json(j), context_of(j, tol), tol);
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IOError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidInput, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IOError, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::IOError, "write failed for " + path.string());
}

}  // namespace grassgeo::io
