#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grassgeo/io.hpp"
#include "grassgeo/verify.hpp"

using namespace grassgeo;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::IOError:
      return kExitInput;
    case ErrorCode::OutOfRange:
      return 3;
    case ErrorCode::NotFinitePoint:
      return 4;
    case ErrorCode::NotInDisk:
      return 5;
    case ErrorCode::OutsideDomain:
      return 6;
    default:
      return 7;
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv("GRASSGEO_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used, 0);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidInput, std::string("GRASSGEO_SEED is not an unsigned integer: ") + env);
  }
}

// "2,3,5" or "2..8" (inclusive), or a mix: "2..4,8".
std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      const auto dots = item.find("..");
      if (dots == std::string::npos) {
        dims.push_back(std::stoul(item));
      } else {
        const std::size_t lo = std::stoul(item.substr(0, dots));
        const std::size_t hi = std::stoul(item.substr(dots + 2));
        if (hi < lo) throw std::invalid_argument("empty range");
        for (std::size_t d = lo; d <= hi; ++d) dims.push_back(d);
      }
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidInput, "cannot parse --dims entry \"" + item + "\"");
    }
  }
  if (dims.empty()) fail(ErrorCode::InvalidInput, "--dims is empty");
  return dims;
}

ReportFormat parse_format(const std::string& f) {
  return f == "csv" ? ReportFormat::Csv : ReportFormat::Json;
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    io::write_text_file(output, text);
  }
}

std::string fixed12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_matrix_header(std::size_t n) {
  std::string h;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::string c = "m_" + std::to_string(i) + "_" + std::to_string(j);
      h += "," + c + "_re," + c + "_im";
    }
  return h;
}

std::string csv_matrix_row(const ComplexMatrix& a) {
  std::string r;
  for (const cplx& v : a.data()) r += "," + g17(v.real()) + "," + g17(v.imag());
  return r;
}

struct Common {
  std::optional<std::uint64_t> seed;
  std::string dims = "2..8";
  int trials = 200;
  double eq_tol = 1e-9;
  double geo_tol = 1e-6;
  std::string format = "json";
  std::string output;

  Tolerance tol() const {
    Tolerance t{eq_tol, geo_tol};
    t.validate();
    return t;
  }
  std::uint64_t seed_value() const { return seed ? *seed : default_seed(); }
};

void add_tol_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--eq-tol", c.eq_tol, "Tolerance for algebraic identities")->capture_default_str();
  cmd->add_option("--geo-tol", c.geo_tol, "Tolerance for geometric/iterative results")
      ->capture_default_str();
}

void add_output_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--output,-o", c.output, "Output file (default: stdout)");
}

int cmd_verify(const Common& c, bool serial) {
  RunConfig cfg;
  cfg.seed = c.seed_value();
  cfg.dims = parse_dims(c.dims);
  cfg.trials = c.trials;
  cfg.tol = c.tol();
  cfg.output = c.output;
  cfg.format = parse_format(c.format);
  cfg.validate();
  const Report rep = serial ? run_verify_serial(cfg) : run_verify(cfg);
  emit(cfg.format == ReportFormat::Csv ? rep.to_csv() : rep.to_json(), cfg.output);
  if (!rep.all_pass()) {
    for (const auto& r : rep.records)
      if (!r.pass) std::cerr << "FAIL " << r.name << " max_residual=" << r.max_residual << "\n";
    return kExitFail;
  }
  return kExitOk;
}

int cmd_dist(const std::string& a, const std::string& b, const std::string& metric, const Common& c) {
  const Tolerance tol = c.tol();
  const ProjectivePoint m = io::point_from_json(io::read_json_file(a), tol);
  const ProjectivePoint n = io::point_from_json(io::read_json_file(b), tol);
  double value = 0.0;
  if (metric == "chordal") {
    value = d_chordal(m, n, tol);
  } else if (metric == "spherical") {
    value = d_spherical(m, n, tol);
  } else if (metric == "dk") {
    value = d_k(m, n, tol);
  } else {
    const DiskPoint dm = to_disk(m, tol);
    const DiskPoint dn = to_disk(n, tol);
    if (metric == "dpc") value = d_pc(dm, dn);
    if (metric == "en") value = E_n(dm, dn);
    if (metric == "dplus") value = d_plus(dm, dn);
  }
  std::cout << fixed12(value) << "\n";
  return kExitOk;
}

PositiveEpsUnitary cone_endpoint(const json& j, const Tolerance& tol) {
  if (io::kind_of(j) == "pos_eps_unitary") return io::pos_eps_unitary_from_json(j, tol);
  return Y_inv(io::point_from_json(j, tol), tol);
}

struct Sample {
  double t;
  double cumulative;
  ComplexMatrix mat;
};

std::string render_samples(const std::vector<Sample>& s, const std::string& space, double distance,
                           const std::string& format) {
  if (format == "csv") {
    std::string out = "t,cumulative_length" + csv_matrix_header(s.front().mat.rows()) + "\n";
    for (const auto& x : s) out += g17(x.t) + "," + g17(x.cumulative) + csv_matrix_row(x.mat) + "\n";
    return out;
  }
  json j;
  j["space"] = space;
  j["distance"] = distance;
  j["length"] = s.back().cumulative;
  json arr = json::array();
  for (const auto& x : s) arr.push_back({{"t", x.t}, {"cumulative_length", x.cumulative}, {"matrix", io::matrix_to_json(x.mat)}});
  j["samples"] = std::move(arr);
  return j.dump(2) + "\n";
}

struct Sampled {
  std::vector<Sample> samples;
  double distance = 0.0;
};

Sampled sample_geodesic(const std::string& a, const std::string& b, const std::string& space, int samples,
                        bool as_disk, const Tolerance& tol) {
  if (samples < 2) fail(ErrorCode::InvalidInput, "--samples must be at least 2");
  const json ja = io::read_json_file(a);
  const json jb = io::read_json_file(b);
  Sampled r;
  std::vector<Sample>& out = r.samples;
  const auto t_of = [&](int i) { return static_cast<double>(i) / (samples - 1); };

  if (space == "grassmann") {
    const ProjectivePoint m = io::point_from_json(ja, tol);
    const ProjectivePoint n = io::point_from_json(jb, tol);
    if (!same_context(m.context(), n.context(), tol.eq_tol)) {
      fail(ErrorCode::InvalidInput, "endpoints belong to different contexts");
    }
    const Projection& p0 = m.range();
    const TangentVector z = geodesic_log(p0, n.range(), tol);
    r.distance = d_spherical(p0, n.range(), tol);
    double cum = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double t = t_of(i);
      ComplexMatrix s = i == samples - 1 ? n.range().mat() : geodesic(p0, z, t, tol).mat();
      if (i > 0) cum += op_norm(s - out.back().mat);
      out.push_back({t, cum, std::move(s)});
    }
    return r;
  }

  const PositiveEpsUnitary lo = cone_endpoint(ja, tol);
  const PositiveEpsUnitary hi = cone_endpoint(jb, tol);
  if (!same_context(lo.context(), hi.context(), tol.eq_tol)) {
    fail(ErrorCode::InvalidInput, "endpoints belong to different contexts");
  }
  r.distance = d_plus(hi, lo);
  double cum = 0.0;
  std::optional<PositiveEpsUnitary> prev;
  for (int i = 0; i < samples; ++i) {
    const double t = t_of(i);
    PositiveEpsUnitary g = eps_geodesic(hi, lo, t, tol);
    if (prev) cum += d_plus(g, *prev);
    ComplexMatrix s = as_disk ? Y(g, tol).point.range().mat() : g.mat();
    out.push_back({t, cum, std::move(s)});
    prev.emplace(std::move(g));
  }
  return r;
}

int cmd_geodesic(const std::string& a, const std::string& b, const std::string& space, int samples,
                 bool as_disk, const Common& c) {
  const Sampled s = sample_geodesic(a, b, space, samples, as_disk, c.tol());
  emit(render_samples(s.samples, as_disk ? "disk" : space, s.distance, c.format), c.output);
  return kExitOk;
}

int cmd_length(const std::string& a, const std::string& b, const std::string& space, int samples,
               const Common& c) {
  const Sampled s = sample_geodesic(a, b, space, samples, false, c.tol());
  std::cout << fixed12(s.samples.back().cumulative) << "\n";
  return kExitOk;
}

int cmd_disk_dist(const std::string& a, const std::string& b, const Common& c) {
  const Tolerance tol = c.tol();
  const DiskPoint m = to_disk(io::point_from_json(io::read_json_file(a), tol), tol);
  const DiskPoint n = to_disk(io::point_from_json(io::read_json_file(b), tol), tol);
  const double r = rho(m, n), pc = d_pc(m, n), en = E_n(m, n), dp = d_plus(m, n);
  if (c.format == "csv") {
    emit("rho,d_pc,E_n,d_plus\n" + g17(r) + "," + g17(pc) + "," + g17(en) + "," + g17(dp) + "\n", c.output);
  } else {
    json j{{"rho", r}, {"d_pc", pc}, {"E_n", en}, {"d_plus", dp}};
    emit(j.dump(2) + "\n", c.output);
  }
  return kExitOk;
}

int cmd_moebius(const std::string& g_path, const std::string& b_path, const Common& c) {
  const Tolerance tol = c.tol();
  const HpVector b = io::hp_vector_from_json(io::read_json_file(b_path), tol);
  const MoebiusMap g = MoebiusMap::make(io::matrix_from_json(io::read_json_file(g_path)), b.context(), tol);
  const bool inside = moebius_domain(g, b, tol);
  json j{{"in_domain", inside}};
  if (inside) j["result"] = io::to_json(moebius_apply(g, b, tol));
  emit(j.dump(2) + "\n", c.output);
  return inside ? kExitOk : exit_code_for(ErrorCode::OutsideDomain);
}

int cmd_chart(const std::string& in, const Common& c) {
  const Tolerance tol = c.tol();
  const json j = io::read_json_file(in);
  json out = io::kind_of(j) == "hp_vector" ? io::to_json(chart(io::hp_vector_from_json(j, tol), tol))
                                           : io::to_json(chart_inv(io::point_from_json(j, tol), tol));
  emit(out.dump(2) + "\n", c.output);
  return kExitOk;
}

struct RandomOpts {
  std::string kind = "point";
  std::size_t n = 4;
  std::optional<std::size_t> rank;
  std::string context;
  double radius = 0.5;
  double scale = 1.0;
};

int cmd_random(const RandomOpts& o, const Common& c) {
  const Tolerance tol = c.tol();
  Rng rng(derive_seed(c.seed_value(), "cli.random", o.n, 0));
  Projection p = o.context.empty()
                     ? random_projection(o.n, o.rank ? *o.rank : o.n / 2, rng)
                     : io::projection_from_json(io::read_json_file(o.context), tol);
  json out;
  if (o.kind == "projection") {
    out = io::to_json(p);
  } else if (o.kind == "point") {
    out = io::to_json(random_point_near(p, o.radius, rng, tol));
  } else if (o.kind == "hp_vector") {
    out = io::to_json(random_hp_vector(p, o.scale, rng));
  } else if (o.kind == "pos_eps_unitary") {
    out = io::to_json(random_pos_eps_unitary(p, o.scale, rng, tol));
  } else if (o.kind == "disk_point") {
    out = io::to_json(random_disk_point(p, o.scale, rng, tol).point);
  } else if (o.kind == "eps_unitary") {
    out = io::matrix_to_json(random_eps_unitary(p, o.scale, rng));
  } else {
    out = io::matrix_to_json(random_invertible(p.dim(), rng));
  }
  emit(out.dump(2) + "\n", c.output);
  return kExitOk;
}

constexpr const char* kFooter = R"(Exit codes: 0 ok, 1 property failure, 2 input/IO error, 3 OutOfRange,
4 NotFinitePoint, 5 NotInDisk, 6 OutsideDomain, 7 other precondition failure.
Seed default: $GRASSGEO_SEED, else 0.

CSV layouts:
  verify:               name,paper_ref,trials,max_residual,tolerance,errors,pass
  disk-dist:            rho,d_pc,E_n,d_plus
  geodesic/disk-geodesic: t,cumulative_length,m_I_J_re,m_I_J_im,... (row-major sample matrix))";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projective space of a matrix algebra: metrics, geodesics, Moebius maps, the eps-unitary disk"};
  app.footer(kFooter);
  app.require_subcommand(1);

  Common common;
  std::function<int()> action;

  auto* verify = app.add_subcommand("verify", "Run every property suite and write a report");
  bool serial = false;
  verify->add_option("--seed", common.seed, "Master seed");
  verify->add_option("--dims", common.dims, "Dimensions, e.g. 2..8 or 2,4,6")->capture_default_str();
  verify->add_option("--trials", common.trials, "Trials per property and dimension")->capture_default_str();
  verify->add_flag("--serial", serial, "Use the serial reference runner");
  add_tol_flags(verify, common);
  add_output_flags(verify, common);
  verify->callback([&] { action = [&] { return cmd_verify(common, serial); }; });

  std::string a, b, metric = "chordal";
  auto* dist = app.add_subcommand("dist", "Distance between two points");
  dist->add_option("a", a, "First point JSON")->required();
  dist->add_option("b", b, "Second point JSON")->required();
  dist->add_option("--metric", metric, "Metric")
      ->check(CLI::IsMember({"chordal", "spherical", "dk", "dpc", "en", "dplus"}))
      ->capture_default_str();
  add_tol_flags(dist, common);
  dist->callback([&] { action = [&] { return cmd_dist(a, b, metric, common); }; });

  std::string space = "grassmann";
  int samples = 2000;
  auto* geo = app.add_subcommand("geodesic", "Sample the geodesic between two endpoints");
  geo->add_option("a", a, "Start (point JSON; cone also accepts pos_eps_unitary)")->required();
  geo->add_option("b", b, "End")->required();
  geo->add_option("--space", space, "Geometry")
      ->check(CLI::IsMember({"grassmann", "cone"}))
      ->capture_default_str();
  geo->add_option("--samples", samples, "Number of samples (>= 2)")->capture_default_str();
  add_tol_flags(geo, common);
  add_output_flags(geo, common);
  geo->callback([&] { action = [&] { return cmd_geodesic(a, b, space, samples, false, common); }; });

  auto* len = app.add_subcommand("length", "Discretized length of the geodesic between two endpoints");
  len->add_option("a", a, "Start")->required();
  len->add_option("b", b, "End")->required();
  len->add_option("--space", space, "Geometry")
      ->check(CLI::IsMember({"grassmann", "cone"}))
      ->capture_default_str();
  len->add_option("--samples", samples, "Number of samples (>= 2)")->capture_default_str();
  add_tol_flags(len, common);
  len->callback([&] { action = [&] { return cmd_length(a, b, space, samples, common); }; });

  auto* dgeo = app.add_subcommand("disk-geodesic", "Sample the d_plus geodesic between two disk points");
  dgeo->add_option("a", a, "Start point JSON")->required();
  dgeo->add_option("b", b, "End point JSON")->required();
  dgeo->add_option("--samples", samples, "Number of samples (>= 2)")->capture_default_str();
  add_tol_flags(dgeo, common);
  add_output_flags(dgeo, common);
  dgeo->callback([&] { action = [&] { return cmd_geodesic(a, b, "cone", samples, true, common); }; });

  auto* ddist = app.add_subcommand("disk-dist", "rho, d_pc, E_n and d_plus between two disk points");
  ddist->add_option("a", a, "First point JSON")->required();
  ddist->add_option("b", b, "Second point JSON")->required();
  add_tol_flags(ddist, common);
  add_output_flags(ddist, common);
  ddist->callback([&] { action = [&] { return cmd_disk_dist(a, b, common); }; });

  auto* moeb = app.add_subcommand("moebius", "Apply M_g to b and report domain membership");
  moeb->add_option("g", a, "Matrix JSON for g")->required();
  moeb->add_option("b", b, "hp_vector JSON")->required();
  add_tol_flags(moeb, common);
  moeb->add_option("--output,-o", common.output, "Output file (default: stdout)");
  moeb->callback([&] { action = [&] { return cmd_moebius(a, b, common); }; });

  auto* chart_cmd = app.add_subcommand("chart", "Convert between hp_vector and point JSON");
  chart_cmd->add_option("input", a, "hp_vector or point JSON")->required();
  add_tol_flags(chart_cmd, common);
  chart_cmd->add_option("--output,-o", common.output, "Output file (default: stdout)");
  chart_cmd->callback([&] { action = [&] { return cmd_chart(a, common); }; });

  RandomOpts ropts;
  auto* rnd = app.add_subcommand("random", "Generate a random instance");
  rnd->add_option("--kind", ropts.kind, "Instance kind")
      ->check(CLI::IsMember({"projection", "point", "hp_vector", "pos_eps_unitary", "disk_point",
                             "eps_unitary", "invertible"}))
      ->capture_default_str();
  rnd->add_option("--n", ropts.n, "Dimension")->check(CLI::Range(1, 64))->capture_default_str();
  rnd->add_option("--rank", ropts.rank, "Rank of the context projection (default n/2)");
  rnd->add_option("--context", ropts.context, "Context projection JSON (overrides --n/--rank)");
  rnd->add_option("--radius", ropts.radius, "Chordal radius for points")->capture_default_str();
  rnd->add_option("--scale", ropts.scale, "Norm bound for hp_vector / cone elements")
      ->capture_default_str();
  rnd->add_option("--seed", common.seed, "Seed");
  add_tol_flags(rnd, common);
  rnd->add_option("--output,-o", common.output, "Output file (default: stdout)");
  rnd->callback([&] { action = [&] { return cmd_random(ropts, common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    return action ? action() : kExitInput;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
