#include <doctest.h>

#include <algorithm>
#include <set>

#include <json.hpp>

#include "grassgeo/verify.hpp"

using namespace grassgeo;

TEST_CASE("registry is sorted, unique and covers every module") {
  const auto& props = properties();
  std::set<std::string> names, modules;
  for (std::size_t i = 0; i < props.size(); ++i) {
    if (i > 0) CHECK(props[i - 1].name < props[i].name);
    names.insert(props[i].name);
    modules.insert(props[i].name.substr(0, props[i].name.find('.')));
    CHECK_FALSE(props[i].statement.empty());
  }
  CHECK(names.size() == props.size());
  CHECK(modules == std::set<std::string>{"disk", "grassmann", "linalg", "moebius", "projective"});
}

TEST_CASE("RunConfig validation") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), GeometryError);
  cfg = RunConfig{};
  cfg.dims = {1};
  CHECK_THROWS_AS(cfg.validate(), GeometryError);
  cfg = RunConfig{};
  cfg.dims = {};
  CHECK_THROWS_AS(cfg.validate(), GeometryError);
  cfg = RunConfig{};
  cfg.tol.eq_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), GeometryError);
}

TEST_CASE("every property passes on a small grid") {
  RunConfig cfg;
  cfg.seed = 1234;
  cfg.trials = 10;
  for (const Property& prop : properties()) {
    const PropertyRecord rec = run_property(prop, cfg);
    CHECK_MESSAGE(rec.pass, prop.name << " max_residual=" << rec.max_residual << " errors=" << rec.errors);
    CHECK(rec.trials == prop.trial_count(cfg.trials) * static_cast<int>(cfg.dims.size()));
  }
}

TEST_CASE("parallel and serial runs agree bit for bit") {
  RunConfig cfg;
  cfg.seed = 99;
  cfg.trials = 3;
  cfg.dims = {2, 5};
  const Report a = run_verify(cfg);
  const Report b = run_verify_serial(cfg);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_csv() == b.to_csv());
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].max_residual == b.records[i].max_residual);
}

TEST_CASE("reports are deterministic and depend on the seed") {
  RunConfig cfg;
  cfg.trials = 1;
  cfg.dims = {2};
  cfg.seed = 5;
  const std::string first = run_verify(cfg).to_json();
  CHECK(run_verify(cfg).to_json() == first);
  cfg.seed = 6;
  CHECK(run_verify(cfg).to_json() != first);
}

TEST_CASE("an infeasible tolerance is reported as a failure") {
  RunConfig cfg;
  cfg.trials = 1;
  cfg.dims = {3};
  cfg.tol.eq_tol = 1e-30;
  const Report r = run_verify(cfg);
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("report formats") {
  RunConfig cfg;
  cfg.trials = 1;
  cfg.dims = {2};
  const Report r = run_verify(cfg);
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j.at("properties").size() == properties().size());
  CHECK(j.at("all_pass") == r.all_pass());
  const auto& rec = j.at("properties").at(0);
  for (const char* key : {"name", "paper_ref", "trials", "max_residual", "pass"}) CHECK(rec.contains(key));
  const std::string csv = r.to_csv();
  CHECK(csv.rfind("name,paper_ref,trials,max_residual,tolerance,errors,pass\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == properties().size() + 1);
}
