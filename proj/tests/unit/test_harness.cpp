#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mppdg/errors.hpp"
#include "mppdg/harness.hpp"

using namespace mppdg;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mppdg_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("settings parse like the CLI flags") {
  RunConfig c;
  apply_setting(c, "problem", "porous-medium");
  apply_setting(c, "param", "m=3");
  apply_setting(c, "order", "3");
  apply_setting(c, "cells", "40");
  apply_setting(c, "tfinal", "0.5");
  apply_setting(c, "cflc", "0.05");
  apply_setting(c, "cfld", "0.001");
  apply_setting(c, "mpp", "off");
  apply_setting(c, "tvb", "2.5");
  apply_setting(c, "flux-form", "scaled-penalty");
  apply_setting(c, "alpha", "4");
  apply_setting(c, "p3-dt", "on");
  CHECK(c.problem == "porous-medium");
  CHECK(c.params.at("m") == 3.0);
  CHECK(*c.order == 3);
  CHECK(*c.cells == 40);
  CHECK(*c.t_final == 0.5);
  CHECK(*c.cflc == 0.05);
  CHECK(*c.cfld == 0.001);
  CHECK_FALSE(c.mpp);
  CHECK(*c.tvb == 2.5);
  CHECK(c.flux_form == DiffusiveFluxForm::scaled_penalty);
  CHECK(*c.alpha == 4.0);
  CHECK(c.p3_time_scaling);
  apply_setting(c, "tvb", "off");
  CHECK(c.tvb_off);
  CHECK_NOTHROW(c.validate());

  CHECK_THROWS_AS(apply_setting(c, "order", "two"), InvalidArgument);
  CHECK_THROWS_AS(apply_setting(c, "cells", "0"), InvalidArgument);
  CHECK_THROWS_AS(apply_setting(c, "mpp", "maybe"), InvalidArgument);
  CHECK_THROWS_AS(apply_setting(c, "flux-form", "other"), InvalidArgument);
  CHECK_THROWS_AS(apply_setting(c, "param", "m"), InvalidArgument);
  CHECK_THROWS_AS(apply_setting(c, "colour", "red"), InvalidArgument);
}

TEST_CASE("validation rejects bad overrides") {
  RunConfig c;
  c.order = 9;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.t_final = -1.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.cflc = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.problem = "nope";
  CHECK_THROWS_AS(c.validate(), NotFound);
  c = {};
  c.params["m"] = 2.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("config file") {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "run.cfg");
    os << "# porous run\nproblem = porous-medium\nparam = m=5\norder=2  # trailing comment\n\ncells=20\n";
  }
  const RunConfig c = load_config(dir / "run.cfg");
  CHECK(c.problem == "porous-medium");
  CHECK(c.params.at("m") == 5.0);
  CHECK(*c.order == 2);
  CHECK(*c.cells == 20);
  {
    std::ofstream os(dir / "bad.cfg");
    os << "order 2\n";
  }
  CHECK_THROWS_AS(load_config(dir / "bad.cfg"), InvalidArgument);
  CHECK_THROWS_AS(load_config(dir / "missing.cfg"), InvalidArgument);
}

TEST_CASE("zero final time dumps the projected initial data") {
  RunConfig c;
  c.problem = "linear-1d";
  c.order = 2;
  c.cells = 16;
  c.t_final = 0.0;
  c.out = scratch("t0");
  const auto r = run_single(c);
  const auto field = initial_field(std::get<Problem1D>(get_problem("linear-1d")), 16, 2);
  CHECK(r.averages == field.averages());
  CHECK(r.report["steps"] == 0);
  const std::string csv = slurp(c.out / "solution.csv");
  CHECK(csv.rfind("# problem=linear-1d", 0) == 0);
  CHECK(csv.find("x_center,u_bar\n") != std::string::npos);
  CHECK(fs::exists(c.out / "report.json"));
}

TEST_CASE("linear run matches the reference error magnitude") {
  RunConfig c;
  c.problem = "linear-1d";
  c.order = 2;
  c.cells = 64;
  c.t_final = 1.0;
  const auto r = run_single(c);
  CHECK(r.report["min"].get<double>() >= 0.0);
  const double l1 = r.report["errors"]["l1"].get<double>();
  CHECK(l1 > 2.29e-5 / 2);
  CHECK(l1 < 2.29e-5 * 2);
  CHECK(r.report["mass"]["relative_change"].get<double>() < 1e-11);
}

TEST_CASE("2D runs write the full average grid") {
  RunConfig c;
  c.problem = "swirling";
  c.cells = 8;
  c.t_final = 0.02;
  c.out = scratch("swirl");
  const auto r = run_single(c);
  CHECK(r.averages.size() == 64);
  CHECK(r.y_center.size() == 64);
  const std::string csv = slurp(c.out / "solution.csv");
  CHECK(csv.find("x_center,y_center,u_bar\n") != std::string::npos);
  CHECK(r.report["errors"].is_null());
}

TEST_CASE("identical configs give identical csv") {
  RunConfig c;
  c.problem = "buckley-leverett-1d";
  c.cells = 40;
  c.t_final = 0.05;
  c.out = scratch("det_a");
  run_single(c);
  RunConfig d = c;
  d.out = scratch("det_b");
  run_single(d);
  CHECK(slurp(c.out / "solution.csv") == slurp(d.out / "solution.csv"));
}

TEST_CASE("convergence table") {
  CHECK(observed_order(8.0, 1.0) == 3.0);
  RunConfig c;
  c.problem = "linear-1d";
  c.order = 2;
  c.out = scratch("conv");
  const auto t = run_convergence(c, {16, 32, 64});
  REQUIRE(t.rows.size() == 3);
  CHECK_FALSE(t.rows[0].l1_order.has_value());
  CHECK(*t.rows[2].l1_order == doctest::Approx(std::log2(t.rows[1].l1 / t.rows[2].l1)));
  CHECK(*t.rows[2].l1_order == doctest::Approx(3.0).epsilon(0.1));
  const std::string csv = slurp(c.out / "table.csv");
  CHECK(csv.find("cells,l1,l1_order,linf,linf_order,min,max\n16,") != std::string::npos);
  CHECK(t.to_json()["rows"][0]["l1_order"].is_null());

  RunConfig noexact;
  noexact.problem = "buckley-leverett-1d";
  CHECK_THROWS_AS(run_convergence(noexact, {10, 20}), Unsupported);
  CHECK_THROWS_AS(run_convergence(c, {}), InvalidArgument);
}

TEST_CASE("degenerate sweep at zero time measures projection order") {
  RunConfig c;
  c.problem = "linear-1d";
  c.order = 3;
  c.t_final = 0.0;
  const auto t = run_convergence(c, {16, 32, 64});
  CHECK(*t.rows[2].l1_order == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("bounds suite pairs DG and MPPDG results") {
  const auto r = run_bounds_suite("vortex", {8});
  REQUIRE(r["rows"].size() == 1);
  const auto& row = r["rows"][0];
  CHECK(row["cells"] == 8);
  // at 8x8 the limiter barely acts
  CHECK(std::abs(row["dg"]["min"].get<double>() - row["mppdg"]["min"].get<double>()) < 1e-3);
  CHECK(row["mppdg"]["min"].get<double>() >= -1 - 1e-12);
  CHECK_THROWS_AS(run_bounds_suite("nope"), NotFound);
  CHECK(bounds_suites().size() == 6);
}

TEST_CASE("thread count from the environment") {
  setenv("MPPDG_THREADS", "3", 1);
  CHECK(worker_threads() == 3);
  setenv("MPPDG_THREADS", "0", 1);
  CHECK(worker_threads() >= 1);
  setenv("MPPDG_THREADS", "lots", 1);
  CHECK_THROWS_AS(worker_threads(), InvalidArgument);
  setenv("MPPDG_THREADS", "-2", 1);
  CHECK_THROWS_AS(worker_threads(), InvalidArgument);
  unsetenv("MPPDG_THREADS");
  CHECK(worker_threads() >= 1);
}

TEST_CASE("parallel sweeps match serial ones") {
  RunConfig c;
  c.problem = "linear-1d";
  c.order = 1;
  setenv("MPPDG_THREADS", "1", 1);
  const auto serial = run_convergence(c, {16, 32, 64});
  setenv("MPPDG_THREADS", "3", 1);
  const auto parallel = run_convergence(c, {16, 32, 64});
  unsetenv("MPPDG_THREADS");
  for (std::size_t i = 0; i < 3; ++i) CHECK(serial.rows[i].l1 == parallel.rows[i].l1);
}
