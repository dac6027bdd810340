#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mppdg/dg_operator.hpp"
#include "mppdg/errors.hpp"
#include "mppdg/problem.hpp"
#include "mppdg/time_integrator.hpp"

using namespace mppdg;
using std::numbers::pi;

namespace {

Problem1D advection_1d(double speed, double eps, Boundary bc = Boundary::periodic(), double a = 0.0,
                       double b = 2 * pi) {
  Problem1D p;
  p.name = "test";
  p.a = a;
  p.b = b;
  p.boundary = bc;
  p.flux = [speed](double u) { return speed * u; };
  p.flux_derivative = [speed](double) { return speed; };
  p.max_flux_speed = std::abs(speed);
  if (eps > 0.0) p.diffusion = Diffusion{[eps](double u) { return eps * u; }, [eps](double) { return eps; }, eps};
  return p;
}

double l2_norm_sq(const DGField1D& f) {
  double s = 0.0;
  for (std::size_t j = 0; j < f.cells(); ++j)
    for (std::size_t m = 0; m < f.modes(); ++m) s += f.cell(j)[m] * f.cell(j)[m] * f.grid().h() / (2.0 * m + 1.0);
  return s;
}

double l2_norm_sq(const DGField2D& f) {
  double s = 0.0;
  const double area = f.grid().hx() * f.grid().hy() / 4.0;
  for (std::size_t c = 0; c < f.cells(); ++c)
    for (std::size_t m = 0; m < f.modes(); ++m) s += f.cell(c)[m] * f.cell(c)[m] * f.basis().norm(m) * area;
  return s;
}

}  // namespace

TEST_CASE("lax-friedrichs flux") {
  const ScalarFn lin = [](double u) { return u; };
  CHECK(convective_flux(0.3, 0.9, lin, 1.0) == doctest::Approx(0.3).epsilon(1e-15));
  const ScalarFn bl = [](double u) { return u * u / (u * u + (1 - u) * (1 - u)); };
  CHECK(convective_flux(0.42, 0.42, bl, 2.0) == bl(0.42));
  // bound |f'| on a fine grid, then evaluate the formula by hand
  double speed = 0.0;
  for (int i = 0; i <= 1000000; ++i) {
    const double u = i * 1e-6, d = 1e-7;
    speed = std::max(speed, std::abs((bl(u + d) - bl(u - d)) / (2 * d)));
  }
  const double expect = 0.5 * (bl(0.2) + bl(0.8)) - 0.5 * speed * 0.6;
  CHECK(convective_flux(0.2, 0.8, bl, speed) == doctest::Approx(expect).epsilon(1e-15));
  CHECK(speed == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("diffusive interface fluxes") {
  DiffusiveFluxConfig cfg;
  const double eps = 1e-4;
  const Diffusion lin{[eps](double u) { return eps * u; }, {}, eps};
  auto r = diffusive_fluxes_1d(0.5, 0.5, 1.0, lin, cfg, 0.1);
  CHECK(r.tilde == doctest::Approx(1e-4).epsilon(1e-9));
  CHECK(r.hat == doctest::Approx(5e-5).epsilon(1e-14));

  const Diffusion sq{[](double u) { return u * u; }, {}, 2.0};
  r = diffusive_fluxes_1d(1.0, 1.0, 0.37, sq, cfg, 0.15);
  CHECK(r.tilde == doctest::Approx(2 * 0.37).epsilon(1e-9));
  CHECK(r.hat == 1.0);

  r = diffusive_fluxes_1d(0.2, 0.4, 0.1, sq, cfg, 0.15);
  CHECK(r.tilde == doctest::Approx(0.6 * 0.1 + (10 / 0.15) * 0.12).epsilon(1e-13));
  CHECK(r.tilde == doctest::Approx(8.06).epsilon(1e-13));
  CHECK(r.hat == doctest::Approx(0.16).epsilon(1e-15));

  DiffusiveFluxConfig scaled = cfg;
  scaled.form = DiffusiveFluxForm::scaled_penalty;
  r = diffusive_fluxes_1d(0.2, 0.4, 0.1, sq, scaled, 0.15);
  CHECK(r.tilde == doctest::Approx(0.6 * (0.1 + (10 / 0.15) * 0.12)).epsilon(1e-13));
}

TEST_CASE("diffusion rate fallback uses the supplied derivative or a centered difference") {
  const Diffusion with_rate{[](double u) { return u * u * u; }, [](double u) { return 3 * u * u; }, 3.0};
  CHECK(diffusion_rate(with_rate, 0.5) == 0.75);
  const Diffusion without{[](double u) { return u * u * u; }, {}, 3.0};
  CHECK(diffusion_rate(without, 0.5) == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("flux config validation") {
  CHECK(DiffusiveFluxConfig::for_degree(1).alpha == 1.0);
  CHECK(DiffusiveFluxConfig::for_degree(2).alpha == 10.0);
  CHECK(DiffusiveFluxConfig::for_degree(3).alpha == 10.0);
  DiffusiveFluxConfig bad;
  bad.alpha = 0.0;
  CHECK_THROWS(bad.validate());
  bad = {};
  bad.jump_tolerance = -1.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("constant states are steady in 1D") {
  const Problem1D p = advection_1d(1.0, 1e-2);
  for (int k = 0; k <= 3; ++k) {
    const auto f = project_initial([](double) { return 0.43; }, make_grid(p, 12), k);
    const auto r = semidiscrete_rhs_1d(f, p, DiffusiveFluxConfig::for_degree(k));
    for (double v : r.dudt) CHECK(std::abs(v) < 1e-13);
  }
  Problem1D bl = std::get<Problem1D>(get_problem("buckley-leverett-1d"));
  bl.boundary = Boundary::periodic();
  const auto f = project_initial([](double) { return 0.3; }, make_grid(bl, 10), 2);
  for (double v : semidiscrete_rhs_1d(f, bl, {}).dudt) CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("mode 0 equals the flux difference of the returned record") {
  const auto p = std::get<Problem1D>(get_problem("buckley-leverett-1d"));
  const auto f = initial_field(p, 20, 2);
  const auto r = semidiscrete_rhs_1d(f, p, {});
  const double h = f.grid().h();
  for (std::size_t j = 0; j < f.cells(); ++j)
    CHECK(r.dudt[j * f.modes()] == -(r.flux.values[j + 1] - r.flux.values[j]) / h);
}

TEST_CASE("advection of sin gives third-order cell averages of -cos") {
  const Problem1D p = advection_1d(1.0, 0.0);
  double prev = 0.0;
  for (std::size_t n : {32, 64}) {
    const auto g = make_grid(p, n);
    const auto f = project_initial([](double x) { return std::sin(x); }, g, 2);
    const auto r = semidiscrete_rhs_1d(f, p, DiffusiveFluxConfig::for_degree(2));
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double exact = -(std::sin(g.interface(j + 1)) - std::sin(g.interface(j))) / g.h();
      err = std::max(err, std::abs(r.dudt[j * 3] - exact));
    }
    if (n == 64) CHECK(std::log2(prev / err) > 2.7);
    prev = err;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("polynomial data with linear flux and diffusion has exact interior residuals") {
  // u = x^2, f = u, a = eps u  ->  u_t = -2x + 2 eps
  const double eps = 0.05;
  const Problem1D p = advection_1d(1.0, eps, Boundary::dirichlet(0.0, 1.0), 0.0, 1.0);
  const auto g = make_grid(p, 8);
  const auto f = project_initial([](double x) { return x * x; }, g, 2);
  const auto r = semidiscrete_rhs_1d(f, p, DiffusiveFluxConfig::for_degree(2));
  for (std::size_t j = 2; j < 6; ++j) {
    const double c = g.center(j);
    // projection of -2x + 2 eps: average -2c + 2 eps, linear mode -h
    CHECK(std::abs(r.dudt[j * 3] - (-2 * c + 2 * eps)) < 1e-12);
    CHECK(std::abs(r.dudt[j * 3 + 1] - (-g.h())) < 1e-12);
    CHECK(std::abs(r.dudt[j * 3 + 2]) < 1e-12);
  }
}

TEST_CASE("reflection symmetry for pure advection") {
  const Problem1D right = advection_1d(1.0, 0.0), left = advection_1d(-1.0, 0.0);
  const auto g = make_grid(right, 16);
  auto u0 = [](double x) { return std::exp(std::sin(x)) + 0.3 * std::cos(3 * x); };
  const double L = 2 * pi;
  const auto f = project_initial(u0, g, 3);
  const auto fr = project_initial([&](double x) { return u0(L - x); }, g, 3);
  const auto r = semidiscrete_rhs_1d(f, right, {});
  const auto rr = semidiscrete_rhs_1d(fr, left, {});
  for (std::size_t j = 0; j < 16; ++j)
    for (std::size_t m = 0; m < 4; ++m) {
      const double sign = m % 2 ? -1.0 : 1.0;
      CHECK(std::abs(rr.dudt[j * 4 + m] - sign * r.dudt[(15 - j) * 4 + m]) < 1e-12);
    }
}

TEST_CASE("periodic runs conserve mass through telescoping fluxes") {
  const auto p = std::get<Problem1D>(get_problem("linear-1d"));
  const auto f = initial_field(p, 33, 3);
  const auto r = semidiscrete_rhs_1d(f, p, {});
  double s = 0.0;
  for (std::size_t j = 0; j < f.cells(); ++j) s += r.dudt[j * f.modes()] * f.grid().h();
  CHECK(std::abs(s) < 1e-12 * 33);
  CHECK(r.flux.values.front() == r.flux.values.back());
}

TEST_CASE("one step does not increase the L2 norm for the linear problem") {
  const auto p = std::get<Problem1D>(get_problem("linear-1d"));
  for (int k : {1, 2, 3}) {
    auto f = initial_field(p, 32, k);
    const double before = l2_norm_sq(f);
    auto opt = SchemeOptions::for_degree(k);
    opt.mpp = false;
    ssprk3_step(f, p, opt, 0.0, compute_dt(f, p, opt.cfl));
    CHECK(l2_norm_sq(f) <= before * (1 + 1e-14));
  }
}

TEST_CASE("non-finite flux values raise a numerical failure with the location") {
  Problem1D p = advection_1d(1.0, 0.0);
  p.flux = [](double u) { return u > 0.5 ? std::nan("") : u; };
  const auto f = project_initial([](double x) { return x > 3.0 ? 1.0 : 0.0; }, make_grid(p, 8), 1);
  CHECK_THROWS_AS(semidiscrete_rhs_1d(f, p, {}), NumericalFailure);
}

TEST_CASE("2D constant state is steady") {
  for (const char* name : {"linear-2d", "buckley-leverett-2d", "porous-medium-2d"}) {
    const auto p = std::get<Problem2D>(get_problem(name));
    const auto f = project_initial([](double, double) { return 0.37; }, make_grid(p, 6), 2);
    const auto r = semidiscrete_rhs_2d(f, p, DiffusiveFluxConfig::for_degree(2));
    for (double v : r.dudt) CHECK(std::abs(v) < 1e-13);
  }
}

TEST_CASE("2D advection of sin(x+y) is third order in the cell averages") {
  Problem2D p = std::get<Problem2D>(get_problem("linear-2d"));
  p.diffusion.reset();
  double prev = 0.0, err = 0.0;
  for (std::size_t n : {16, 32}) {
    const auto g = make_grid(p, n);
    const auto f = project_initial([](double x, double y) { return std::sin(x + y); }, g, 2);
    const auto r = semidiscrete_rhs_2d(f, p, DiffusiveFluxConfig::for_degree(2));
    err = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        const double x0 = g.x().interface(i), x1 = g.x().interface(i + 1);
        const double y0 = g.y().interface(j), y1 = g.y().interface(j + 1);
        // average of -2 cos(x+y) over the cell
        const double avg = 2 * (std::cos(x1 + y1) - std::cos(x1 + y0) - std::cos(x0 + y1) + std::cos(x0 + y0)) /
                           (g.hx() * g.hy());
        err = std::max(err, std::abs(r.dudt[g.index(i, j) * f.modes()] - avg));
      }
    if (n == 32) CHECK(std::log2(prev / err) > 2.7);
    prev = err;
  }
}

TEST_CASE("2D mode 0 equals the edge flux difference and telescopes") {
  const auto p = std::get<Problem2D>(get_problem("buckley-leverett-2d"));
  const auto f = initial_field(p, 10, 2);
  const auto r = semidiscrete_rhs_2d(f, p, DiffusiveFluxConfig::for_degree(2));
  const auto& g = f.grid();
  const std::size_t nx = g.nx();
  double sum = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t c = g.index(i, j);
      const double expect = -(r.flux.x_faces[j * (nx + 1) + i + 1] - r.flux.x_faces[j * (nx + 1) + i]) / g.hx() -
                            (r.flux.y_faces[(j + 1) * nx + i] - r.flux.y_faces[j * nx + i]) / g.hy();
      CHECK(r.dudt[c * f.modes()] == expect);
      sum += r.dudt[c * f.modes()] * g.hx() * g.hy();
    }
  CHECK(std::abs(sum) < 1e-12 * 100);
}

TEST_CASE("2D one step does not increase the L2 norm for the linear problem") {
  const auto p = std::get<Problem2D>(get_problem("linear-2d"));
  auto f = initial_field(p, 16, 2);
  const double before = l2_norm_sq(f);
  auto opt = SchemeOptions::for_degree(2);
  opt.mpp = false;
  ssprk3_step(f, p, opt, 0.0, compute_dt(f, p, opt.cfl));
  CHECK(l2_norm_sq(f) <= before * (1 + 1e-14));
}
