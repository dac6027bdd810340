#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mppdg/errors.hpp"
#include "mppdg/problem.hpp"

using namespace mppdg;
using std::numbers::pi;

TEST_CASE("registry lists every problem") {
  const auto all = list_problems();
  CHECK(all.size() == 11);
  for (const auto& info : all) {
    const Problem p = get_problem(info.name);
    CHECK(problem_name(p) == info.name);
    CHECK(dimension(p) == info.dimension);
  }
}

TEST_CASE("registry errors") {
  CHECK_THROWS_AS(get_problem("no-such-problem"), NotFound);
  CHECK_THROWS_AS(get_problem("linear-1d", {{"bogus", 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(get_problem("porous-medium", {{"m", 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(get_problem("linear-1d", {{"epsilon", -1.0}}), InvalidArgument);
  CHECK_THROWS_AS(get_problem("linear-1d", {{"epsilon", std::nan("")}}), InvalidArgument);
}

TEST_CASE("barenblatt profile") {
  const auto p = std::get<Problem1D>(get_problem("porous-medium", {{"m", 2.0}}));
  CHECK(p.initial(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(barenblatt(2.0, 0.0, 1.0) == 1.0);
  // s = 1/3; support |x| < sqrt(12) at t = 1
  CHECK(barenblatt(2.0, std::sqrt(12.0) + 1e-9, 1.0) == 0.0);
  CHECK(barenblatt(2.0, -3.5, 1.0) == 0.0);
  CHECK(barenblatt(2.0, 3.4, 1.0) > 0.0);
  for (double m : {3.0, 5.0, 8.0}) {
    const double s = 1.0 / (m + 1.0);
    const double edge = std::sqrt(2.0 * m / (s * (m - 1.0)));
    CHECK(barenblatt(m, edge * 1.0000001, 1.0) == 0.0);
    CHECK(barenblatt(m, edge * 0.999, 1.0) > 0.0);
  }
  CHECK(p.bounds.lower == 0.0);
  CHECK(p.bounds.upper == doctest::Approx(1.0));
  CHECK(p.a == -6.0);
  CHECK(p.b == 6.0);
}

TEST_CASE("linear exact solution reduces to sin^4 at t = 0") {
  const auto p = std::get<Problem1D>(get_problem("linear-1d", {{"epsilon", 1e-4}}));
  for (int i = 0; i < 10000; ++i) {
    const double x = 2 * pi * i / 10000.0;
    CHECK(std::abs(p.exact(x, 0.0) - std::pow(std::sin(x), 4)) < 1e-12);
  }
}

TEST_CASE("exact solutions agree with initial data") {
  for (const auto& info : list_problems()) {
    const Problem any = get_problem(info.name);
    if (const auto* p = std::get_if<Problem1D>(&any)) {
      if (!p->exact) continue;
      for (int i = 0; i < 10000; ++i) {
        const double x = p->a + (p->b - p->a) * (i + 0.5) / 10000.0;
        CHECK(std::abs(p->exact(x, 0.0) - p->initial(x)) < 1e-12);
      }
    } else {
      const auto& q = std::get<Problem2D>(any);
      if (!q.exact) continue;
      for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j) {
          const double x = q.xa + (q.xb - q.xa) * (i + 0.5) / 100.0;
          const double y = q.ya + (q.yb - q.ya) * (j + 0.5) / 100.0;
          CHECK(std::abs(q.exact(x, y, 0.0) - q.initial(x, y)) < 1e-12);
        }
    }
  }
}

TEST_CASE("initial data respects the declared bounds") {
  for (const auto& info : list_problems()) {
    const Problem any = get_problem(info.name);
    std::size_t bad = 0;
    if (const auto* p = std::get_if<Problem1D>(&any)) {
      for (int i = 0; i <= 1000000; ++i) {
        const double u = p->initial(p->a + (p->b - p->a) * i / 1e6);
        if (u < p->bounds.lower || u > p->bounds.upper) ++bad;
      }
    } else {
      const auto& q = std::get<Problem2D>(any);
      for (int i = 0; i <= 1000; ++i)
        for (int j = 0; j <= 1000; ++j) {
          const double u = q.initial(q.xa + (q.xb - q.xa) * i / 1e3, q.ya + (q.yb - q.ya) * j / 1e3);
          if (u < q.bounds.lower || u > q.bounds.upper) ++bad;
        }
    }
    CHECK_MESSAGE(bad == 0, info.name);
  }
}

TEST_CASE("buckley-leverett flux") {
  const auto p = std::get<Problem1D>(get_problem("buckley-leverett-1d"));
  CHECK(p.flux(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  double prev = p.flux(0.0);
  for (int i = 1; i <= 10000; ++i) {
    const double u = i / 10000.0;
    CHECK(p.flux_derivative(u) >= 0.0);
    CHECK(p.flux(u) >= prev);
    prev = p.flux(u);
  }
  CHECK(std::isfinite(p.max_flux_speed));
  // a'(u) = eps 4u(1-u), clipped outside [0, 1]
  CHECK(p.diffusion->rate(0.5) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(p.diffusion->rate(-0.2) == 0.0);
  CHECK(p.diffusion->rate(1.3) == 0.0);
  const double d = 1e-6;
  CHECK((p.diffusion->potential(0.3 + d) - p.diffusion->potential(0.3 - d)) / (2 * d) ==
        doctest::Approx(p.diffusion->rate(0.3)).epsilon(1e-7));
  CHECK(p.boundary.kind == BoundaryKind::dirichlet);
  CHECK(p.boundary.left_value == 1.0);
  CHECK(p.boundary.right_value == 0.0);
}

TEST_CASE("2D problem setups") {
  const auto pm = std::get<Problem2D>(get_problem("porous-medium-2d"));
  CHECK(pm.xa == -1.0);
  CHECK(pm.xb == 1.0);
  const auto bl = std::get<Problem2D>(get_problem("buckley-leverett-2d"));
  CHECK(bl.g(0.5) == doctest::Approx(0.5 * (1 - 5 * 0.25)).epsilon(1e-15));
  const auto sw = std::get<Problem2D>(get_problem("swirling", {{"period", 1.5}}));
  CHECK(std::abs(sw.velocity_x(0.3, 0.7, 0.75)) < 1e-16);
  CHECK(std::abs(sw.velocity_y(0.3, 0.7, 0.75)) < 1e-16);
  const auto rr = std::get<Problem2D>(get_problem("rigid-rotation"));
  CHECK(rr.velocity_x(0.5, 0.25, 0.0) == -0.25);
  CHECK(rr.velocity_y(0.5, 0.25, 0.0) == 0.5);
  CHECK(rr.boundary.kind == BoundaryKind::compact_zero);
  const auto ns = std::get<Problem2D>(get_problem("ns-accuracy"));
  CHECK(ns.bounds.lower == -2.0);
  CHECK(ns.diffusion->max_rate == doctest::Approx(0.01));
  const auto inviscid = std::get<Problem2D>(get_problem("rigid-rotation", {{"inv_re", 0.0}}));
  CHECK_FALSE(inviscid.diffusion.has_value());
}

TEST_CASE("error norms") {
  Problem1D c;
  c.name = "constant";
  c.a = 0;
  c.b = 1;
  c.exact = [](double, double) { return 0.3; };
  const auto f = project_initial([](double) { return 0.3; }, build_grid_1d(0, 1, 8, Boundary::periodic()), 2);
  const auto e = exact_error(f, c, 0.0);
  CHECK(e.l1 < 1e-16);
  CHECK(e.linf < 1e-15);

  const auto p = std::get<Problem1D>(get_problem("linear-1d"));
  double prev = 0.0;
  for (std::size_t n : {16, 32, 64}) {
    const auto g = initial_field(p, n, 2);
    const double l1 = exact_error(g, p, 0.0).l1;
    if (prev > 0.0) CHECK(std::log2(prev / l1) == doctest::Approx(3.0).epsilon(0.1));
    prev = l1;
  }
  const auto nox = std::get<Problem1D>(get_problem("buckley-leverett-1d"));
  CHECK_THROWS_AS(exact_error(initial_field(nox, 10, 1), nox, 0.0), Unsupported);
}

TEST_CASE("2D projection error is third order for P2") {
  const auto p = std::get<Problem2D>(get_problem("linear-2d"));
  const double e16 = exact_error(initial_field(p, 16, 2), p, 0.0).l1;
  const double e32 = exact_error(initial_field(p, 32, 2), p, 0.0).l1;
  CHECK(std::log2(e16 / e32) == doctest::Approx(3.0).epsilon(0.1));
}
