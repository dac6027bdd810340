#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "mppdg/errors.hpp"
#include "mppdg/problem.hpp"

namespace mppdg {

namespace {

constexpr double pi = std::numbers::pi;

class Params {
 public:
  Params(const std::string& problem, const ProblemParams& given, std::set<std::string> allowed)
      : problem_(problem), given_(given) {
    for (const auto& [k, v] : given) {
      if (!allowed.contains(k))
        throw InvalidArgument("problem '" + problem + "' has no parameter '" + k + "'");
      if (std::isnan(v)) throw InvalidArgument("parameter '" + k + "' is NaN");
    }
  }
  double get(const std::string& key, double fallback) const {
    auto it = given_.find(key);
    return it == given_.end() ? fallback : it->second;
  }
  bool has(const std::string& key) const { return given_.contains(key); }
  void require(bool ok, const std::string& msg) const {
    if (!ok) throw InvalidArgument(problem_ + ": " + msg);
  }

 private:
  std::string problem_;
  const ProblemParams& given_;
};

Diffusion linear_diffusion(double eps) {
  return {[eps](double u) { return eps * u; }, [eps](double) { return eps; }, eps};
}

// 1/Re from either "inv_re" or "re" (re = inf selects the inviscid case).
double inverse_reynolds(const Params& p, double fallback) {
  if (p.has("inv_re")) {
    const double v = p.get("inv_re", fallback);
    p.require(v >= 0.0 && std::isfinite(v), "inv_re must be finite and >= 0");
    return v;
  }
  if (p.has("re")) {
    const double re = p.get("re", 0.0);
    p.require(re > 0.0, "re must be positive");
    return std::isinf(re) ? 0.0 : 1.0 / re;
  }
  return fallback;
}

// Buckley-Leverett s-shaped flux and its derivative.
double bl_flux(double u) { return u * u / (u * u + (1.0 - u) * (1.0 - u)); }
double bl_flux_derivative(double u) {
  const double d = u * u + (1.0 - u) * (1.0 - u);
  return 2.0 * u * (1.0 - u) / (d * d);
}

// Slotted disk, cone and cosine hump on [-pi, pi]^2, features of radius 0.3 pi.
double rotation_profile(double x, double y) {
  constexpr double r0 = 0.3 * pi;
  const double rd = std::hypot(x - 0.5 * pi, y);
  if (rd <= r0) {
    const bool in_slot = std::abs(y) < 0.05 * pi && x < 0.7 * pi;
    return in_slot ? 0.0 : 1.0;
  }
  const double rc = std::hypot(x + 0.5 * pi, y);
  if (rc <= r0) return 1.0 - rc / r0;
  const double rh = std::hypot(x, y + 0.5 * pi);
  if (rh <= r0) return 0.25 * (1.0 + std::cos(pi * rh / r0));
  return 0.0;
}

Problem1D linear_1d(const ProblemParams& given) {
  Params p("linear-1d", given, {"epsilon"});
  const double eps = p.get("epsilon", 1e-4);
  p.require(eps >= 0.0, "epsilon must be >= 0");
  Problem1D pr;
  pr.name = "linear-1d";
  pr.description = "u_t + u_x = eps u_xx, u0 = sin^4 x, periodic on [0, 2pi]";
  pr.a = 0.0;
  pr.b = 2.0 * pi;
  pr.boundary = Boundary::periodic();
  pr.flux = [](double u) { return u; };
  pr.flux_derivative = [](double) { return 1.0; };
  pr.max_flux_speed = 1.0;
  if (eps > 0.0) pr.diffusion = linear_diffusion(eps);
  pr.initial = [](double x) { return std::pow(std::sin(x), 4); };
  pr.exact = [eps](double x, double t) {
    return 0.375 - 0.5 * std::exp(-4.0 * eps * t) * std::cos(2.0 * (x - t)) +
           0.125 * std::exp(-16.0 * eps * t) * std::cos(4.0 * (x - t));
  };
  pr.bounds = {0.0, 1.0};
  pr.default_order = 2;
  pr.default_cells = 64;
  pr.default_tfinal = 1.0;
  return pr;
}

double jiangshu_profile(double x) {
  constexpr double a = 0.5, z = -0.7, delta = 0.005, gamma = 10.0;
  const double beta = std::log(2.0) / (36.0 * delta * delta);
  auto G = [](double x, double beta, double z) { return std::exp(-beta * (x - z) * (x - z)); };
  auto F = [](double x, double gamma, double a) {
    return std::sqrt(std::max(1.0 - gamma * gamma * (x - a) * (x - a), 0.0));
  };
  if (x >= -0.8 && x <= -0.6)
    return (G(x, beta, z - delta) + G(x, beta, z + delta) + 4.0 * G(x, beta, z)) / 6.0;
  if (x >= -0.4 && x <= -0.2) return 1.0;
  if (x >= 0.0 && x <= 0.2) return 1.0 - std::abs(10.0 * (x - 0.1));
  if (x >= 0.4 && x <= 0.6)
    return (F(x, gamma, a - delta) + F(x, gamma, a + delta) + 4.0 * F(x, gamma, a)) / 6.0;
  return 0.0;
}

Problem1D jiangshu(const ProblemParams& given) {
  Params p("jiangshu-advection", given, {});
  Problem1D pr;
  pr.name = "jiangshu-advection";
  pr.description = "u_t + u_x = 0 with Gaussians, square, triangle and ellipse, periodic on [-1, 1]";
  pr.a = -1.0;
  pr.b = 1.0;
  pr.boundary = Boundary::periodic();
  pr.flux = [](double u) { return u; };
  pr.flux_derivative = [](double) { return 1.0; };
  pr.max_flux_speed = 1.0;
  pr.initial = jiangshu_profile;
  pr.exact = [](double x, double t) {
    double s = std::fmod(x - t + 1.0, 2.0);
    if (s < 0.0) s += 2.0;
    return jiangshu_profile(s - 1.0);
  };
  pr.hints.x_breaks = {-0.8, -0.6, -0.4, -0.2, 0.0, 0.1, 0.2, 0.4, 0.45, 0.5, 0.55, 0.6};
  pr.bounds = {0.0, 1.0};
  pr.default_order = 2;
  pr.default_cells = 200;
  pr.default_tfinal = 8.0;
  pr.default_tvb = 10.0;
  return pr;
}

Problem1D porous_medium(const ProblemParams& given) {
  Params p("porous-medium", given, {"m"});
  const double m = p.get("m", 2.0);
  p.require(m > 1.0 && std::isfinite(m), "m must be > 1");
  Problem1D pr;
  pr.name = "porous-medium";
  pr.description = "u_t = (u^m)_xx, Barenblatt data B_m(x, 1), zero boundary on [-6, 6]";
  pr.a = -6.0;
  pr.b = 6.0;
  pr.boundary = Boundary::compact_zero();
  // odd extension keeps a(u) monotone for slightly negative traces
  pr.diffusion = Diffusion{[m](double u) { return std::copysign(std::pow(std::abs(u), m), u); },
                           [m](double u) { return m * std::pow(std::abs(u), m - 1.0); }, 0.0};
  pr.initial = [m](double x) { return barenblatt(m, x, 1.0); };
  pr.exact = [m](double x, double t) { return barenblatt(m, x, t + 1.0); };
  const double s = 1.0 / (m + 1.0);
  const double edge = std::sqrt(2.0 * m / (s * (m - 1.0)));
  pr.hints.x_breaks = {-edge, edge};
  pr.bounds = {0.0, barenblatt(m, 0.0, 1.0)};
  pr.diffusion->max_rate = max_abs_on(pr.diffusion->rate, pr.bounds.lower, pr.bounds.upper);
  pr.default_order = 3;
  pr.default_cells = 80;
  pr.default_tfinal = 2.0;
  pr.default_tvb = 1.0;
  return pr;
}

Problem1D buckley_leverett_1d(const ProblemParams& given) {
  Params p("buckley-leverett-1d", given, {"epsilon"});
  const double eps = p.get("epsilon", 0.01);
  p.require(eps >= 0.0, "epsilon must be >= 0");
  Problem1D pr;
  pr.name = "buckley-leverett-1d";
  pr.description = "u_t + f(u)_x = eps (nu(u) u_x)_x, s-shaped f, u(0)=1, u(1)=0";
  pr.a = 0.0;
  pr.b = 1.0;
  pr.boundary = Boundary::dirichlet(1.0, 0.0);
  pr.flux = bl_flux;
  pr.flux_derivative = bl_flux_derivative;
  pr.bounds = {0.0, 1.0};
  pr.max_flux_speed = max_abs_on(pr.flux_derivative, 0.0, 1.0);
  if (eps > 0.0) {
    // a'(u) = 4 eps u (1 - u) on [0, 1] and 0 outside; a is its antiderivative
    pr.diffusion = Diffusion{
        [eps](double u) {
          const double c = std::clamp(u, 0.0, 1.0);
          return eps * (2.0 * c * c - 4.0 / 3.0 * c * c * c);
        },
        [eps](double u) { return (u >= 0.0 && u <= 1.0) ? 4.0 * eps * u * (1.0 - u) : 0.0; },
        0.0};
    pr.diffusion->max_rate = max_abs_on(pr.diffusion->rate, 0.0, 1.0);
  }
  pr.initial = [](double x) { return x <= 1.0 / 3.0 ? 1.0 - 3.0 * x : 0.0; };
  pr.hints.x_breaks = {1.0 / 3.0};
  pr.default_order = 2;
  pr.default_cells = 100;
  pr.default_tfinal = 0.2;
  pr.default_tvb = 10.0;
  return pr;
}

Problem2D linear_2d(const ProblemParams& given) {
  Params p("linear-2d", given, {"epsilon"});
  const double eps = p.get("epsilon", 1e-4);
  p.require(eps >= 0.0, "epsilon must be >= 0");
  Problem2D pr;
  pr.name = "linear-2d";
  pr.description = "u_t + u_x + u_y = eps (u_xx + u_yy), u0 = sin^4(x + y), periodic [0, 2pi]^2";
  pr.xa = pr.ya = 0.0;
  pr.xb = pr.yb = 2.0 * pi;
  pr.boundary = Boundary::periodic();
  pr.convection = ConvectionKind::autonomous;
  pr.f = pr.g = [](double u) { return u; };
  pr.df = pr.dg = [](double) { return 1.0; };
  pr.max_fx = pr.max_gy = 1.0;
  if (eps > 0.0) pr.diffusion = linear_diffusion(eps);
  pr.initial = [](double x, double y) { return std::pow(std::sin(x + y), 4); };
  pr.exact = [eps](double x, double y, double t) {
    const double s = x + y - 2.0 * t;
    return 0.375 - 0.5 * std::exp(-8.0 * eps * t) * std::cos(2.0 * s) +
           0.125 * std::exp(-32.0 * eps * t) * std::cos(4.0 * s);
  };
  pr.bounds = {0.0, 1.0};
  pr.default_order = 2;
  pr.default_cells = 32;
  pr.default_tfinal = 0.5;
  return pr;
}

Problem2D porous_medium_2d(const ProblemParams& given) {
  Params p("porous-medium-2d", given, {});
  Problem2D pr;
  pr.name = "porous-medium-2d";
  pr.description = "u_t = (u^2)_xx + (u^2)_yy, square indicator data, periodic [-1, 1]^2";
  pr.xa = pr.ya = -1.0;
  pr.xb = pr.yb = 1.0;
  pr.boundary = Boundary::periodic();
  pr.convection = ConvectionKind::none;
  pr.diffusion = Diffusion{[](double u) { return u * std::abs(u); },
                           [](double u) { return 2.0 * std::abs(u); }, 2.0};
  pr.initial = [](double x, double y) {
    return (std::abs(x) <= 0.5 && std::abs(y) <= 0.5) ? 1.0 : 0.0;
  };
  pr.hints.x_breaks = pr.hints.y_breaks = {-0.5, 0.5};
  pr.bounds = {0.0, 1.0};
  pr.default_order = 1;
  pr.default_cells = 64;
  pr.default_tfinal = 0.005;
  pr.default_tvb = 50.0;
  return pr;
}

Problem2D buckley_leverett_2d(const ProblemParams& given) {
  Params p("buckley-leverett-2d", given, {"epsilon"});
  const double eps = p.get("epsilon", 0.01);
  p.require(eps >= 0.0, "epsilon must be >= 0");
  Problem2D pr;
  pr.name = "buckley-leverett-2d";
  pr.description = "Buckley-Leverett with gravity in y, disk data, periodic [-1.5, 1.5]^2";
  pr.xa = pr.ya = -1.5;
  pr.xb = pr.yb = 1.5;
  pr.boundary = Boundary::periodic();
  pr.convection = ConvectionKind::autonomous;
  pr.f = bl_flux;
  pr.df = bl_flux_derivative;
  pr.g = [](double u) { return bl_flux(u) * (1.0 - 5.0 * (1.0 - u) * (1.0 - u)); };
  pr.dg = [](double u) {
    return bl_flux_derivative(u) * (1.0 - 5.0 * (1.0 - u) * (1.0 - u)) +
           bl_flux(u) * 10.0 * (1.0 - u);
  };
  pr.bounds = {0.0, 1.0};
  pr.max_fx = max_abs_on(pr.df, 0.0, 1.0);
  pr.max_gy = max_abs_on(pr.dg, 0.0, 1.0);
  if (eps > 0.0) pr.diffusion = linear_diffusion(eps);
  pr.initial = [](double x, double y) { return x * x + y * y < 0.5 ? 1.0 : 0.0; };
  pr.hints.subcells = 4;
  pr.default_order = 2;
  pr.default_cells = 32;
  pr.default_tfinal = 0.5;
  pr.default_tvb = 50.0;
  return pr;
}

Problem2D rigid_rotation(const ProblemParams& given) {
  Params p("rigid-rotation", given, {"inv_re", "re"});
  const double nu = inverse_reynolds(p, 0.01);
  Problem2D pr;
  pr.name = "rigid-rotation";
  pr.description = "rigid body rotation of slotted disk, cone and hump, zero boundary on [-pi, pi]^2";
  pr.xa = pr.ya = -pi;
  pr.xb = pr.yb = pi;
  pr.boundary = Boundary::compact_zero();
  pr.convection = ConvectionKind::prescribed_velocity;
  pr.velocity_x = [](double, double y, double) { return -y; };
  pr.velocity_y = [](double x, double, double) { return x; };
  pr.stream = [](double x, double y, double) { return 0.5 * (x * x + y * y); };
  if (nu > 0.0) pr.diffusion = linear_diffusion(nu);
  pr.initial = rotation_profile;
  pr.hints.subcells = 4;
  pr.bounds = {0.0, 1.0};
  pr.default_order = 2;
  pr.default_cells = 64;
  pr.default_tfinal = 0.1;
  pr.default_tvb = 50.0;
  return pr;
}

Problem2D swirling(const ProblemParams& given) {
  Params p("swirling", given, {"inv_re", "re", "period"});
  const double nu = inverse_reynolds(p, 0.01);
  const double period = p.get("period", 2.0 * pi);
  p.require(period > 0.0, "period must be positive");
  Problem2D pr;
  pr.name = "swirling";
  pr.description = "swirling deformation flow with reversal period T, periodic [-pi, pi]^2";
  pr.xa = pr.ya = -pi;
  pr.xb = pr.yb = pi;
  pr.boundary = Boundary::periodic();
  pr.convection = ConvectionKind::prescribed_velocity;
  auto gt = [period](double t) { return std::cos(pi * t / period) / pi; };
  pr.velocity_x = [gt](double x, double y, double t) {
    const double c = std::cos(0.5 * x);
    return -c * c * std::sin(y) * gt(t);
  };
  pr.velocity_y = [gt](double x, double y, double t) {
    const double c = std::cos(0.5 * y);
    return std::sin(x) * c * c * gt(t);
  };
  pr.stream = [gt](double x, double y, double t) {
    const double c = std::cos(0.5 * x);
    return -gt(t) * (c * c * std::cos(y) + 0.5 * std::cos(x));
  };
  if (nu > 0.0) pr.diffusion = linear_diffusion(nu);
  pr.initial = rotation_profile;
  pr.hints.subcells = 4;
  pr.bounds = {0.0, 1.0};
  pr.default_order = 2;
  pr.default_cells = 64;
  pr.default_tfinal = 0.1;
  pr.default_tvb = 50.0;
  return pr;
}

Problem2D ns_accuracy(const ProblemParams& given) {
  Params p("ns-accuracy", given, {"re", "inv_re"});
  const double nu = inverse_reynolds(p, 0.01);
  Problem2D pr;
  pr.name = "ns-accuracy";
  pr.description = "vorticity-stream Navier-Stokes, omega = -2 sin x sin y exp(-2t/Re), periodic [0, 2pi]^2";
  pr.xa = pr.ya = 0.0;
  pr.xb = pr.yb = 2.0 * pi;
  pr.boundary = Boundary::periodic();
  pr.convection = ConvectionKind::vorticity_stream;
  if (nu > 0.0) pr.diffusion = linear_diffusion(nu);
  pr.initial = [](double x, double y) { return -2.0 * std::sin(x) * std::sin(y); };
  pr.exact = [nu](double x, double y, double t) {
    return -2.0 * std::sin(x) * std::sin(y) * std::exp(-2.0 * t * nu);
  };
  pr.bounds = {-2.0, 2.0};
  pr.default_order = 2;
  pr.default_cells = 32;
  pr.default_tfinal = 0.1;
  return pr;
}

Problem2D vortex_patch(const ProblemParams& given) {
  Params p("vortex-patch", given, {"re", "inv_re"});
  const double nu = inverse_reynolds(p, 0.01);
  Problem2D pr;
  pr.name = "vortex-patch";
  pr.description = "vorticity-stream Navier-Stokes with two opposite vortex patches, periodic [0, 2pi]^2";
  pr.xa = pr.ya = 0.0;
  pr.xb = pr.yb = 2.0 * pi;
  pr.boundary = Boundary::periodic();
  pr.convection = ConvectionKind::vorticity_stream;
  if (nu > 0.0) pr.diffusion = linear_diffusion(nu);
  pr.initial = [](double x, double y) {
    if (x < 0.5 * pi || x > 1.5 * pi) return 0.0;
    if (y >= 0.25 * pi && y <= 0.75 * pi) return -1.0;
    if (y >= 1.25 * pi && y <= 1.75 * pi) return 1.0;
    return 0.0;
  };
  pr.hints.x_breaks = {0.5 * pi, 1.5 * pi};
  pr.hints.y_breaks = {0.25 * pi, 0.75 * pi, 1.25 * pi, 1.75 * pi};
  pr.bounds = {-1.0, 1.0};
  pr.default_order = 2;
  pr.default_cells = 64;
  pr.default_tfinal = 0.1;
  return pr;
}

struct Entry {
  ProblemInfo info;
  Problem (*make)(const ProblemParams&);
};

template <auto F>
Problem wrap(const ProblemParams& p) {
  return Problem{F(p)};
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"linear-1d", 1, "", {"epsilon"}}, wrap<linear_1d>},
      {{"jiangshu-advection", 1, "", {}}, wrap<jiangshu>},
      {{"porous-medium", 1, "", {"m"}}, wrap<porous_medium>},
      {{"buckley-leverett-1d", 1, "", {"epsilon"}}, wrap<buckley_leverett_1d>},
      {{"linear-2d", 2, "", {"epsilon"}}, wrap<linear_2d>},
      {{"porous-medium-2d", 2, "", {}}, wrap<porous_medium_2d>},
      {{"buckley-leverett-2d", 2, "", {"epsilon"}}, wrap<buckley_leverett_2d>},
      {{"rigid-rotation", 2, "", {"inv_re", "re"}}, wrap<rigid_rotation>},
      {{"swirling", 2, "", {"inv_re", "re", "period"}}, wrap<swirling>},
      {{"ns-accuracy", 2, "", {"re", "inv_re"}}, wrap<ns_accuracy>},
      {{"vortex-patch", 2, "", {"re", "inv_re"}}, wrap<vortex_patch>},
  };
  return entries;
}

}  // namespace

double barenblatt(double m, double x, double t) {
  const double s = 1.0 / (m + 1.0);
  const double core = 1.0 - s * (m - 1.0) / (2.0 * m) * x * x / std::pow(t, 2.0 * s);
  if (core <= 0.0) return 0.0;
  return std::pow(t, -s) * std::pow(core, 1.0 / (m - 1.0));
}

double max_abs_on(const ScalarFn& df, double lo, double hi, int samples) {
  double best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double u = lo + (hi - lo) * i / samples;
    best = std::max(best, std::abs(df(u)));
  }
  return best;
}

Problem get_problem(const std::string& name, const ProblemParams& params) {
  for (const auto& e : registry())
    if (e.info.name == name) return e.make(params);
  throw NotFound("unknown problem '" + name + "'");
}

std::vector<ProblemInfo> list_problems() {
  std::vector<ProblemInfo> out;
  for (const auto& e : registry()) {
    ProblemInfo info = e.info;
    info.description = std::visit([](const auto& p) { return p.description; }, e.make({}));
    out.push_back(std::move(info));
  }
  return out;
}

Grid1D make_grid(const Problem1D& p, std::size_t cells) {
  return build_grid_1d(p.a, p.b, cells, p.boundary);
}

Grid2D make_grid(const Problem2D& p, std::size_t cells) {
  return build_grid_2d(p.xa, p.xb, cells, p.boundary, p.ya, p.yb, cells, p.boundary);
}

DGField1D initial_field(const Problem1D& p, std::size_t cells, int degree) {
  return project_initial(p.initial, make_grid(p, cells), degree, p.bounds, p.hints);
}

DGField2D initial_field(const Problem2D& p, std::size_t cells, int degree) {
  return project_initial(p.initial, make_grid(p, cells), degree, p.bounds, p.hints);
}

}  // namespace mppdg
