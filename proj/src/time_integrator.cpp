#include "mppdg/time_integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mppdg/errors.hpp"
#include "mppdg/incompressible.hpp"

namespace mppdg {

CflConfig CflConfig::for_degree(int k) {
  switch (k) {
    case 0:
    case 1: return {0.3, 0.06, false};
    case 2: return {0.18, 0.01, false};
    default: return {0.1, 0.005, false};
  }
}

void CflConfig::validate() const {
  if (!(cflc > 0.0) || !(cfld > 0.0)) throw InvalidArgument("CFL numbers must be positive");
}

SchemeOptions SchemeOptions::for_degree(int k) {
  SchemeOptions o;
  o.flux = DiffusiveFluxConfig::for_degree(k);
  o.cfl = CflConfig::for_degree(k);
  return o;
}

double ssprk3_scalar(const std::function<double(double, double)>& rhs, double u, double t, double dt) {
  const double l0 = rhs(t, u);
  const double u1 = u + dt * l0;
  const double l1 = rhs(t + Ssprk3::time1 * dt, u1);
  const double u2 = u + dt * (Ssprk3::stage2 * l0 + Ssprk3::stage2 * l1);
  const double l2 = rhs(t + Ssprk3::time2 * dt, u2);
  return u + dt * (Ssprk3::final_outer * l0 + Ssprk3::final_outer * l1 + Ssprk3::final_middle * l2);
}

namespace {

double finish_dt(double dt, double remaining) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw NumericalFailure("time step is not positive", -1);
  return std::min(dt, remaining);
}

}  // namespace

double compute_dt(const DGField1D& field, const Problem1D& problem, const CflConfig& cfl,
                  double remaining) {
  cfl.validate();
  const double h = field.grid().h();
  double dt = std::numeric_limits<double>::infinity();
  bool constrained = false;
  if (problem.has_convection() && problem.max_flux_speed > 0.0) {
    const double hc = (cfl.p3_time_scaling && field.degree() == 3) ? std::pow(h, 4.0 / 3.0) : h;
    dt = std::min(dt, cfl.cflc * hc / problem.max_flux_speed);
    constrained = true;
  }
  if (problem.diffusion && problem.diffusion->max_rate > 0.0) {
    dt = std::min(dt, cfl.cfld * h * h / problem.diffusion->max_rate);
    constrained = true;
  }
  if (!constrained)
    throw InvalidProblem("problem '" + problem.name + "' has neither wave speed nor diffusion");
  return finish_dt(dt, remaining);
}

double compute_dt(const DGField2D& field, const Problem2D& problem, const CflConfig& cfl,
                  const VelocitySamples* velocity, double remaining) {
  cfl.validate();
  const double hx = field.grid().hx(), hy = field.grid().hy();
  double sx = 0.0, sy = 0.0;
  switch (problem.convection) {
    case ConvectionKind::none: break;
    case ConvectionKind::autonomous:
      sx = problem.max_fx;
      sy = problem.max_gy;
      break;
    default:
      if (velocity == nullptr)
        throw InvalidArgument("problem '" + problem.name + "' needs velocity samples for the time step");
      sx = velocity->max_u;
      sy = velocity->max_v;
  }
  double dt = std::numeric_limits<double>::infinity();
  bool constrained = false;
  if (sx > 0.0 || sy > 0.0) {
    const double p = (cfl.p3_time_scaling && field.degree() == 3) ? 4.0 / 3.0 : 1.0;
    dt = std::min(dt, cfl.cflc / (sx / std::pow(hx, p) + sy / std::pow(hy, p)));
    constrained = true;
  }
  if (problem.diffusion && problem.diffusion->max_rate > 0.0) {
    dt = std::min(dt, (cfl.cfld / problem.diffusion->max_rate) / (1.0 / (hx * hx) + 1.0 / (hy * hy)));
    constrained = true;
  }
  if (!constrained)
    throw InvalidProblem("problem '" + problem.name + "' has neither wave speed nor diffusion");
  return finish_dt(dt, remaining);
}

Stage2D evaluate_stage(const DGField2D& field, const Problem2D& problem,
                       const DiffusiveFluxConfig& config, double t) {
  Stage2D s;
  switch (problem.convection) {
    case ConvectionKind::prescribed_velocity: {
      VelocitySource src;
      src.stream = pointwise_evaluator([&problem, t](double x, double y) { return problem.stream(x, y, t); });
      s.velocity = sample_velocity(field.grid(), field.degree(), src);
      s.rhs = semidiscrete_rhs_2d(field, problem, config, &*s.velocity);
      break;
    }
    case ConvectionKind::vorticity_stream: {
      auto ns = ns_rhs(field, problem, config);
      s.rhs = std::move(ns.rhs);
      s.velocity = std::move(ns.velocity);
      s.mean_removed = ns.mean_removed;
      break;
    }
    default: s.rhs = semidiscrete_rhs_2d(field, problem, config, nullptr);
  }
  return s;
}

namespace {

void combine(std::vector<double>& out, const std::vector<double>& base, double dt,
             std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
  out = base;
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (const auto& [w, v] : terms) s += w * (*v)[i];
    out[i] += dt * s;
  }
}

template <class Field>
std::size_t maybe_tvb(Field& f, const SchemeOptions& o) {
  return o.tvb ? tvb_limit(f, *o.tvb) : 0;
}

template <class Field>
void check_finite(const Field& f) {
  const auto& c = f.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!std::isfinite(c[i])) {
      const std::size_t cell = i / f.modes();
      throw NumericalFailure("non-finite coefficient in cell " + std::to_string(cell),
                             static_cast<std::ptrdiff_t>(cell));
    }
}

}  // namespace

StepResult ssprk3_step(DGField1D& field, const Problem1D& problem, const SchemeOptions& options,
                       double t, double dt) {
  (void)t;
  StepResult res;
  const auto ubar = field.averages();
  const auto s0 = semidiscrete_rhs_1d(field, problem, options.flux);

  DGField1D u1 = field;
  combine(u1.coefficients(), field.coefficients(), dt, {{1.0, &s0.dudt}});
  res.tvb_cells += maybe_tvb(u1, options);
  const auto s1 = semidiscrete_rhs_1d(u1, problem, options.flux);

  DGField1D u2 = field;
  combine(u2.coefficients(), field.coefficients(), dt,
          {{Ssprk3::stage2, &s0.dudt}, {Ssprk3::stage2, &s1.dudt}});
  res.tvb_cells += maybe_tvb(u2, options);
  const auto s2 = semidiscrete_rhs_1d(u2, problem, options.flux);

  std::vector<double> next;
  combine(next, field.coefficients(), dt,
          {{Ssprk3::final_outer, &s0.dudt}, {Ssprk3::final_outer, &s1.dudt},
           {Ssprk3::final_middle, &s2.dudt}});

  StageFluxAccumulator<FluxRecord1D> acc;
  acc.add(Ssprk3::final_outer, s0.flux);
  acc.add(Ssprk3::final_outer, s1.flux);
  acc.add(Ssprk3::final_middle, s2.flux);
  res.flux_1d = acc.result();

  field.coefficients() = std::move(next);
  if (options.mpp) {
    const Grid1D& grid = field.grid();
    const double lambda = dt / grid.h();
    const auto low = first_order_fluxes_1d(ubar, problem, grid);
    auto limited = apply_mpp_limiter_1d(res.flux_1d, low, ubar, field.bounds(), lambda, grid.periodic());
    const auto& H = limited.flux.values;
    for (std::size_t j = 0; j < grid.cells(); ++j) field.set_average(j, ubar[j] - lambda * (H[j + 1] - H[j]));
    res.flux_1d = std::move(limited.flux);
    res.report = std::move(limited.report);
  }
  res.tvb_cells += maybe_tvb(field, options);
  check_finite(field);
  return res;
}

StepResult ssprk3_step(DGField2D& field, const Problem2D& problem, const SchemeOptions& options,
                       double t, double dt, const Stage2D* first_stage) {
  StepResult res;
  const auto ubar = field.averages();
  Stage2D s0 = first_stage ? *first_stage : evaluate_stage(field, problem, options.flux, t);

  DGField2D u1 = field;
  combine(u1.coefficients(), field.coefficients(), dt, {{1.0, &s0.rhs.dudt}});
  res.tvb_cells += maybe_tvb(u1, options);
  const Stage2D s1 = evaluate_stage(u1, problem, options.flux, t + Ssprk3::time1 * dt);

  DGField2D u2 = field;
  combine(u2.coefficients(), field.coefficients(), dt,
          {{Ssprk3::stage2, &s0.rhs.dudt}, {Ssprk3::stage2, &s1.rhs.dudt}});
  res.tvb_cells += maybe_tvb(u2, options);
  const Stage2D s2 = evaluate_stage(u2, problem, options.flux, t + Ssprk3::time2 * dt);

  res.mean_removed = std::max({s0.mean_removed, s1.mean_removed, s2.mean_removed});

  std::vector<double> next;
  combine(next, field.coefficients(), dt,
          {{Ssprk3::final_outer, &s0.rhs.dudt}, {Ssprk3::final_outer, &s1.rhs.dudt},
           {Ssprk3::final_middle, &s2.rhs.dudt}});

  StageFluxAccumulator<FluxRecord2D> acc;
  acc.add(Ssprk3::final_outer, s0.rhs.flux);
  acc.add(Ssprk3::final_outer, s1.rhs.flux);
  acc.add(Ssprk3::final_middle, s2.rhs.flux);
  res.flux_2d = acc.result();

  field.coefficients() = std::move(next);
  if (options.mpp) {
    const Grid2D& grid = field.grid();
    const double lx = dt / grid.hx(), ly = dt / grid.hy();
    const auto low = first_order_fluxes_2d(ubar, problem, grid, s0.velocity ? &*s0.velocity : nullptr);
    auto limited = apply_mpp_limiter_2d(res.flux_2d, low, ubar, grid, field.bounds(), lx, ly);
    const auto& X = limited.flux.x_faces;
    const auto& Y = limited.flux.y_faces;
    const std::size_t nx = grid.nx();
    for (std::size_t j = 0; j < grid.ny(); ++j)
      for (std::size_t i = 0; i < nx; ++i) {
        const std::size_t c = grid.index(i, j);
        field.set_average(c, ubar[c] - lx * (X[j * (nx + 1) + i + 1] - X[j * (nx + 1) + i]) -
                                 ly * (Y[(j + 1) * nx + i] - Y[j * nx + i]));
      }
    res.flux_2d = std::move(limited.flux);
    res.report = std::move(limited.report);
  }
  res.tvb_cells += maybe_tvb(field, options);
  check_finite(field);
  return res;
}

namespace {

template <class Field>
void track(EvolveStats& st, const Field& f, bool initial) {
  const auto avg = f.averages();
  const auto [lo, hi] = std::minmax_element(avg.begin(), avg.end());
  st.final_min = *lo;
  st.final_max = *hi;
  if (initial) {
    st.run_min = *lo;
    st.run_max = *hi;
  } else {
    st.run_min = std::min(st.run_min, *lo);
    st.run_max = std::max(st.run_max, *hi);
  }
}

void absorb(EvolveStats& st, const StepResult& r) {
  st.limited_interfaces += r.report.limited;
  if (r.report.limited > 0) ++st.limited_steps;
  st.tvb_cells += r.tvb_cells;
  st.max_mean_removed = std::max(st.max_mean_removed, r.mean_removed);
  for (double th : r.report.theta_x) st.min_theta = std::min(st.min_theta, th);
  for (double th : r.report.theta_y) st.min_theta = std::min(st.min_theta, th);
}

template <class Field, class Problem, class StepFn>
EvolveStats run_loop(Field& field, const Problem& problem, double t_final, const SchemeOptions& options,
                     const StepObserver& observer, StepFn&& step) {
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw InvalidArgument("final time must be finite and >= 0");
  options.flux.validate();
  options.cfl.validate();
  if (options.tvb && *options.tvb < 0.0) throw InvalidArgument("TVB parameter must be >= 0");
  (void)problem;
  EvolveStats st;
  track(st, field, true);
  double t = 0.0;
  while (t < t_final) {
    StepResult r;
    double dt = 0.0;
    try {
      r = step(t, t_final - t, dt);
    } catch (const NumericalFailure& e) {
      throw NumericalFailure("step " + std::to_string(st.steps + 1) + ": " + e.what(),
                             static_cast<std::ptrdiff_t>(st.steps + 1));
    }
    ++st.steps;
    t = (dt >= t_final - t) ? t_final : t + dt;
    absorb(st, r);
    track(st, field, false);
    if (observer) observer({st.steps, t, dt, st.final_min, st.final_max, &r});
  }
  st.time = t;
  return st;
}

}  // namespace

EvolveStats evolve(DGField1D& field, const Problem1D& problem, double t_final,
                   const SchemeOptions& options, const StepObserver& observer) {
  return run_loop(field, problem, t_final, options, observer, [&](double t, double remaining, double& dt) {
    dt = compute_dt(field, problem, options.cfl, remaining);
    return ssprk3_step(field, problem, options, t, dt);
  });
}

EvolveStats evolve(DGField2D& field, const Problem2D& problem, double t_final,
                   const SchemeOptions& options, const StepObserver& observer) {
  return run_loop(field, problem, t_final, options, observer, [&](double t, double remaining, double& dt) {
    const Stage2D s0 = evaluate_stage(field, problem, options.flux, t);
    dt = compute_dt(field, problem, options.cfl, s0.velocity ? &*s0.velocity : nullptr, remaining);
    return ssprk3_step(field, problem, options, t, dt, &s0);
  });
}

}  // namespace mppdg
