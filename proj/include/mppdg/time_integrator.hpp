#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>

#include "mppdg/dg_operator.hpp"
#include "mppdg/field.hpp"
#include "mppdg/limiters.hpp"
#include "mppdg/problem.hpp"
#include "mppdg/velocity.hpp"

namespace mppdg {

struct CflConfig {
  double cflc = 0.18;
  double cfld = 0.01;
  bool p3_time_scaling = false;  ///< convective bound uses h^(4/3) when k = 3

  /// (0.3, 0.06), (0.18, 0.01), (0.1, 0.005) for k = 1, 2, 3; k = 0 uses the k = 1 pair.
  static CflConfig for_degree(int k);
  void validate() const;
};

/// Weights of the three-stage SSP Runge-Kutta scheme in the form
///   u1 = u + dt L(u)
///   u2 = u + dt (L(u) + L(u1)) / 4
///   u' = u + dt (L(u) + L(u1) + 4 L(u2)) / 6
/// with stage times t, t + dt, t + dt/2.
struct Ssprk3 {
  static constexpr double stage2 = 0.25;
  static constexpr double final_outer = 1.0 / 6.0;
  static constexpr double final_middle = 2.0 / 3.0;
  static constexpr double time1 = 1.0;
  static constexpr double time2 = 0.5;
};

/// One step of the scheme on a scalar ODE u' = rhs(t, u).
double ssprk3_scalar(const std::function<double(double, double)>& rhs, double u, double t, double dt);

struct SchemeOptions {
  bool mpp = true;
  std::optional<double> tvb;  ///< M_tvb; empty disables the TVB limiter
  DiffusiveFluxConfig flux;
  CflConfig cfl;

  static SchemeOptions for_degree(int k);
};

/// Stable step from the CFL numbers. `remaining` clips the step so a run
/// lands on its final time. Velocity problems take the measured maxima from
/// `velocity`. Throws InvalidProblem when neither convection nor diffusion
/// constrains the step.
double compute_dt(const DGField1D& field, const Problem1D& problem, const CflConfig& cfl,
                  double remaining = std::numeric_limits<double>::infinity());
double compute_dt(const DGField2D& field, const Problem2D& problem, const CflConfig& cfl,
                  const VelocitySamples* velocity = nullptr,
                  double remaining = std::numeric_limits<double>::infinity());

struct StepResult {
  LimiterReport report;       ///< empty when MPP limiting is off
  std::size_t tvb_cells = 0;  ///< cells modified by the TVB limiter over all stages
  double mean_removed = 0.0;  ///< largest vorticity mean subtracted before a Poisson solve
  FluxRecord1D flux_1d;       ///< RK-combined flux actually applied to the averages
  FluxRecord2D flux_2d;
};

/// Stage data of a 2D operator evaluation, reusable as the first stage of a step.
struct Stage2D {
  Rhs2D rhs;
  std::optional<VelocitySamples> velocity;
  double mean_removed = 0.0;
};

Stage2D evaluate_stage(const DGField2D& field, const Problem2D& problem,
                       const DiffusiveFluxConfig& config, double t);

StepResult ssprk3_step(DGField1D& field, const Problem1D& problem, const SchemeOptions& options,
                       double t, double dt);
StepResult ssprk3_step(DGField2D& field, const Problem2D& problem, const SchemeOptions& options,
                       double t, double dt, const Stage2D* first_stage = nullptr);

struct StepInfo {
  std::size_t step = 0;
  double t = 0.0;  ///< time reached by the step
  double dt = 0.0;
  double min_average = 0.0;
  double max_average = 0.0;
  const StepResult* result = nullptr;
};

struct EvolveStats {
  std::size_t steps = 0;
  double time = 0.0;
  double run_min = 0.0;  ///< over the initial data and every step
  double run_max = 0.0;
  double final_min = 0.0;
  double final_max = 0.0;
  std::size_t limited_interfaces = 0;
  std::size_t limited_steps = 0;
  std::size_t tvb_cells = 0;
  double min_theta = 1.0;
  double max_mean_removed = 0.0;
};

using StepObserver = std::function<void(const StepInfo&)>;

/// Steps from t = 0 to t_final, landing exactly on t_final.
EvolveStats evolve(DGField1D& field, const Problem1D& problem, double t_final,
                   const SchemeOptions& options, const StepObserver& observer = {});
EvolveStats evolve(DGField2D& field, const Problem2D& problem, double t_final,
                   const SchemeOptions& options, const StepObserver& observer = {});

}  // namespace mppdg
