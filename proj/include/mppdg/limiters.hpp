#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mppdg/field.hpp"
#include "mppdg/problem.hpp"
#include "mppdg/velocity.hpp"

namespace mppdg {

/// Slack used for every bound comparison on cell averages.
inline constexpr double bound_slack = 1e-12;

/// Per-cell distances of the first-order update to the bounds:
/// upper[j] = u_M - (first-order update) >= 0, lower[j] = u_m - (...) <= 0.
struct GammaPair {
  std::vector<double> upper;
  std::vector<double> lower;
};

/// theta per interface (1D: theta_x only) and per-cell admissible ranges.
/// 1D cell_bounds: (upper_left, upper_right, lower_left, lower_right).
/// 2D cell_bounds: combined (L, R, D, U).
struct LimiterReport {
  std::vector<double> theta_x;
  std::vector<double> theta_y;
  std::vector<std::array<double, 4>> cell_bounds;
  std::size_t limited = 0;  ///< interfaces with theta < 1
};

/// First-order flux: global Lax-Friedrichs plus -(a(uR) - a(uL)) / h.
double first_order_flux_1d(double ubar_left, double ubar_right, const Problem1D& problem, double h);

FluxRecord1D first_order_fluxes_1d(const std::vector<double>& ubar, const Problem1D& problem,
                                   const Grid1D& grid);

/// 2D first-order edge fluxes; velocity problems use the edge-averaged
/// normal velocity with the edge maximum as dissipation.
FluxRecord2D first_order_fluxes_2d(const std::vector<double>& ubar, const Problem2D& problem,
                                   const Grid2D& grid, const VelocitySamples* velocity = nullptr);

/// Throws CflViolation if a distance has the wrong sign beyond bound_slack;
/// smaller violations are clamped to 0.
GammaPair compute_gamma_1d(const std::vector<double>& ubar, const FluxRecord1D& low,
                           const BoundPair& bounds, double lambda);
GammaPair compute_gamma_2d(const std::vector<double>& ubar, const FluxRecord2D& low,
                           const Grid2D& grid, const BoundPair& bounds, double lambda_x,
                           double lambda_y);

struct CellBounds1D {
  double upper_left = 1.0;
  double upper_right = 1.0;
  double lower_left = 1.0;
  double lower_right = 1.0;
};

/// Admissible theta ranges of one cell. f_minus, f_plus are the
/// lambda-scaled antidiffusive fluxes lambda * (H - h) at the left and right
/// interfaces; the update is first-order + f_minus - f_plus.
CellBounds1D limiter_bounds_1d(double f_minus, double f_plus, double gamma_upper,
                               double gamma_lower);

/// One 2D cell. `f` holds the signed contributions (L, R, D, U) to the update:
/// lambda_x (H - h)_L, -lambda_x (H - h)_R, lambda_y (G - g)_D, -lambda_y (G - g)_U.
/// Returns combined (L, R, D, U) ranges.
std::array<double, 4> limiter_bounds_2d(const std::array<double, 4>& f, double gamma_upper,
                                        double gamma_lower);

struct Limited1D {
  FluxRecord1D flux;
  LimiterReport report;
};

struct Limited2D {
  FluxRecord2D flux;
  LimiterReport report;
};

Limited1D apply_mpp_limiter_1d(const FluxRecord1D& high, const FluxRecord1D& low,
                               const std::vector<double>& ubar, const BoundPair& bounds,
                               double lambda, bool periodic);

Limited2D apply_mpp_limiter_2d(const FluxRecord2D& high, const FluxRecord2D& low,
                               const std::vector<double>& ubar, const Grid2D& grid,
                               const BoundPair& bounds, double lambda_x, double lambda_y);

/// sign(a) min(|a|, |b|, |c|) when all signs agree, else 0.
double minmod(double a, double b, double c);

/// minmod that leaves `a` untouched when |a| <= threshold.
double tvb_minmod(double a, double b, double c, double threshold);

/// TVB moment limiter. Returns the number of modified cells.
std::size_t tvb_limit(DGField1D& field, double m_tvb);
std::size_t tvb_limit(DGField2D& field, double m_tvb);

}  // namespace mppdg
