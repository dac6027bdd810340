#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "mppdg/errors.hpp"
#include "mppdg/limiters.hpp"

namespace mppdg {

double first_order_flux_1d(double ubar_left, double ubar_right, const Problem1D& problem, double h) {
  double flux = 0.0;
  if (problem.has_convection())
    flux = 0.5 * (problem.flux(ubar_left) + problem.flux(ubar_right)) -
           0.5 * problem.max_flux_speed * (ubar_right - ubar_left);
  if (problem.diffusion)
    flux -= (problem.diffusion->potential(ubar_right) - problem.diffusion->potential(ubar_left)) / h;
  return flux;
}

FluxRecord1D first_order_fluxes_1d(const std::vector<double>& ubar, const Problem1D& problem,
                                   const Grid1D& grid) {
  const std::size_t n = grid.cells();
  if (ubar.size() != n) throw InvalidArgument("average count does not match the grid");
  FluxRecord1D out;
  out.values.resize(n + 1);
  const Boundary& bc = grid.boundary();
  for (std::size_t i = 0; i <= n; ++i) {
    double left, right;
    if (grid.periodic()) {
      left = ubar[(i + n - 1) % n];
      right = ubar[i % n];
    } else {
      left = i == 0 ? bc.ghost_left() : ubar[i - 1];
      right = i == n ? bc.ghost_right() : ubar[i];
    }
    out.values[i] = first_order_flux_1d(left, right, problem, grid.h());
  }
  if (grid.periodic()) out.values[n] = out.values[0];
  return out;
}

FluxRecord2D first_order_fluxes_2d(const std::vector<double>& ubar, const Problem2D& problem,
                                   const Grid2D& grid, const VelocitySamples* velocity) {
  const std::size_t nx = grid.nx(), ny = grid.ny();
  if (ubar.size() != grid.cells()) throw InvalidArgument("average count does not match the grid");
  const bool transported = problem.convection == ConvectionKind::prescribed_velocity ||
                           problem.convection == ConvectionKind::vorticity_stream;
  if (transported && velocity == nullptr)
    throw InvalidArgument("problem '" + problem.name + "' needs velocity samples");
  const bool periodic = grid.periodic();
  const Boundary& bc = problem.boundary;
  auto diff = [&](double l, double r, double h) {
    return problem.diffusion ? (problem.diffusion->potential(r) - problem.diffusion->potential(l)) / h
                             : 0.0;
  };

  FluxRecord2D out;
  out.x_faces.resize((nx + 1) * ny);
  out.y_faces.resize(nx * (ny + 1));
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i <= nx; ++i) {
      double l, r;
      if (periodic) {
        l = ubar[grid.index((i + nx - 1) % nx, j)];
        r = ubar[grid.index(i % nx, j)];
      } else {
        l = i == 0 ? bc.ghost_left() : ubar[grid.index(i - 1, j)];
        r = i == nx ? bc.ghost_right() : ubar[grid.index(i, j)];
      }
      const std::size_t e = j * (nx + 1) + i;
      double flux = 0.0;
      if (problem.convection == ConvectionKind::autonomous)
        flux = 0.5 * (problem.f(l) + problem.f(r)) - 0.5 * problem.max_fx * (r - l);
      else if (transported) {
        const std::size_t src = periodic && i == nx ? j * (nx + 1) : e;
        flux = 0.5 * velocity->x_face_mean[src] * (l + r) - 0.5 * velocity->x_face_max[src] * (r - l);
      }
      out.x_faces[e] = flux - diff(l, r, grid.hx());
    }
  for (std::size_t j = 0; j <= ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      double l, r;
      if (periodic) {
        l = ubar[grid.index(i, (j + ny - 1) % ny)];
        r = ubar[grid.index(i, j % ny)];
      } else {
        l = j == 0 ? bc.ghost_left() : ubar[grid.index(i, j - 1)];
        r = j == ny ? bc.ghost_right() : ubar[grid.index(i, j)];
      }
      const std::size_t e = j * nx + i;
      double flux = 0.0;
      if (problem.convection == ConvectionKind::autonomous)
        flux = 0.5 * (problem.g(l) + problem.g(r)) - 0.5 * problem.max_gy * (r - l);
      else if (transported) {
        const std::size_t src = periodic && j == ny ? i : e;
        flux = 0.5 * velocity->y_face_mean[src] * (l + r) - 0.5 * velocity->y_face_max[src] * (r - l);
      }
      out.y_faces[e] = flux - diff(l, r, grid.hy());
    }
  return out;
}

namespace {

void check_and_clamp(GammaPair& g, std::size_t j) {
  if (g.upper[j] < -bound_slack || g.lower[j] > bound_slack)
    throw CflViolation("first-order update leaves the bounds in cell " + std::to_string(j) +
                           " (upper distance " + std::to_string(g.upper[j]) + ", lower distance " +
                           std::to_string(g.lower[j]) + ")",
                       j);
  g.upper[j] = std::max(g.upper[j], 0.0);
  g.lower[j] = std::min(g.lower[j], 0.0);
}

}  // namespace

GammaPair compute_gamma_1d(const std::vector<double>& ubar, const FluxRecord1D& low,
                           const BoundPair& bounds, double lambda) {
  const std::size_t n = ubar.size();
  if (low.values.size() != n + 1) throw InvalidArgument("flux record size mismatch");
  GammaPair g{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const double update = ubar[j] - lambda * (low.values[j + 1] - low.values[j]);
    g.upper[j] = bounds.upper - update;
    g.lower[j] = bounds.lower - update;
    check_and_clamp(g, j);
  }
  return g;
}

GammaPair compute_gamma_2d(const std::vector<double>& ubar, const FluxRecord2D& low,
                           const Grid2D& grid, const BoundPair& bounds, double lambda_x,
                           double lambda_y) {
  const std::size_t nx = grid.nx(), ny = grid.ny();
  GammaPair g{std::vector<double>(grid.cells()), std::vector<double>(grid.cells())};
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t c = grid.index(i, j);
      const double update =
          ubar[c] - lambda_x * (low.x_faces[j * (nx + 1) + i + 1] - low.x_faces[j * (nx + 1) + i]) -
          lambda_y * (low.y_faces[(j + 1) * nx + i] - low.y_faces[j * nx + i]);
      g.upper[c] = bounds.upper - update;
      g.lower[c] = bounds.lower - update;
      check_and_clamp(g, c);
    }
  return g;
}

CellBounds1D limiter_bounds_1d(double f_minus, double f_plus, double gamma_upper,
                               double gamma_lower) {
  CellBounds1D b;
  // upper bound: theta_l f_minus - theta_r f_plus <= gamma_upper
  if (f_minus <= 0.0) {
    if (f_plus < 0.0) b.upper_right = std::min(1.0, gamma_upper / (-f_plus));
  } else if (f_plus >= 0.0) {
    b.upper_left = std::min(1.0, gamma_upper / f_minus);
  } else if (f_minus - f_plus > gamma_upper) {
    assert(f_minus - f_plus > 0.0);
    b.upper_left = b.upper_right = gamma_upper / (f_minus - f_plus);
  }
  // lower bound: theta_l f_minus - theta_r f_plus >= gamma_lower
  if (f_minus >= 0.0) {
    if (f_plus > 0.0) b.lower_right = std::min(1.0, gamma_lower / (-f_plus));
  } else if (f_plus <= 0.0) {
    b.lower_left = std::min(1.0, gamma_lower / f_minus);
  } else if (f_minus - f_plus < gamma_lower) {
    assert(f_minus - f_plus < 0.0);
    b.lower_left = b.lower_right = gamma_lower / (f_minus - f_plus);
  }
  return b;
}

std::array<double, 4> limiter_bounds_2d(const std::array<double, 4>& f, double gamma_upper,
                                        double gamma_lower) {
  double pos = 0.0, neg = 0.0;
  for (double v : f) {
    if (v > 0.0) pos += v;
    if (v < 0.0) neg += v;
  }
  const double up = pos > 0.0 ? std::min(gamma_upper / pos, 1.0) : 1.0;
  const double lo = neg < 0.0 ? std::min(gamma_lower / neg, 1.0) : 1.0;
  std::array<double, 4> out;
  for (std::size_t s = 0; s < 4; ++s) {
    const double u = f[s] > 0.0 ? up : 1.0;
    const double l = f[s] < 0.0 ? lo : 1.0;
    out[s] = std::min(u, l);
  }
  return out;
}

namespace {

double blend(double theta, double high, double low) {
  return theta == 1.0 ? high : theta * (high - low) + low;
}

}  // namespace

Limited1D apply_mpp_limiter_1d(const FluxRecord1D& high, const FluxRecord1D& low,
                               const std::vector<double>& ubar, const BoundPair& bounds,
                               double lambda, bool periodic) {
  const std::size_t n = ubar.size();
  if (high.values.size() != n + 1 || low.values.size() != n + 1)
    throw InvalidArgument("flux record size mismatch");
  const GammaPair g = compute_gamma_1d(ubar, low, bounds, lambda);

  Limited1D out;
  auto& rep = out.report;
  rep.cell_bounds.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double fm = lambda * (high.values[j] - low.values[j]);
    const double fp = lambda * (high.values[j + 1] - low.values[j + 1]);
    const auto b = limiter_bounds_1d(fm, fp, g.upper[j], g.lower[j]);
    rep.cell_bounds[j] = {b.upper_left, b.upper_right, b.lower_left, b.lower_right};
  }
  rep.theta_x.assign(n + 1, 1.0);
  for (std::size_t i = 0; i <= n; ++i) {
    double theta = 1.0;
    const bool has_left = i > 0 || periodic;
    const bool has_right = i < n || periodic;
    if (has_left) {
      const auto& b = rep.cell_bounds[(i + n - 1) % n];
      theta = std::min({theta, b[1], b[3]});
    }
    if (has_right) {
      const auto& b = rep.cell_bounds[i % n];
      theta = std::min({theta, b[0], b[2]});
    }
    rep.theta_x[i] = theta;
  }
  out.flux.values.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    out.flux.values[i] = blend(rep.theta_x[i], high.values[i], low.values[i]);
    if (rep.theta_x[i] < 1.0 && !(periodic && i == n)) ++rep.limited;
  }
  return out;
}

Limited2D apply_mpp_limiter_2d(const FluxRecord2D& high, const FluxRecord2D& low,
                               const std::vector<double>& ubar, const Grid2D& grid,
                               const BoundPair& bounds, double lambda_x, double lambda_y) {
  const std::size_t nx = grid.nx(), ny = grid.ny();
  if (high.x_faces.size() != (nx + 1) * ny || high.y_faces.size() != nx * (ny + 1) ||
      low.x_faces.size() != high.x_faces.size() || low.y_faces.size() != high.y_faces.size())
    throw InvalidArgument("flux record size mismatch");
  const GammaPair g = compute_gamma_2d(ubar, low, grid, bounds, lambda_x, lambda_y);
  const bool periodic = grid.periodic();

  Limited2D out;
  auto& rep = out.report;
  rep.cell_bounds.resize(grid.cells());
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t c = grid.index(i, j);
      const std::size_t l = j * (nx + 1) + i, r = l + 1, d = j * nx + i, u = (j + 1) * nx + i;
      const std::array<double, 4> f = {lambda_x * (high.x_faces[l] - low.x_faces[l]),
                                       -lambda_x * (high.x_faces[r] - low.x_faces[r]),
                                       lambda_y * (high.y_faces[d] - low.y_faces[d]),
                                       -lambda_y * (high.y_faces[u] - low.y_faces[u])};
      rep.cell_bounds[c] = limiter_bounds_2d(f, g.upper[c], g.lower[c]);
    }

  rep.theta_x.assign((nx + 1) * ny, 1.0);
  rep.theta_y.assign(nx * (ny + 1), 1.0);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i <= nx; ++i) {
      double theta = 1.0;
      if (i > 0 || periodic) theta = std::min(theta, rep.cell_bounds[grid.index((i + nx - 1) % nx, j)][1]);
      if (i < nx || periodic) theta = std::min(theta, rep.cell_bounds[grid.index(i % nx, j)][0]);
      rep.theta_x[j * (nx + 1) + i] = theta;
    }
  for (std::size_t j = 0; j <= ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      double theta = 1.0;
      if (j > 0 || periodic) theta = std::min(theta, rep.cell_bounds[grid.index(i, (j + ny - 1) % ny)][3]);
      if (j < ny || periodic) theta = std::min(theta, rep.cell_bounds[grid.index(i, j % ny)][2]);
      rep.theta_y[j * nx + i] = theta;
    }

  out.flux.x_faces.resize(high.x_faces.size());
  out.flux.y_faces.resize(high.y_faces.size());
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i <= nx; ++i) {
      const std::size_t e = j * (nx + 1) + i;
      out.flux.x_faces[e] = blend(rep.theta_x[e], high.x_faces[e], low.x_faces[e]);
      if (rep.theta_x[e] < 1.0 && !(periodic && i == nx)) ++rep.limited;
    }
  for (std::size_t j = 0; j <= ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t e = j * nx + i;
      out.flux.y_faces[e] = blend(rep.theta_y[e], high.y_faces[e], low.y_faces[e]);
      if (rep.theta_y[e] < 1.0 && !(periodic && j == ny)) ++rep.limited;
    }
  return out;
}

}  // namespace mppdg
