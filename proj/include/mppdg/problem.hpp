#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mppdg/field.hpp"
#include "mppdg/mesh.hpp"

namespace mppdg {

using ScalarFn = std::function<double(double)>;

/// Diffusion written through its potential: a(u)_xx in 1D, Laplacian of a(u)
/// in 2D (isotropic A(u) = a'(u) I). `max_rate` bounds |a'| on the solution
/// range; in 2D it is the eigenvalue bound Lambda of A.
struct Diffusion {
  ScalarFn potential;
  ScalarFn rate;
  double max_rate = 0.0;
};

struct Problem1D {
  std::string name;
  std::string description;
  double a = 0.0;
  double b = 1.0;
  Boundary boundary;

  ScalarFn flux;             ///< f(u); empty for pure diffusion
  ScalarFn flux_derivative;  ///< f'(u)
  double max_flux_speed = 0.0;

  std::optional<Diffusion> diffusion;

  ScalarFn initial;
  std::function<double(double, double)> exact;  ///< u(x, t), optional
  ProjectionHints hints;
  BoundPair bounds;

  int default_order = 2;
  std::size_t default_cells = 64;
  double default_tfinal = 1.0;
  std::optional<double> default_tvb;

  bool has_convection() const { return static_cast<bool>(flux); }
};

enum class ConvectionKind {
  none,
  autonomous,           ///< F = (f(u), g(u)), global Lax-Friedrichs per direction
  prescribed_velocity,  ///< F = u * (vx, vy)(x, y, t), local Lax-Friedrichs
  vorticity_stream      ///< velocity from the stream function of the current solution
};

using SpaceTimeFn = std::function<double(double, double, double)>;

struct Problem2D {
  std::string name;
  std::string description;
  double xa = 0.0, xb = 1.0, ya = 0.0, yb = 1.0;
  Boundary boundary;  ///< same kind on both axes

  ConvectionKind convection = ConvectionKind::none;
  ScalarFn f, df, g, dg;
  double max_fx = 0.0;
  double max_gy = 0.0;
  SpaceTimeFn velocity_x, velocity_y;  ///< prescribed velocity (x, y, t)
  SpaceTimeFn stream;                  ///< psi with (vx, vy) = (-psi_y, psi_x)

  std::optional<Diffusion> diffusion;

  std::function<double(double, double)> initial;
  SpaceTimeFn exact;  ///< u(x, y, t), optional
  ProjectionHints hints;
  BoundPair bounds;

  int default_order = 2;
  std::size_t default_cells = 32;
  double default_tfinal = 0.1;
  std::optional<double> default_tvb;
};

using Problem = std::variant<Problem1D, Problem2D>;
using ProblemParams = std::map<std::string, double>;

/// Registry lookup. Throws NotFound for unknown names and InvalidArgument for
/// unknown or out-of-range parameters.
Problem get_problem(const std::string& name, const ProblemParams& params = {});

struct ProblemInfo {
  std::string name;
  int dimension;
  std::string description;
  std::vector<std::string> parameters;
};
std::vector<ProblemInfo> list_problems();

inline int dimension(const Problem& p) { return p.index() == 0 ? 1 : 2; }
inline const std::string& problem_name(const Problem& p) {
  return std::visit([](const auto& q) -> const std::string& { return q.name; }, p);
}

/// max |df| on [lo, hi] by dense sampling.
double max_abs_on(const ScalarFn& df, double lo, double hi, int samples = 10000);

Grid1D make_grid(const Problem1D& p, std::size_t cells);
Grid2D make_grid(const Problem2D& p, std::size_t cells);
DGField1D initial_field(const Problem1D& p, std::size_t cells, int degree);
DGField2D initial_field(const Problem2D& p, std::size_t cells, int degree);

struct ErrorNorms {
  double l1 = 0.0;
  double linf = 0.0;
};

/// L1 (mean of |u_h - u| over the domain) and L-infinity errors at k+2 Gauss points per
/// direction. Throws Unsupported when the problem has no exact solution.
ErrorNorms exact_error(const DGField1D& field, const Problem1D& problem, double t);
ErrorNorms exact_error(const DGField2D& field, const Problem2D& problem, double t);

/// Barenblatt profile B_m(x, t) of the porous medium equation.
double barenblatt(double m, double x, double t);

}  // namespace mppdg
