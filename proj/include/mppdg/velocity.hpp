#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "mppdg/mesh.hpp"

namespace mppdg {

/// Evaluates a scalar field at every pair (xs[a], ys[b]); result stored at
/// b * xs.size() + a.
using TensorEvaluator =
    std::function<std::vector<double>(const std::vector<double>& xs, const std::vector<double>& ys)>;

struct VelocitySource {
  TensorEvaluator stream;  ///< psi with (u, v) = (-psi_y, psi_x)
};

/// Velocity at the quadrature points used by the 2D operator, with n = k+1
/// Gauss points per edge and n^2 per cell. Taken from a continuous piecewise
/// Q^{k+1} interpolant of the stream function, so it is discretely
/// divergence free and edge means equal stream-function differences.
struct VelocitySamples {
  std::size_t points = 0;
  std::vector<double> x_face;       ///< u at [(j*(Nx+1) + i)*n + q]
  std::vector<double> y_face;       ///< v at [(j*Nx + i)*n + q], j in 0..Ny
  std::vector<double> x_face_mean;  ///< quadrature average per vertical edge
  std::vector<double> y_face_mean;
  std::vector<double> x_face_max;   ///< max |u| per vertical edge
  std::vector<double> y_face_max;
  std::vector<double> volume_u;     ///< [c*n*n + b*n + a], a along x
  std::vector<double> volume_v;
  double max_u = 0.0;
  double max_v = 0.0;
};

VelocitySamples sample_velocity(const Grid2D& grid, int degree, const VelocitySource& source);

/// Wraps pointwise (x, y) functions as tensor evaluators.
TensorEvaluator pointwise_evaluator(std::function<double(double, double)> fn);

}  // namespace mppdg
