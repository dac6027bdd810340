#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "mppdg/dg_operator.hpp"
#include "mppdg/field.hpp"
#include "mppdg/mesh.hpp"
#include "mppdg/velocity.hpp"

namespace mppdg {

/// Trigonometric interpolant on a periodic rectangle, built from cell
/// averages. Coefficient (s, t) multiplies b_s(x) b_t(y) with
/// b_s(x) = exp(i k_s (x - x0)) for |s| < N/2 and sin(k_s (x - x0)) for the
/// Nyquist index of an even N.
class SpectralField {
 public:
  SpectralField(const Grid2D& grid, Eigen::MatrixXcd coefficients);

  /// Field built so that its exact cell averages reproduce `averages`
  /// (cell-major layout j*Nx + i).
  static SpectralField from_averages(const std::vector<double>& averages, const Grid2D& grid);

  const Eigen::MatrixXcd& coefficients() const { return coeffs_; }
  std::size_t nx() const { return static_cast<std::size_t>(coeffs_.rows()); }
  std::size_t ny() const { return static_cast<std::size_t>(coeffs_.cols()); }

  /// Values of d^dx/dx^dx d^dy/dy^dy of the field at every (xs[a], ys[b]),
  /// stored at b * xs.size() + a.
  std::vector<double> evaluate_tensor(const std::vector<double>& xs, const std::vector<double>& ys,
                                      int dx = 0, int dy = 0) const;
  double evaluate(double x, double y, int dx = 0, int dy = 0) const;

  /// Exact cell averages on the construction grid.
  std::vector<double> cell_averages() const;

  /// Coefficient-wise map c(s,t) -> c(s,t) * g(k_s, k_t).
  template <class G>
  SpectralField map(G g) const {
    Eigen::MatrixXcd out = coeffs_;
    for (Eigen::Index s = 0; s < out.rows(); ++s)
      for (Eigen::Index t = 0; t < out.cols(); ++t)
        out(s, t) *= g(kx_[static_cast<std::size_t>(s)], ky_[static_cast<std::size_t>(t)]);
    return SpectralField(grid_, std::move(out));
  }

 private:
  Eigen::MatrixXcd basis_matrix(const std::vector<double>& pts, bool x_axis, int order) const;

  Grid2D grid_;
  Eigen::MatrixXcd coeffs_;
  std::vector<double> kx_, ky_;
};

/// Solves Laplacian(psi) = omega on the periodic rectangle, omega given by
/// cell averages. Throws SolvabilityError when |mean(omega)| > 1e-10.
SpectralField solve_stream_function(const std::vector<double>& omega_averages, const Grid2D& grid);

/// (u, v) = (-psi_y, psi_x) at the given points.
std::vector<std::array<double, 2>> velocity_at(const SpectralField& psi,
                                               const std::vector<std::array<double, 2>>& points);

/// Tensor evaluators of u, v and psi for sample_velocity().
VelocitySource spectral_velocity_source(const SpectralField& psi);

struct NsRhs {
  Rhs2D rhs;
  VelocitySamples velocity;
  double mean_removed = 0.0;  ///< |mean(omega)| subtracted before the solve
};

/// Right-hand side of the vorticity transport equation with the velocity
/// rebuilt from the current cell averages. The problem supplies 1/Re through
/// its diffusion entry; no diffusion selects the inviscid path.
NsRhs ns_rhs(const DGField2D& omega, const Problem2D& problem, const DiffusiveFluxConfig& config);

}  // namespace mppdg
