#pragma once

#include <cstddef>
#include <vector>

#include "mppdg/field.hpp"
#include "mppdg/problem.hpp"
#include "mppdg/velocity.hpp"

namespace mppdg {

/// Grouping of the jump penalty in the 1D diffusive flux.
///   standard: r * u_x^- + (alpha/h) [a(u)]
///   scaled_penalty: r * (u_x^- + (alpha/h) [a(u)])
/// with r = [a(u)] / [u].
enum class DiffusiveFluxForm { standard, scaled_penalty };

struct DiffusiveFluxConfig {
  double alpha = 10.0;
  DiffusiveFluxForm form = DiffusiveFluxForm::standard;
  double jump_tolerance = 1e-12;

  /// alpha = 1 for k <= 1, 10 otherwise.
  static DiffusiveFluxConfig for_degree(int k);
  void validate() const;
};

/// Global Lax-Friedrichs flux.
inline double convective_flux(double u_minus, double u_plus, const ScalarFn& f, double alpha_glf) {
  return 0.5 * (f(u_minus) + f(u_plus)) - 0.5 * alpha_glf * (u_plus - u_minus);
}

struct DiffusiveTraceFlux {
  double tilde = 0.0;  ///< approximation of a(u)_x at the interface
  double hat = 0.0;    ///< a(u^+)
};

/// 1D diffusive interface fluxes from traces u^-, u^+ and (u_h)_x^-.
DiffusiveTraceFlux diffusive_fluxes_1d(double u_minus, double u_plus, double ux_minus,
                                       const Diffusion& diffusion,
                                       const DiffusiveFluxConfig& config, double h);

/// a'(u) from the supplied rate, or a centered difference of a with step 1e-6.
double diffusion_rate(const Diffusion& diffusion, double u);

struct Rhs1D {
  std::vector<double> dudt;  ///< same layout as DGField1D::coefficients()
  FluxRecord1D flux;         ///< cell-average fluxes H at interfaces 0..N
};

struct Rhs2D {
  std::vector<double> dudt;
  FluxRecord2D flux;  ///< edge-averaged H (x faces) and G (y faces)
};

/// Semi-discrete operator of the direct DG method in 1D. The mode-0 entry
/// of cell j is -(H[j+1] - H[j]) / h evaluated from the returned record.
Rhs1D semidiscrete_rhs_1d(const DGField1D& field, const Problem1D& problem,
                          const DiffusiveFluxConfig& config);

/// 2D counterpart on the total-degree space. Velocity-driven problems need
/// `velocity` sampled for the field's grid and degree.
Rhs2D semidiscrete_rhs_2d(const DGField2D& field, const Problem2D& problem,
                          const DiffusiveFluxConfig& config,
                          const VelocitySamples* velocity = nullptr);

}  // namespace mppdg
