#include <cmath>
#include <string>

#include "mppdg/dg_operator.hpp"
#include "mppdg/errors.hpp"

namespace mppdg {

DiffusiveFluxConfig DiffusiveFluxConfig::for_degree(int k) {
  DiffusiveFluxConfig c;
  c.alpha = k <= 1 ? 1.0 : 10.0;
  return c;
}

void DiffusiveFluxConfig::validate() const {
  if (!(alpha > 0.0)) throw InvalidArgument("penalty alpha must be positive");
  if (!(jump_tolerance > 0.0)) throw InvalidArgument("jump tolerance must be positive");
}

double diffusion_rate(const Diffusion& diffusion, double u) {
  if (diffusion.rate) return diffusion.rate(u);
  constexpr double step = 1e-6;
  return (diffusion.potential(u + step) - diffusion.potential(u - step)) / (2.0 * step);
}

DiffusiveTraceFlux diffusive_fluxes_1d(double u_minus, double u_plus, double ux_minus,
                                       const Diffusion& diffusion,
                                       const DiffusiveFluxConfig& config, double h) {
  const double a_minus = diffusion.potential(u_minus);
  const double a_plus = diffusion.potential(u_plus);
  const double jump_u = u_plus - u_minus;
  const double jump_a = a_plus - a_minus;
  const double r = std::abs(jump_u) < config.jump_tolerance
                       ? diffusion_rate(diffusion, 0.5 * (u_minus + u_plus))
                       : jump_a / jump_u;
  DiffusiveTraceFlux out;
  out.hat = a_plus;
  if (config.form == DiffusiveFluxForm::standard)
    out.tilde = r * ux_minus + config.alpha / h * jump_a;
  else
    out.tilde = r * (ux_minus + config.alpha / h * jump_a);
  return out;
}

namespace {

struct Trace {
  double value = 0.0;  // u at the interface
  double slope = 0.0;  // du/dx at the interface (physical units)
};

}  // namespace

Rhs1D semidiscrete_rhs_1d(const DGField1D& field, const Problem1D& problem,
                          const DiffusiveFluxConfig& config) {
  const Grid1D& grid = field.grid();
  const std::size_t n = grid.cells();
  const std::size_t modes = field.modes();
  const double h = grid.h();
  const Basis1D basis(field.degree());
  const auto& rule = basis.rule();
  const std::size_t nq = rule.size();
  const bool convection = problem.has_convection();
  const bool diffusion = problem.diffusion.has_value();

  // right traces (value, slope) and left traces (value) of every cell
  std::vector<Trace> right(n), left(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto c = field.cell(j);
    Trace r, l;
    for (std::size_t m = 0; m < modes; ++m) {
      r.value += c[m];
      r.slope += c[m] * basis.right_slope(m);
      l.value += c[m] * basis.left_value(m);
    }
    r.slope *= 2.0 / h;
    right[j] = r;
    left[j] = l;
  }

  Rhs1D out;
  out.flux.values.assign(n + 1, 0.0);
  std::vector<double> hat_a(n + 1, 0.0);
  const Boundary& bc = grid.boundary();
  const std::size_t last = grid.periodic() ? n - 1 : n;
  for (std::size_t i = 0; i <= last; ++i) {
    Trace minus, plus;
    if (i == 0)
      minus = grid.periodic() ? right[n - 1] : Trace{bc.ghost_left(), 0.0};
    else
      minus = right[i - 1];
    if (i == n)
      plus = Trace{bc.ghost_right(), 0.0};
    else
      plus = {left[i].value, 0.0};

    double flux = 0.0;
    if (convection)
      flux = convective_flux(minus.value, plus.value, problem.flux, problem.max_flux_speed);
    if (diffusion) {
      const auto d = diffusive_fluxes_1d(minus.value, plus.value, minus.slope, *problem.diffusion,
                                         config, h);
      flux -= d.tilde;
      hat_a[i] = d.hat;
    }
    if (!std::isfinite(flux))
      throw NumericalFailure("non-finite interface flux at interface " + std::to_string(i),
                             static_cast<std::ptrdiff_t>(i));
    out.flux.values[i] = flux;
  }
  if (grid.periodic()) {
    out.flux.values[n] = out.flux.values[0];
    hat_a[n] = hat_a[0];
  }

  out.dudt.assign(n * modes, 0.0);
  const auto& H = out.flux.values;
  const double two_over_h = 2.0 / h;
  for (std::size_t j = 0; j < n; ++j) {
    const auto c = field.cell(j);
    double* rhs = out.dudt.data() + j * modes;
    for (std::size_t q = 0; q < nq; ++q) {
      double u = 0.0;
      for (std::size_t m = 0; m < modes; ++m) u += c[m] * basis.value()[q * modes + m];
      const double fu = convection ? problem.flux(u) : 0.0;
      const double au = diffusion ? problem.diffusion->potential(u) : 0.0;
      if (!std::isfinite(fu) || !std::isfinite(au))
        throw NumericalFailure("non-finite volume term in cell " + std::to_string(j),
                               static_cast<std::ptrdiff_t>(j));
      const double w = rule.weights[q];
      for (std::size_t m = 1; m < modes; ++m)
        rhs[m] += w * (fu * basis.first()[q * modes + m] +
                       two_over_h * au * basis.second()[q * modes + m]);
    }
    for (std::size_t m = 1; m < modes; ++m) {
      double r = rhs[m] - H[j + 1] + H[j] * basis.left_value(m);
      if (diffusion)
        r += two_over_h * (-hat_a[j + 1] * basis.right_slope(m) + hat_a[j] * basis.left_slope(m));
      rhs[m] = (2.0 * static_cast<double>(m) + 1.0) / h * r;
    }
    rhs[0] = -(H[j + 1] - H[j]) / h;
  }
  return out;
}

}  // namespace mppdg
