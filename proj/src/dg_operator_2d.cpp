#include <algorithm>
#include <cmath>
#include <string>

#include "mppdg/dg_operator.hpp"
#include "mppdg/errors.hpp"

namespace mppdg {

namespace {

// Basis tables at the n x n volume points and the n points of each edge.
struct Tables2D {
  std::size_t modes = 0;
  std::size_t n = 0;
  std::vector<double> phi, dxi, deta, dxixi, detaeta;  // [(b*n + a)*modes + m]
  std::vector<double> right, left, top, bottom;        // [q*modes + m]
  std::vector<double> right_dxi, left_dxi, top_deta, bottom_deta;
  std::vector<double> scale;  // (2p+1)(2q+1)

  Tables2D(const Basis2D& basis, const QuadratureRule& rule) {
    modes = basis.modes();
    n = rule.size();
    const int k = basis.degree();
    std::vector<LegendreValues> at(n);
    for (std::size_t q = 0; q < n; ++q) at[q] = legendre_eval(k, rule.nodes[q]);
    const auto lo = legendre_eval(k, -1.0);
    const auto hi = legendre_eval(k, 1.0);

    phi.resize(n * n * modes);
    dxi.resize(n * n * modes);
    deta.resize(n * n * modes);
    dxixi.resize(n * n * modes);
    detaeta.resize(n * n * modes);
    for (auto* t : {&right, &left, &top, &bottom, &right_dxi, &left_dxi, &top_deta, &bottom_deta})
      t->resize(n * modes);
    scale.resize(modes);

    for (std::size_t m = 0; m < modes; ++m) {
      const auto [pi, qi] = basis.powers(m);
      const auto p = static_cast<std::size_t>(pi), r = static_cast<std::size_t>(qi);
      scale[m] = (2.0 * pi + 1.0) * (2.0 * qi + 1.0);
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < n; ++a) {
          const std::size_t idx = (b * n + a) * modes + m;
          phi[idx] = at[a].value[p] * at[b].value[r];
          dxi[idx] = at[a].first[p] * at[b].value[r];
          deta[idx] = at[a].value[p] * at[b].first[r];
          dxixi[idx] = at[a].second[p] * at[b].value[r];
          detaeta[idx] = at[a].value[p] * at[b].second[r];
        }
      for (std::size_t q = 0; q < n; ++q) {
        const std::size_t idx = q * modes + m;
        right[idx] = hi.value[p] * at[q].value[r];
        left[idx] = lo.value[p] * at[q].value[r];
        top[idx] = at[q].value[p] * hi.value[r];
        bottom[idx] = at[q].value[p] * lo.value[r];
        right_dxi[idx] = hi.first[p] * at[q].value[r];
        left_dxi[idx] = lo.first[p] * at[q].value[r];
        top_deta[idx] = at[q].value[p] * hi.first[r];
        bottom_deta[idx] = at[q].value[p] * lo.first[r];
      }
    }
  }
};

double dot(const double* table, std::span<const double> c, std::size_t modes) {
  double s = 0.0;
  for (std::size_t m = 0; m < modes; ++m) s += table[m] * c[m];
  return s;
}

[[noreturn]] void fail(const std::string& what, std::size_t index) {
  throw NumericalFailure(what + " " + std::to_string(index), static_cast<std::ptrdiff_t>(index));
}

}  // namespace

Rhs2D semidiscrete_rhs_2d(const DGField2D& field, const Problem2D& problem,
                          const DiffusiveFluxConfig& config, const VelocitySamples* velocity) {
  const Grid2D& grid = field.grid();
  const std::size_t nx = grid.nx(), ny = grid.ny();
  const double hx = grid.hx(), hy = grid.hy();
  const auto& rule = gauss_rule(field.degree() + 1);
  const Tables2D T(field.basis(), rule);
  const std::size_t n = T.n, modes = T.modes, cells = grid.cells();
  const auto& w = rule.weights;

  const bool autonomous = problem.convection == ConvectionKind::autonomous;
  const bool transported = problem.convection == ConvectionKind::prescribed_velocity ||
                           problem.convection == ConvectionKind::vorticity_stream;
  if (transported && (velocity == nullptr || velocity->points != n))
    throw InvalidArgument("problem '" + problem.name + "' needs velocity samples for this degree");
  const bool diffusion = problem.diffusion.has_value();
  const double penalty = diffusion ? config.alpha * problem.diffusion->max_rate / std::max(hx, hy) : 0.0;

  // traces per cell: values on all four sides, normal slopes on right and top
  std::vector<double> tr_r(cells * n), tr_l(cells * n), tr_t(cells * n), tr_b(cells * n);
  std::vector<double> sl_r(cells * n), sl_t(cells * n);
  for (std::size_t c = 0; c < cells; ++c) {
    const auto coef = field.cell(c);
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t o = q * modes;
      tr_r[c * n + q] = dot(&T.right[o], coef, modes);
      tr_l[c * n + q] = dot(&T.left[o], coef, modes);
      tr_t[c * n + q] = dot(&T.top[o], coef, modes);
      tr_b[c * n + q] = dot(&T.bottom[o], coef, modes);
      sl_r[c * n + q] = 2.0 / hx * dot(&T.right_dxi[o], coef, modes);
      sl_t[c * n + q] = 2.0 / hy * dot(&T.top_deta[o], coef, modes);
    }
  }

  const Boundary& bc = problem.boundary;
  const bool periodic = grid.periodic();

  // point fluxes at edge quadrature points
  auto point_flux = [&](double um, double up, double slope_minus, double speed, bool x_dir) {
    double flux = 0.0;
    if (autonomous) {
      if (x_dir)
        flux = 0.5 * (problem.f(um) + problem.f(up)) - 0.5 * problem.max_fx * (up - um);
      else
        flux = 0.5 * (problem.g(um) + problem.g(up)) - 0.5 * problem.max_gy * (up - um);
    } else if (transported) {
      flux = 0.5 * speed * (um + up) - 0.5 * std::abs(speed) * (up - um);
    }
    if (diffusion)
      flux -= diffusion_rate(*problem.diffusion, um) * slope_minus + penalty * (up - um);
    return flux;
  };

  Rhs2D out;
  out.flux.x_faces.assign((nx + 1) * ny, 0.0);
  out.flux.y_faces.assign(nx * (ny + 1), 0.0);
  std::vector<double> xh((nx + 1) * ny * n), xa((nx + 1) * ny * n, 0.0);
  std::vector<double> yh(nx * (ny + 1) * n), ya(nx * (ny + 1) * n, 0.0);

  for (std::size_t j = 0; j < ny; ++j) {
    const std::size_t last = periodic ? nx - 1 : nx;
    for (std::size_t i = 0; i <= last; ++i) {
      const std::size_t e = j * (nx + 1) + i;
      double avg = 0.0;
      for (std::size_t q = 0; q < n; ++q) {
        double um, sm, up;
        if (i == 0 && !periodic) {
          um = bc.ghost_left();
          sm = 0.0;
        } else {
          const std::size_t cl = grid.index(i == 0 ? nx - 1 : i - 1, j);
          um = tr_r[cl * n + q];
          sm = sl_r[cl * n + q];
        }
        up = (i == nx) ? bc.ghost_right() : tr_l[grid.index(i, j) * n + q];
        const double speed = transported ? velocity->x_face[e * n + q] : 0.0;
        const double hq = point_flux(um, up, sm, speed, true);
        xh[e * n + q] = hq;
        if (diffusion) xa[e * n + q] = problem.diffusion->potential(up);
        avg += 0.5 * w[q] * hq;
      }
      if (!std::isfinite(avg)) fail("non-finite flux on vertical edge", e);
      out.flux.x_faces[e] = avg;
    }
    if (periodic) {
      const std::size_t e0 = j * (nx + 1), e1 = j * (nx + 1) + nx;
      out.flux.x_faces[e1] = out.flux.x_faces[e0];
      for (std::size_t q = 0; q < n; ++q) {
        xh[e1 * n + q] = xh[e0 * n + q];
        xa[e1 * n + q] = xa[e0 * n + q];
      }
    }
  }

  const std::size_t ylast = periodic ? ny - 1 : ny;
  for (std::size_t j = 0; j <= ylast; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t e = j * nx + i;
      double avg = 0.0;
      for (std::size_t q = 0; q < n; ++q) {
        double um, sm, up;
        if (j == 0 && !periodic) {
          um = bc.ghost_left();
          sm = 0.0;
        } else {
          const std::size_t cb = grid.index(i, j == 0 ? ny - 1 : j - 1);
          um = tr_t[cb * n + q];
          sm = sl_t[cb * n + q];
        }
        up = (j == ny) ? bc.ghost_right() : tr_b[grid.index(i, j) * n + q];
        const double speed = transported ? velocity->y_face[e * n + q] : 0.0;
        const double gq = point_flux(um, up, sm, speed, false);
        yh[e * n + q] = gq;
        if (diffusion) ya[e * n + q] = problem.diffusion->potential(up);
        avg += 0.5 * w[q] * gq;
      }
      if (!std::isfinite(avg)) fail("non-finite flux on horizontal edge", e);
      out.flux.y_faces[e] = avg;
    }
  if (periodic) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t e0 = i, e1 = ny * nx + i;
      out.flux.y_faces[e1] = out.flux.y_faces[e0];
      for (std::size_t q = 0; q < n; ++q) {
        yh[e1 * n + q] = yh[e0 * n + q];
        ya[e1 * n + q] = ya[e0 * n + q];
      }
    }
  }

  out.dudt.assign(cells * modes, 0.0);
  const double vol_fx = 0.5 * hy, vol_gy = 0.5 * hx;
  const double vol_axx = hy / hx, vol_ayy = hx / hy;
  std::vector<double> r(modes);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t c = grid.index(i, j);
      const auto coef = field.cell(c);
      std::fill(r.begin(), r.end(), 0.0);
      if (modes > 1) {
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t a = 0; a < n; ++a) {
            const std::size_t pt = b * n + a;
            const double u = dot(&T.phi[pt * modes], coef, modes);
            double fu = 0.0, gu = 0.0, au = 0.0;
            if (autonomous) {
              fu = problem.f(u);
              gu = problem.g(u);
            } else if (transported) {
              fu = u * velocity->volume_u[c * n * n + pt];
              gu = u * velocity->volume_v[c * n * n + pt];
            }
            if (diffusion) au = problem.diffusion->potential(u);
            if (!std::isfinite(fu) || !std::isfinite(gu) || !std::isfinite(au))
              fail("non-finite volume term in cell", c);
            const double ww = w[a] * w[b];
            const double cf = ww * vol_fx * fu, cg = ww * vol_gy * gu;
            const double cxx = ww * vol_axx * au, cyy = ww * vol_ayy * au;
            const std::size_t o = pt * modes;
            for (std::size_t m = 1; m < modes; ++m)
              r[m] += cf * T.dxi[o + m] + cg * T.deta[o + m] + cxx * T.dxixi[o + m] +
                      cyy * T.detaeta[o + m];
          }
        const std::size_t eR = j * (nx + 1) + i + 1, eL = j * (nx + 1) + i;
        const std::size_t eT = (j + 1) * nx + i, eB = j * nx + i;
        for (std::size_t q = 0; q < n; ++q) {
          const std::size_t o = q * modes;
          const double sx = 0.5 * hy * w[q], sy = 0.5 * hx * w[q];
          const double hr = xh[eR * n + q], hl = xh[eL * n + q];
          const double gt = yh[eT * n + q], gb = yh[eB * n + q];
          const double ar = 2.0 / hx * xa[eR * n + q], al = 2.0 / hx * xa[eL * n + q];
          const double at = 2.0 / hy * ya[eT * n + q], ab = 2.0 / hy * ya[eB * n + q];
          for (std::size_t m = 1; m < modes; ++m) {
            r[m] += sx * (-hr * T.right[o + m] - ar * T.right_dxi[o + m] + hl * T.left[o + m] +
                          al * T.left_dxi[o + m]);
            r[m] += sy * (-gt * T.top[o + m] - at * T.top_deta[o + m] + gb * T.bottom[o + m] +
                          ab * T.bottom_deta[o + m]);
          }
        }
      }
      double* rhs = out.dudt.data() + c * modes;
      for (std::size_t m = 1; m < modes; ++m) rhs[m] = T.scale[m] / (hx * hy) * r[m];
      const auto& X = out.flux.x_faces;
      const auto& Y = out.flux.y_faces;
      rhs[0] = -(X[j * (nx + 1) + i + 1] - X[j * (nx + 1) + i]) / hx -
               (Y[(j + 1) * nx + i] - Y[j * nx + i]) / hy;
    }
  return out;
}

}  // namespace mppdg
