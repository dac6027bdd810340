#include "mppdg/field.hpp"

#include <algorithm>
#include <cmath>

#include "mppdg/errors.hpp"

namespace mppdg {

DGField1D::DGField1D(Grid1D grid, int degree, BoundPair bounds)
    : grid_(grid),
      degree_(degree),
      modes_(static_cast<std::size_t>(degree) + 1),
      bounds_(bounds),
      coeffs_(grid.cells() * modes_, 0.0) {
  if (degree < 0 || degree > 9) throw InvalidArgument("polynomial degree must be in [0, 9]");
}

std::vector<double> DGField1D::averages() const {
  std::vector<double> out(cells());
  for (std::size_t j = 0; j < cells(); ++j) out[j] = average(j);
  return out;
}

double DGField1D::evaluate(std::size_t j, double xi) const {
  const auto v = legendre_eval(degree_, xi);
  const auto c = cell(j);
  double s = 0.0;
  for (std::size_t m = 0; m < modes_; ++m) s += c[m] * v.value[m];
  return s;
}

DGField2D::DGField2D(Grid2D grid, int degree, BoundPair bounds)
    : grid_(grid),
      degree_(degree),
      basis_(degree),
      modes_(basis_.modes()),
      bounds_(bounds),
      coeffs_(grid.cells() * modes_, 0.0) {}

std::vector<double> DGField2D::averages() const {
  std::vector<double> out(cells());
  for (std::size_t c = 0; c < cells(); ++c) out[c] = average(c);
  return out;
}

double DGField2D::evaluate(std::size_t c, double xi, double eta) const {
  const auto px = legendre_eval(degree_, xi);
  const auto py = legendre_eval(degree_, eta);
  const auto coef = cell(c);
  double s = 0.0;
  for (std::size_t m = 0; m < modes_; ++m) {
    const auto [p, q] = basis_.powers(m);
    s += coef[m] * px.value[static_cast<std::size_t>(p)] * py.value[static_cast<std::size_t>(q)];
  }
  return s;
}

void StageFluxAccumulator<FluxRecord1D>::add(double weight, const FluxRecord1D& r) {
  if (sum_.values.empty()) sum_.values.assign(r.values.size(), 0.0);
  for (std::size_t i = 0; i < r.values.size(); ++i) sum_.values[i] += weight * r.values[i];
}

void StageFluxAccumulator<FluxRecord2D>::add(double weight, const FluxRecord2D& r) {
  if (sum_.x_faces.empty()) {
    sum_.x_faces.assign(r.x_faces.size(), 0.0);
    sum_.y_faces.assign(r.y_faces.size(), 0.0);
  }
  for (std::size_t i = 0; i < r.x_faces.size(); ++i) sum_.x_faces[i] += weight * r.x_faces[i];
  for (std::size_t i = 0; i < r.y_faces.size(); ++i) sum_.y_faces[i] += weight * r.y_faces[i];
}

namespace {

// Reference-coordinate pieces of cell [lo, hi] after splitting at breakpoints.
std::vector<std::pair<double, double>> cell_pieces(double lo, double hi,
                                                   const std::vector<double>& breaks,
                                                   int subcells) {
  std::vector<double> cuts{-1.0};
  for (double b : breaks) {
    if (b > lo && b < hi) cuts.push_back(-1.0 + 2.0 * (b - lo) / (hi - lo));
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> out;
  const int s = std::max(1, subcells);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double w = (cuts[i + 1] - cuts[i]) / s;
    for (int k = 0; k < s; ++k) out.emplace_back(cuts[i] + k * w, cuts[i] + (k + 1) * w);
  }
  return out;
}

}  // namespace

DGField1D project_initial(const std::function<double(double)>& u0, const Grid1D& grid, int degree,
                          BoundPair bounds, const ProjectionHints& hints) {
  DGField1D field(grid, degree, bounds);
  const auto& rule = gauss_rule(degree + 2);
  const std::size_t modes = field.modes();
  for (std::size_t j = 0; j < grid.cells(); ++j) {
    auto c = field.cell(j);
    const double lo = grid.interface(j);
    const double hi = grid.interface(j + 1);
    for (auto [p0, p1] : cell_pieces(lo, hi, hints.x_breaks, hints.subcells)) {
      const double half = 0.5 * (p1 - p0);
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double xi = p0 + half * (rule.nodes[q] + 1.0);
        const double w = rule.weights[q] * half;
        const double u = u0(grid.to_physical(j, xi));
        const auto v = legendre_eval(degree, xi);
        for (std::size_t m = 0; m < modes; ++m) c[m] += w * u * v.value[m];
      }
    }
    for (std::size_t m = 0; m < modes; ++m) c[m] *= (2.0 * double(m) + 1.0) / 2.0;
  }
  return field;
}

DGField2D project_initial(const std::function<double(double, double)>& u0, const Grid2D& grid,
                          int degree, BoundPair bounds, const ProjectionHints& hints) {
  DGField2D field(grid, degree, bounds);
  const auto& rule = gauss_rule(degree + 2);
  const auto& basis = field.basis();
  const std::size_t modes = field.modes();
  std::vector<double> px, py;
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const auto ypieces = cell_pieces(grid.y().interface(j), grid.y().interface(j + 1),
                                     hints.y_breaks, hints.subcells);
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const auto xpieces = cell_pieces(grid.x().interface(i), grid.x().interface(i + 1),
                                       hints.x_breaks, hints.subcells);
      auto c = field.cell(grid.index(i, j));
      for (auto [y0, y1] : ypieces) {
        const double hyp = 0.5 * (y1 - y0);
        for (std::size_t b = 0; b < rule.size(); ++b) {
          const double eta = y0 + hyp * (rule.nodes[b] + 1.0);
          const auto ly = legendre_eval(degree, eta);
          for (auto [x0, x1] : xpieces) {
            const double hxp = 0.5 * (x1 - x0);
            for (std::size_t a = 0; a < rule.size(); ++a) {
              const double xi = x0 + hxp * (rule.nodes[a] + 1.0);
              const double w = rule.weights[a] * hxp * rule.weights[b] * hyp;
              const double u = u0(grid.x().to_physical(i, xi), grid.y().to_physical(j, eta));
              const auto lx = legendre_eval(degree, xi);
              for (std::size_t m = 0; m < modes; ++m) {
                const auto [p, q] = basis.powers(m);
                c[m] += w * u * lx.value[static_cast<std::size_t>(p)] *
                        ly.value[static_cast<std::size_t>(q)];
              }
            }
          }
        }
      }
      for (std::size_t m = 0; m < modes; ++m) c[m] /= basis.norm(m);
    }
  }
  return field;
}

}  // namespace mppdg
