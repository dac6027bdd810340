#include <algorithm>
#include <cmath>

#include "mppdg/errors.hpp"
#include "mppdg/limiters.hpp"

namespace mppdg {

double minmod(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

double tvb_minmod(double a, double b, double c, double threshold) {
  return std::abs(a) <= threshold ? a : minmod(a, b, c);
}

std::size_t tvb_limit(DGField1D& field, double m_tvb) {
  if (m_tvb < 0.0) throw InvalidArgument("TVB parameter must be >= 0");
  if (field.degree() < 1) return 0;
  const Grid1D& grid = field.grid();
  const std::size_t n = grid.cells();
  const std::size_t modes = field.modes();
  const double threshold = m_tvb * grid.h() * grid.h();
  const auto avg = field.averages();
  const Boundary& bc = grid.boundary();
  std::size_t changed = 0;
  for (std::size_t j = 0; j < n; ++j) {
    double left, right;
    if (grid.periodic()) {
      left = avg[(j + n - 1) % n];
      right = avg[(j + 1) % n];
    } else {
      left = j == 0 ? bc.ghost_left() : avg[j - 1];
      right = j + 1 == n ? bc.ghost_right() : avg[j + 1];
    }
    const double forward = right - avg[j], backward = avg[j] - left;
    auto c = field.cell(j);
    double dev_right = 0.0, dev_left = 0.0;
    for (std::size_t m = 1; m < modes; ++m) {
      dev_right += c[m];
      dev_left -= (m % 2 == 0 ? 1.0 : -1.0) * c[m];
    }
    const double mod_right = tvb_minmod(dev_right, forward, backward, threshold);
    const double mod_left = tvb_minmod(dev_left, forward, backward, threshold);
    if (mod_right == dev_right && mod_left == dev_left) continue;
    c[1] = 0.5 * (mod_right + mod_left);
    for (std::size_t m = 2; m < modes; ++m) c[m] = 0.0;
    ++changed;
  }
  return changed;
}

std::size_t tvb_limit(DGField2D& field, double m_tvb) {
  if (m_tvb < 0.0) throw InvalidArgument("TVB parameter must be >= 0");
  if (field.degree() < 1) return 0;
  const Grid2D& grid = field.grid();
  const std::size_t nx = grid.nx(), ny = grid.ny();
  const std::size_t modes = field.modes();
  const double tx = m_tvb * grid.hx() * grid.hx();
  const double ty = m_tvb * grid.hy() * grid.hy();
  const auto avg = field.averages();
  const Boundary& bc = grid.x().boundary();
  const bool periodic = grid.periodic();
  auto neighbor = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
    const auto sx = static_cast<std::ptrdiff_t>(nx), sy = static_cast<std::ptrdiff_t>(ny);
    if (periodic) {
      i = (i + sx) % sx;
      j = (j + sy) % sy;
    } else if (i < 0 || j < 0) {
      return bc.ghost_left();
    } else if (i >= sx || j >= sy) {
      return bc.ghost_right();
    }
    return avg[grid.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j))];
  };
  std::size_t changed = 0;
  // modes 1 and 2 are the x and y slopes
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t c = grid.index(i, j);
      const auto ii = static_cast<std::ptrdiff_t>(i), jj = static_cast<std::ptrdiff_t>(j);
      const double u = avg[c];
      auto coef = field.cell(c);
      const double sx = tvb_minmod(coef[1], neighbor(ii + 1, jj) - u, u - neighbor(ii - 1, jj), tx);
      const double sy = tvb_minmod(coef[2], neighbor(ii, jj + 1) - u, u - neighbor(ii, jj - 1), ty);
      if (sx == coef[1] && sy == coef[2]) continue;
      coef[1] = sx;
      coef[2] = sy;
      for (std::size_t m = 3; m < modes; ++m) coef[m] = 0.0;
      ++changed;
    }
  return changed;
}

}  // namespace mppdg
