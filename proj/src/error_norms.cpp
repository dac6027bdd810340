#include <algorithm>
#include <cmath>

#include "mppdg/errors.hpp"
#include "mppdg/problem.hpp"

namespace mppdg {

ErrorNorms exact_error(const DGField1D& field, const Problem1D& problem, double t) {
  if (!problem.exact) throw Unsupported("problem '" + problem.name + "' has no exact solution");
  const auto& grid = field.grid();
  const auto& rule = gauss_rule(field.degree() + 2);
  ErrorNorms e;
  for (std::size_t j = 0; j < grid.cells(); ++j) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double xi = rule.nodes[q];
      const double err = std::abs(field.evaluate(j, xi) - problem.exact(grid.to_physical(j, xi), t));
      e.l1 += rule.weights[q] * err * 0.5 * grid.h();
      e.linf = std::max(e.linf, err);
    }
  }
  e.l1 /= grid.h() * static_cast<double>(grid.cells());
  return e;
}

ErrorNorms exact_error(const DGField2D& field, const Problem2D& problem, double t) {
  if (!problem.exact) throw Unsupported("problem '" + problem.name + "' has no exact solution");
  const auto& grid = field.grid();
  const auto& rule = gauss_rule(field.degree() + 2);
  const double jac = 0.25 * grid.hx() * grid.hy();
  ErrorNorms e;
  for (std::size_t j = 0; j < grid.ny(); ++j)
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const std::size_t c = grid.index(i, j);
      for (std::size_t b = 0; b < rule.size(); ++b)
        for (std::size_t a = 0; a < rule.size(); ++a) {
          const double xi = rule.nodes[a], eta = rule.nodes[b];
          const double x = grid.x().to_physical(i, xi);
          const double y = grid.y().to_physical(j, eta);
          const double err = std::abs(field.evaluate(c, xi, eta) - problem.exact(x, y, t));
          e.l1 += rule.weights[a] * rule.weights[b] * err * jac;
          e.linf = std::max(e.linf, err);
        }
    }
  e.l1 /= grid.hx() * grid.hy() * static_cast<double>(grid.cells());
  return e;
}

}  // namespace mppdg
