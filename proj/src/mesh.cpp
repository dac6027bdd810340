#include "mppdg/mesh.hpp"

#include <cmath>

#include "mppdg/errors.hpp"

namespace mppdg {

Grid1D::Grid1D(double a, double b, std::size_t cells, Boundary boundary)
    : a_(a), b_(b), cells_(cells), h_(0.0), boundary_(boundary) {
  if (cells == 0) throw InvalidArgument("grid needs at least one cell");
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
    throw InvalidArgument("grid interval must satisfy a < b");
  h_ = (b - a) / static_cast<double>(cells);
}

Grid1D build_grid_1d(double a, double b, std::size_t cells, Boundary boundary) {
  return Grid1D(a, b, cells, boundary);
}

Grid2D build_grid_2d(double xa, double xb, std::size_t nx, Boundary bx,
                     double ya, double yb, std::size_t ny, Boundary by) {
  return Grid2D(Grid1D(xa, xb, nx, bx), Grid1D(ya, yb, ny, by));
}

}  // namespace mppdg
