#pragma once

#include <cstddef>

namespace mppdg {

enum class BoundaryKind { periodic, dirichlet, compact_zero };

/// Boundary treatment along one axis. Non-periodic kinds are realised with
/// ghost cells holding a constant state (zero derivative trace).
struct Boundary {
  BoundaryKind kind = BoundaryKind::periodic;
  double left_value = 0.0;
  double right_value = 0.0;

  static Boundary periodic() { return {}; }
  static Boundary compact_zero() { return {BoundaryKind::compact_zero, 0.0, 0.0}; }
  static Boundary dirichlet(double left, double right) {
    return {BoundaryKind::dirichlet, left, right};
  }

  bool is_periodic() const { return kind == BoundaryKind::periodic; }
  double ghost_left() const { return kind == BoundaryKind::dirichlet ? left_value : 0.0; }
  double ghost_right() const { return kind == BoundaryKind::dirichlet ? right_value : 0.0; }
};

/// Uniform grid on [a, b] with cells numbered 0..N-1 and interfaces 0..N.
/// Interface j sits at a + j*h; cell j spans interfaces j and j+1.
class Grid1D {
 public:
  Grid1D(double a, double b, std::size_t cells, Boundary boundary);

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t cells() const { return cells_; }
  double h() const { return h_; }
  const Boundary& boundary() const { return boundary_; }
  bool periodic() const { return boundary_.is_periodic(); }

  double interface(std::size_t j) const { return a_ + static_cast<double>(j) * h_; }
  double center(std::size_t j) const { return a_ + (static_cast<double>(j) + 0.5) * h_; }
  /// Physical coordinate of reference point xi in [-1, 1] of cell j.
  double to_physical(std::size_t j, double xi) const { return center(j) + 0.5 * h_ * xi; }

 private:
  double a_;
  double b_;
  std::size_t cells_;
  double h_;
  Boundary boundary_;
};

/// Validating factory; throws InvalidArgument for N < 1 or b <= a.
Grid1D build_grid_1d(double a, double b, std::size_t cells, Boundary boundary);

/// Tensor product of two 1D layouts; cell (i, j) is stored at j*Nx + i.
class Grid2D {
 public:
  Grid2D(Grid1D x, Grid1D y) : x_(x), y_(y) {}

  const Grid1D& x() const { return x_; }
  const Grid1D& y() const { return y_; }
  std::size_t nx() const { return x_.cells(); }
  std::size_t ny() const { return y_.cells(); }
  double hx() const { return x_.h(); }
  double hy() const { return y_.h(); }
  std::size_t cells() const { return nx() * ny(); }
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx() + i; }
  bool periodic() const { return x_.periodic() && y_.periodic(); }

 private:
  Grid1D x_;
  Grid1D y_;
};

Grid2D build_grid_2d(double xa, double xb, std::size_t nx, Boundary bx,
                     double ya, double yb, std::size_t ny, Boundary by);

}  // namespace mppdg
