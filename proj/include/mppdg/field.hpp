#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mppdg/basis.hpp"
#include "mppdg/mesh.hpp"

namespace mppdg {

/// Global solution bounds [lower, upper] (u_m, u_M) taken from the initial data.
struct BoundPair {
  double lower = 0.0;
  double upper = 1.0;
};

/// Piecewise P^k solution on a 1D grid, stored as modal Legendre coefficients
/// in cell-major order: coefficient m of cell j is at j*(k+1) + m.
class DGField1D {
 public:
  DGField1D(Grid1D grid, int degree, BoundPair bounds = {});

  const Grid1D& grid() const { return grid_; }
  int degree() const { return degree_; }
  std::size_t modes() const { return modes_; }
  std::size_t cells() const { return grid_.cells(); }
  const BoundPair& bounds() const { return bounds_; }

  std::span<double> cell(std::size_t j) { return {coeffs_.data() + j * modes_, modes_}; }
  std::span<const double> cell(std::size_t j) const { return {coeffs_.data() + j * modes_, modes_}; }
  double average(std::size_t j) const { return coeffs_[j * modes_]; }
  void set_average(std::size_t j, double v) { coeffs_[j * modes_] = v; }
  std::vector<double> averages() const;

  std::vector<double>& coefficients() { return coeffs_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  /// u_h at reference coordinate xi of cell j.
  double evaluate(std::size_t j, double xi) const;

 private:
  Grid1D grid_;
  int degree_;
  std::size_t modes_;
  BoundPair bounds_;
  std::vector<double> coeffs_;
};

/// Piecewise P^k (total degree) solution on a 2D grid; mode m of cell
/// index c = j*Nx + i is at c*dim + m.
class DGField2D {
 public:
  DGField2D(Grid2D grid, int degree, BoundPair bounds = {});

  const Grid2D& grid() const { return grid_; }
  int degree() const { return degree_; }
  std::size_t modes() const { return modes_; }
  std::size_t cells() const { return grid_.cells(); }
  const BoundPair& bounds() const { return bounds_; }
  const Basis2D& basis() const { return basis_; }

  std::span<double> cell(std::size_t c) { return {coeffs_.data() + c * modes_, modes_}; }
  std::span<const double> cell(std::size_t c) const { return {coeffs_.data() + c * modes_, modes_}; }
  double average(std::size_t c) const { return coeffs_[c * modes_]; }
  void set_average(std::size_t c, double v) { coeffs_[c * modes_] = v; }
  std::vector<double> averages() const;

  std::vector<double>& coefficients() { return coeffs_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  double evaluate(std::size_t c, double xi, double eta) const;

 private:
  Grid2D grid_;
  int degree_;
  Basis2D basis_;
  std::size_t modes_;
  BoundPair bounds_;
  std::vector<double> coeffs_;
};

/// Cell-average interface fluxes in 1D: N+1 values, interface j between
/// cells j-1 and j. With periodic boundaries entries 0 and N are identical.
struct FluxRecord1D {
  std::vector<double> values;
};

/// Edge-averaged fluxes in 2D. x_faces holds (Nx+1)*Ny vertical-edge values
/// at j*(Nx+1) + i; y_faces holds Nx*(Ny+1) horizontal-edge values at j*Nx + i.
struct FluxRecord2D {
  std::vector<double> x_faces;
  std::vector<double> y_faces;
};

/// Running weighted sum of stage flux records (the RK-combined flux).
template <class Record>
class StageFluxAccumulator;

template <>
class StageFluxAccumulator<FluxRecord1D> {
 public:
  void add(double weight, const FluxRecord1D& r);
  const FluxRecord1D& result() const { return sum_; }

 private:
  FluxRecord1D sum_;
};

template <>
class StageFluxAccumulator<FluxRecord2D> {
 public:
  void add(double weight, const FluxRecord2D& r);
  const FluxRecord2D& result() const { return sum_; }

 private:
  FluxRecord2D sum_;
};

/// Breakpoints where the projected function is non-smooth. Cells are split at
/// these coordinates and each piece integrated separately, so piecewise
/// polynomial data aligned with the breakpoints is projected exactly.
/// `subcells` applies a uniform composite rule on top (for curved fronts).
struct ProjectionHints {
  std::vector<double> x_breaks;
  std::vector<double> y_breaks;
  int subcells = 1;
};

/// L2 projection onto V_h^k by Gauss quadrature with k+2 nodes per piece.
DGField1D project_initial(const std::function<double(double)>& u0, const Grid1D& grid, int degree,
                          BoundPair bounds = {}, const ProjectionHints& hints = {});
DGField2D project_initial(const std::function<double(double, double)>& u0, const Grid2D& grid,
                          int degree, BoundPair bounds = {}, const ProjectionHints& hints = {});

}  // namespace mppdg
