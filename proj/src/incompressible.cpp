#include "mppdg/incompressible.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "mppdg/errors.hpp"

namespace mppdg {

namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// signed frequency of storage index s for n points; Nyquist reported as n/2
long signed_index(std::size_t s, std::size_t n) {
  const auto si = static_cast<long>(s), ni = static_cast<long>(n);
  return 2 * si <= ni ? si : si - ni;
}

bool is_nyquist(std::size_t s, std::size_t n) { return n % 2 == 0 && 2 * s == n; }

std::vector<double> wavenumbers(const Grid1D& g) {
  const std::size_t n = g.cells();
  std::vector<double> k(n);
  for (std::size_t s = 0; s < n; ++s) k[s] = 2.0 * pi * static_cast<double>(signed_index(s, n)) / (g.b() - g.a());
  return k;
}

// cell average of basis function s over cell i, divided by the discrete mode exp(2 pi i s i / n)
cd average_factor(std::size_t s, const Grid1D& g) {
  const std::size_t n = g.cells();
  if (is_nyquist(s, n)) return 2.0 / pi;
  const double z = pi * static_cast<double>(signed_index(s, n)) / static_cast<double>(n);
  const double sinc = z == 0.0 ? 1.0 : std::sin(z) / z;
  return std::polar(sinc, z);
}

}  // namespace

SpectralField::SpectralField(const Grid2D& grid, Eigen::MatrixXcd coefficients)
    : grid_(grid), coeffs_(std::move(coefficients)) {
  if (static_cast<std::size_t>(coeffs_.rows()) != grid.nx() ||
      static_cast<std::size_t>(coeffs_.cols()) != grid.ny())
    throw InvalidArgument("spectral coefficient shape does not match the grid");
  kx_ = wavenumbers(grid.x());
  ky_ = wavenumbers(grid.y());
}

SpectralField SpectralField::from_averages(const std::vector<double>& averages, const Grid2D& grid) {
  const std::size_t nx = grid.nx(), ny = grid.ny();
  if (averages.size() != nx * ny) throw InvalidArgument("average count does not match the grid");
  if (!grid.periodic()) throw Unsupported("spectral fields need a periodic grid");

  std::vector<cd> buf(nx * ny);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    auto* data = reinterpret_cast<fftw_complex*>(buf.data());
    plan = fftw_plan_dft_2d(static_cast<int>(nx), static_cast<int>(ny), data, data, FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) buf[i * ny + j] = averages[grid.index(i, j)];
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  Eigen::MatrixXcd c(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(ny));
  const double norm = static_cast<double>(nx * ny);
  for (std::size_t s = 0; s < nx; ++s) {
    const cd fx = average_factor(s, grid.x());
    for (std::size_t t = 0; t < ny; ++t)
      c(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) =
          buf[s * ny + t] / (norm * fx * average_factor(t, grid.y()));
  }
  return SpectralField(grid, std::move(c));
}

Eigen::MatrixXcd SpectralField::basis_matrix(const std::vector<double>& pts, bool x_axis, int order) const {
  const Grid1D& g = x_axis ? grid_.x() : grid_.y();
  const auto& k = x_axis ? kx_ : ky_;
  const std::size_t n = g.cells();
  Eigen::MatrixXcd e(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < pts.size(); ++a) {
    const double x = pts[a] - g.a();
    for (std::size_t s = 0; s < n; ++s) {
      const double ks = k[s];
      cd val;
      if (is_nyquist(s, n)) {
        // sin, k cos, -k^2 sin, -k^3 cos, ...
        const double phase = ks * x;
        const double mag = std::pow(ks, order);
        switch (order % 4) {
          case 0: val = mag * std::sin(phase); break;
          case 1: val = mag * std::cos(phase); break;
          case 2: val = -mag * std::sin(phase); break;
          default: val = -mag * std::cos(phase); break;
        }
      } else {
        val = std::pow(cd(0.0, ks), order) * std::polar(1.0, ks * x);
      }
      e(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(s)) = val;
    }
  }
  return e;
}

std::vector<double> SpectralField::evaluate_tensor(const std::vector<double>& xs,
                                                   const std::vector<double>& ys, int dx,
                                                   int dy) const {
  const Eigen::MatrixXcd ex = basis_matrix(xs, true, dx);
  const Eigen::MatrixXcd ey = basis_matrix(ys, false, dy);
  const Eigen::MatrixXd r = ((ex * coeffs_) * ey.transpose()).real();
  return std::vector<double>(r.data(), r.data() + r.size());
}

double SpectralField::evaluate(double x, double y, int dx, int dy) const {
  return evaluate_tensor({x}, {y}, dx, dy)[0];
}

std::vector<double> SpectralField::cell_averages() const {
  const std::size_t nx = grid_.nx(), ny = grid_.ny();
  auto avg_matrix = [](const Grid1D& g) {
    const std::size_t n = g.cells();
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t s = 0; s < n; ++s) {
        const double phase = 2.0 * pi * static_cast<double>(s * i % n) / static_cast<double>(n);
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s)) =
            average_factor(s, g) * std::polar(1.0, phase);
      }
    return a;
  };
  const Eigen::MatrixXd r = ((avg_matrix(grid_.x()) * coeffs_) * avg_matrix(grid_.y()).transpose()).real();
  std::vector<double> out(nx * ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      out[grid_.index(i, j)] = r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

SpectralField solve_stream_function(const std::vector<double>& omega_averages, const Grid2D& grid) {
  double mean = 0.0;
  for (double w : omega_averages) mean += w;
  mean /= static_cast<double>(omega_averages.size());
  if (std::abs(mean) > 1e-10)
    throw SolvabilityError("vorticity mean " + std::to_string(mean) +
                           " is not zero; the periodic Poisson problem has no solution");
  const auto omega = SpectralField::from_averages(omega_averages, grid);
  return omega.map([](double kx, double ky) {
    const double k2 = kx * kx + ky * ky;
    return k2 == 0.0 ? 0.0 : -1.0 / k2;
  });
}

std::vector<std::array<double, 2>> velocity_at(const SpectralField& psi,
                                               const std::vector<std::array<double, 2>>& points) {
  std::vector<std::array<double, 2>> out;
  out.reserve(points.size());
  for (const auto& p : points)
    out.push_back({-psi.evaluate(p[0], p[1], 0, 1), psi.evaluate(p[0], p[1], 1, 0)});
  return out;
}

VelocitySource spectral_velocity_source(const SpectralField& psi) {
  VelocitySource s;
  s.stream = [psi](const std::vector<double>& xs, const std::vector<double>& ys) {
    return psi.evaluate_tensor(xs, ys, 0, 0);
  };
  return s;
}

NsRhs ns_rhs(const DGField2D& omega, const Problem2D& problem, const DiffusiveFluxConfig& config) {
  if (!omega.grid().periodic()) throw Unsupported("vorticity-stream coupling needs periodic boundaries");
  auto avg = omega.averages();
  double mean = 0.0;
  for (double w : avg) mean += w;
  mean /= static_cast<double>(avg.size());
  for (double& w : avg) w -= mean;
  NsRhs out;
  out.mean_removed = std::abs(mean);
  const auto psi = solve_stream_function(avg, omega.grid());
  out.velocity = sample_velocity(omega.grid(), omega.degree(), spectral_velocity_source(psi));
  out.rhs = semidiscrete_rhs_2d(omega, problem, config, &out.velocity);
  return out;
}

}  // namespace mppdg
