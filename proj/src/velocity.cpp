#include "mppdg/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mppdg/basis.hpp"
#include "mppdg/errors.hpp"

namespace mppdg {

TensorEvaluator pointwise_evaluator(std::function<double(double, double)> fn) {
  return [fn = std::move(fn)](const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> out(xs.size() * ys.size());
    for (std::size_t b = 0; b < ys.size(); ++b)
      for (std::size_t a = 0; a < xs.size(); ++a) out[b * xs.size() + a] = fn(xs[a], ys[b]);
    return out;
  };
}

namespace {

// Lagrange basis on the m+1 Chebyshev-Lobatto nodes of [-1, 1].
struct LobattoBasis {
  std::vector<double> nodes;

  explicit LobattoBasis(std::size_t m) : nodes(m + 1) {
    for (std::size_t a = 0; a <= m; ++a)
      nodes[a] = -std::cos(std::numbers::pi * static_cast<double>(a) / static_cast<double>(m));
  }

  double value(std::size_t a, double t) const {
    double r = 1.0;
    for (std::size_t b = 0; b < nodes.size(); ++b)
      if (b != a) r *= (t - nodes[b]) / (nodes[a] - nodes[b]);
    return r;
  }

  double derivative(std::size_t a, double t) const {
    double sum = 0.0;
    for (std::size_t c = 0; c < nodes.size(); ++c) {
      if (c == a) continue;
      double r = 1.0 / (nodes[a] - nodes[c]);
      for (std::size_t b = 0; b < nodes.size(); ++b)
        if (b != a && b != c) r *= (t - nodes[b]) / (nodes[a] - nodes[b]);
      sum += r;
    }
    return sum;
  }
};

// Interpolation nodes of every cell along one axis; neighbours share their
// end node, so there are cells*m + 1 of them.
std::vector<double> global_nodes(const Grid1D& g, const LobattoBasis& basis) {
  const std::size_t m = basis.nodes.size() - 1;
  std::vector<double> out(g.cells() * m + 1);
  for (std::size_t i = 0; i < g.cells(); ++i)
    for (std::size_t a = 0; a <= m; ++a) out[i * m + a] = g.to_physical(i, basis.nodes[a]);
  out.back() = g.interface(g.cells());
  return out;
}

}  // namespace

// The velocity is the curl of the continuous Q^{k+1} interpolant of psi. It
// is divergence free in every cell with a continuous normal component, and
// the (k+1)-point Gauss rules integrate its products with P^k exactly, so
// constants stay steady and edge fluxes telescope.
VelocitySamples sample_velocity(const Grid2D& grid, int degree, const VelocitySource& source) {
  if (!source.stream) throw InvalidArgument("velocity source needs a stream evaluator");
  const auto& rule = gauss_rule(degree + 1);
  const std::size_t n = rule.size();
  const std::size_t m = n;  // interpolation degree k+1
  const std::size_t nx = grid.nx(), ny = grid.ny();
  const LobattoBasis basis(m);

  std::vector<double> L(n * (m + 1)), D(n * (m + 1));  // [q*(m+1) + a]
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t a = 0; a <= m; ++a) {
      L[q * (m + 1) + a] = basis.value(a, rule.nodes[q]);
      D[q * (m + 1) + a] = basis.derivative(a, rule.nodes[q]);
    }

  const auto xs = global_nodes(grid.x(), basis);
  const auto ys = global_nodes(grid.y(), basis);
  const auto psi_nodes = source.stream(xs, ys);
  auto psi = [&](std::size_t gi, std::size_t gj) { return psi_nodes[gj * xs.size() + gi]; };
  const double sx = 2.0 / grid.hx(), sy = 2.0 / grid.hy();

  VelocitySamples s;
  s.points = n;

  // vertical edges: u = -psi_y from the nodes on the edge
  s.x_face.resize((nx + 1) * ny * n);
  s.x_face_mean.resize((nx + 1) * ny);
  s.x_face_max.resize((nx + 1) * ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i <= nx; ++i) {
      const std::size_t e = j * (nx + 1) + i;
      double mx = 0.0;
      for (std::size_t q = 0; q < n; ++q) {
        double d = 0.0;
        for (std::size_t b = 0; b <= m; ++b) d += psi(i * m, j * m + b) * D[q * (m + 1) + b];
        const double val = -sy * d;
        s.x_face[e * n + q] = val;
        mx = std::max(mx, std::abs(val));
      }
      s.x_face_mean[e] = -(psi(i * m, (j + 1) * m) - psi(i * m, j * m)) / grid.hy();
      s.x_face_max[e] = mx;
      s.max_u = std::max(s.max_u, mx);
    }

  // horizontal edges: v = psi_x
  s.y_face.resize(nx * (ny + 1) * n);
  s.y_face_mean.resize(nx * (ny + 1));
  s.y_face_max.resize(nx * (ny + 1));
  for (std::size_t j = 0; j <= ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t e = j * nx + i;
      double mx = 0.0;
      for (std::size_t q = 0; q < n; ++q) {
        double d = 0.0;
        for (std::size_t a = 0; a <= m; ++a) d += psi(i * m + a, j * m) * D[q * (m + 1) + a];
        const double val = sx * d;
        s.y_face[e * n + q] = val;
        mx = std::max(mx, std::abs(val));
      }
      s.y_face_mean[e] = (psi((i + 1) * m, j * m) - psi(i * m, j * m)) / grid.hx();
      s.y_face_max[e] = mx;
      s.max_v = std::max(s.max_v, mx);
    }

  s.volume_u.resize(nx * ny * n * n);
  s.volume_v.resize(nx * ny * n * n);
  std::vector<double> cell((m + 1) * (m + 1));
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t b = 0; b <= m; ++b)
        for (std::size_t a = 0; a <= m; ++a) cell[b * (m + 1) + a] = psi(i * m + a, j * m + b);
      const std::size_t c = grid.index(i, j);
      for (std::size_t qb = 0; qb < n; ++qb)
        for (std::size_t qa = 0; qa < n; ++qa) {
          double dy = 0.0, dx = 0.0;
          for (std::size_t b = 0; b <= m; ++b)
            for (std::size_t a = 0; a <= m; ++a) {
              const double p = cell[b * (m + 1) + a];
              dy += p * L[qa * (m + 1) + a] * D[qb * (m + 1) + b];
              dx += p * D[qa * (m + 1) + a] * L[qb * (m + 1) + b];
            }
          const double u = -sy * dy, v = sx * dx;
          s.volume_u[c * n * n + qb * n + qa] = u;
          s.volume_v[c * n * n + qb * n + qa] = v;
          s.max_u = std::max(s.max_u, std::abs(u));
          s.max_v = std::max(s.max_v, std::abs(v));
        }
    }
  return s;
}

}  // namespace mppdg
