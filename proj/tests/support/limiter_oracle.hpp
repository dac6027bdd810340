// Brute-force checks of the 1D flux limiter on small random instances.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mppdg/limiters.hpp"

namespace oracle {

struct Instance {
  std::vector<double> ubar;
  mppdg::FluxRecord1D low, high;
  mppdg::BoundPair bounds{0.0, 1.0};
  double lambda = 0.5;
};

// Periodic f(u) = u with upwind first-order fluxes (MPP for lambda <= 1) and
// a random high-order perturbation large enough to trigger every case.
inline Instance random_instance(unsigned seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0), pert(-1.0, 1.0);
  Instance in;
  in.ubar.resize(n);
  for (auto& u : in.ubar) {
    const double r = unit(rng);
    u = r < 0.2 ? 0.0 : (r < 0.4 ? 1.0 : unit(rng));
  }
  in.low.values.resize(n + 1);
  in.high.values.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    in.low.values[i] = in.ubar[(i + n - 1) % n];
    in.high.values[i] = in.low.values[i] + pert(rng) * (unit(rng) < 0.3 ? 0.05 : 1.0);
  }
  in.low.values[n] = in.low.values[0];
  in.high.values[n] = in.high.values[0];
  return in;
}

inline double cell_update(const Instance& in, std::size_t j, double theta_left, double theta_right) {
  const double hl = theta_left * (in.high.values[j] - in.low.values[j]) + in.low.values[j];
  const double hr = theta_right * (in.high.values[j + 1] - in.low.values[j + 1]) + in.low.values[j + 1];
  return in.ubar[j] - in.lambda * (hr - hl);
}

inline bool in_bounds(const Instance& in, double u, double slack) {
  return u <= in.bounds.upper + slack && u >= in.bounds.lower - slack;
}

// Every theta pair in [0, a] x [0, b] keeps the cell in bounds (the update is
// bilinear, so the four corners decide).
inline bool box_feasible(const Instance& in, std::size_t j, double a, double b, double slack) {
  return in_bounds(in, cell_update(in, j, 0, 0), slack) && in_bounds(in, cell_update(in, j, a, 0), slack) &&
         in_bounds(in, cell_update(in, j, 0, b), slack) && in_bounds(in, cell_update(in, j, a, b), slack);
}

struct Verdict {
  bool ok = true;
  std::string why;
  void fail(const std::string& s) {
    if (ok) why = s;
    ok = false;
  }
};

// Checks the limiter output on one instance:
//  - theta in [0, 1], the limited update stays in bounds;
//  - theta at each interface is the min of the adjacent per-cell ranges;
//  - each per-cell range is box-feasible and no point of a `steps`-grid
//    dominates it by more than one grid step while staying box-feasible.
inline Verdict check(const Instance& in, int steps) {
  Verdict v;
  const std::size_t n = in.ubar.size();
  const auto res = mppdg::apply_mpp_limiter_1d(in.high, in.low, in.ubar, in.bounds, in.lambda, true);
  const auto& th = res.report.theta_x;
  for (double t : th)
    if (!(t >= 0.0 && t <= 1.0)) v.fail("theta outside [0,1]");
  for (std::size_t j = 0; j < n; ++j) {
    const double u = in.ubar[j] - in.lambda * (res.flux.values[j + 1] - res.flux.values[j]);
    if (!in_bounds(in, u, 1e-12)) v.fail("limited update out of bounds in cell " + std::to_string(j));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& l = res.report.cell_bounds[(i + n - 1) % n];
    const auto& r = res.report.cell_bounds[i];
    const double expect = std::min({1.0, l[1], l[3], r[0], r[2]});
    if (th[i] != expect) v.fail("theta is not the min of the adjacent ranges at " + std::to_string(i));
  }
  const double step = 1.0 / steps;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = res.report.cell_bounds[j];
    const double a_l = std::min(b[0], b[2]), a_r = std::min(b[1], b[3]);
    if (!box_feasible(in, j, a_l, a_r, 1e-12)) v.fail("cell range not feasible in cell " + std::to_string(j));
    for (int p = 0; p <= steps; ++p) {
      const double a = p * step;
      if (a < a_l) continue;
      for (int q = 0; q <= steps; ++q) {
        const double c = q * step;
        if (c < a_r) continue;
        if (a <= a_l + step && c <= a_r + step) continue;
        if (box_feasible(in, j, a, c, 0.0)) {
          v.fail("dominated range in cell " + std::to_string(j));
          p = steps + 1;
          break;
        }
      }
    }
  }
  return v;
}

}  // namespace oracle
