#include "mppdg/basis.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "mppdg/errors.hpp"

namespace mppdg {

LegendreValues legendre_eval(int k, double x) {
  if (k < 0) throw InvalidArgument("negative polynomial degree");
  const auto n = static_cast<std::size_t>(k) + 1;
  LegendreValues out{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  out.value[0] = 1.0;
  if (n > 1) {
    out.value[1] = x;
    out.first[1] = 1.0;
  }
  // (m+1) P_{m+1} = (2m+1) x P_m - m P_{m-1}
  // P'_{m+1} = P'_{m-1} + (2m+1) P_m,  P''_{m+1} = P''_{m-1} + (2m+1) P'_m
  for (std::size_t m = 1; m + 1 < n; ++m) {
    const double dm = static_cast<double>(m);
    out.value[m + 1] = ((2.0 * dm + 1.0) * x * out.value[m] - dm * out.value[m - 1]) / (dm + 1.0);
    out.first[m + 1] = out.first[m - 1] + (2.0 * dm + 1.0) * out.value[m];
    out.second[m + 1] = out.second[m - 1] + (2.0 * dm + 1.0) * out.first[m];
  }
  return out;
}

namespace {

QuadratureRule make_gauss_rule(int n) {
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      const auto v = legendre_eval(n, x);
      dp = v.first[static_cast<std::size_t>(n)];
      const double dx = v.value[static_cast<std::size_t>(n)] / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    dp = legendre_eval(n, x).first[static_cast<std::size_t>(n)];
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  // symmetrize: the rule is exactly symmetric about 0
  for (int i = 0; i < n / 2; ++i) {
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    const double x = 0.5 * (rule.nodes[hi] - rule.nodes[lo]);
    const double w = 0.5 * (rule.weights[hi] + rule.weights[lo]);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;

  // exactness check for monomials up to degree 2n-1
  for (int p = 0; p <= 2 * n - 1; ++p) {
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) sum += rule.weights[q] * std::pow(rule.nodes[q], p);
    const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1.0);
    if (std::abs(sum - exact) > 1e-13)
      throw std::logic_error("Gauss rule failed exactness check");
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_rule(int n) {
  constexpr int max_nodes = 10;
  if (n < 1 || n > max_nodes)
    throw InvalidArgument("Gauss rule supports 1..10 nodes, got " + std::to_string(n));
  static std::once_flag once;
  static std::vector<QuadratureRule> rules;
  std::call_once(once, [] {
    rules.reserve(max_nodes);
    for (int i = 1; i <= max_nodes; ++i) rules.push_back(make_gauss_rule(i));
  });
  return rules[static_cast<std::size_t>(n - 1)];
}

Basis1D::Basis1D(int degree)
    : degree_(degree),
      modes_(static_cast<std::size_t>(degree) + 1),
      rule_(gauss_rule(degree + 1)) {
  if (degree < 0 || degree > 9) throw InvalidArgument("polynomial degree must be in [0, 9]");
  const std::size_t nq = rule_.size();
  value_.resize(nq * modes_);
  first_.resize(nq * modes_);
  second_.resize(nq * modes_);
  for (std::size_t q = 0; q < nq; ++q) {
    const auto v = legendre_eval(degree, rule_.nodes[q]);
    for (std::size_t m = 0; m < modes_; ++m) {
      value_[q * modes_ + m] = v.value[m];
      first_[q * modes_ + m] = v.first[m];
      second_[q * modes_ + m] = v.second[m];
    }
  }
}

Basis2D::Basis2D(int degree) : degree_(degree) {
  if (degree < 0 || degree > 9) throw InvalidArgument("polynomial degree must be in [0, 9]");
  for (int total = 0; total <= degree; ++total)
    for (int q = 0; q <= total; ++q) powers_.push_back({total - q, q});
}

double Basis2D::norm(std::size_t m) const {
  const auto [p, q] = powers_[m];
  return 4.0 / ((2.0 * p + 1.0) * (2.0 * q + 1.0));
}

double Basis2D::evaluate(std::size_t m, double xi, double eta) const {
  const auto [p, q] = powers_[m];
  return legendre_eval(p, xi).value[static_cast<std::size_t>(p)] *
         legendre_eval(q, eta).value[static_cast<std::size_t>(q)];
}

}  // namespace mppdg
