#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace mppdg {

/// Values and reference-coordinate derivatives of Legendre modes 0..k.
struct LegendreValues {
  std::vector<double> value;
  std::vector<double> first;
  std::vector<double> second;
};

/// Evaluates P_0..P_k and their first two derivatives at x in [-1, 1].
/// No clamping is applied.
LegendreValues legendre_eval(int k, double x);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule with n nodes on [-1, 1], 1 <= n <= 10.
const QuadratureRule& gauss_rule(int n);

/// Modal Legendre basis of degree k on the reference interval. Mode 0 is
/// the constant 1, so coefficient 0 is the cell average. Tables are
/// precomputed at the k+1 Gauss nodes used by the spatial operator.
class Basis1D {
 public:
  explicit Basis1D(int degree);

  int degree() const { return degree_; }
  std::size_t modes() const { return modes_; }
  /// Reference-cell norm: integral of P_m^2 over [-1, 1].
  double norm(std::size_t m) const { return 2.0 / (2.0 * static_cast<double>(m) + 1.0); }

  const QuadratureRule& rule() const { return rule_; }
  // Tables indexed [q * modes + m].
  const std::vector<double>& value() const { return value_; }
  const std::vector<double>& first() const { return first_; }
  const std::vector<double>& second() const { return second_; }

  /// P_m(+1) = 1, P_m(-1) = (-1)^m, P_m'(+1) = m(m+1)/2, P_m'(-1) = (-1)^(m+1) m(m+1)/2.
  double right_value(std::size_t) const { return 1.0; }
  double left_value(std::size_t m) const { return (m % 2 == 0) ? 1.0 : -1.0; }
  double right_slope(std::size_t m) const { return 0.5 * double(m) * double(m + 1); }
  double left_slope(std::size_t m) const { return (m % 2 == 0 ? -1.0 : 1.0) * right_slope(m); }

 private:
  int degree_;
  std::size_t modes_;
  QuadratureRule rule_;
  std::vector<double> value_;
  std::vector<double> first_;
  std::vector<double> second_;
};

/// Total-degree space P^k on the reference square: modes P_p(xi) P_q(eta)
/// with p + q <= k, ordered by total degree, then by increasing q.
/// Mode 0 is (0,0); mode 1 is (1,0); mode 2 is (0,1).
class Basis2D {
 public:
  explicit Basis2D(int degree);

  int degree() const { return degree_; }
  std::size_t modes() const { return powers_.size(); }
  const std::array<int, 2>& powers(std::size_t m) const { return powers_[m]; }
  double norm(std::size_t m) const;

  double evaluate(std::size_t m, double xi, double eta) const;

 private:
  int degree_;
  std::vector<std::array<int, 2>> powers_;
};

inline std::size_t p_k_dimension(int k) {
  return static_cast<std::size_t>((k + 1) * (k + 2) / 2);
}

}  // namespace mppdg
