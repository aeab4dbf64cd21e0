#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tensormp {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t order() const { return nodes.size(); }
  /// Fixed-rule integral of f over [a, b].
  double integrate(const std::function<double(double)>& f, double a, double b) const;
};

/// Newton iteration on P_n from Chebyshev-like starting guesses.
GaussLegendreRule make_gauss_legendre(std::size_t order);

/// Shared 64-point rule.
const GaussLegendreRule& gauss_legendre_64();

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int max_depth_reached = 0;
  bool converged = true;
};

/// Panel bisection: a panel is accepted when its 64-point value agrees with the
/// sum over its two halves to within the panel's share of `tol`. At most
/// `max_depth` bisections along any path.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol = 1e-9,
                                    int max_depth = 8);

}  // namespace tensormp
