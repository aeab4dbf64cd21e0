#include "tensormp/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "tensormp/error.hpp"

namespace tensormp {

GaussLegendreRule make_gauss_legendre(std::size_t order) {
  if (order < 1) throw PreconditionError("Gauss-Legendre order must be positive");
  const std::size_t n = order;
  GaussLegendreRule rule{std::vector<double>(n), std::vector<double>(n)};
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p0 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double pm = p0;
        p0 = p1;
        p1 = ((2.0 * j - 1.0) * z * p0 - (j - 1.0) * pm) / static_cast<double>(j);
      }
      dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const GaussLegendreRule& gauss_legendre_64() {
  static const GaussLegendreRule rule = make_gauss_legendre(64);
  return rule;
}

double GaussLegendreRule::integrate(const std::function<double(double)>& f, double a, double b) const {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(mid + half * nodes[i]);
  return half * acc;
}

namespace {

void refine(const std::function<double(double)>& f, double a, double b, double whole, double tol, int depth,
            int max_depth, QuadratureResult& out) {
  const auto& rule = gauss_legendre_64();
  const double mid = 0.5 * (a + b);
  const double left = rule.integrate(f, a, mid);
  const double right = rule.integrate(f, mid, b);
  const double err = std::abs(left + right - whole);
  out.max_depth_reached = std::max(out.max_depth_reached, depth);
  if (err <= tol) {
    out.value += left + right;
    out.error_estimate += err;
    return;
  }
  if (depth >= max_depth) {
    out.value += left + right;
    out.error_estimate += err;
    out.converged = false;
    return;
  }
  refine(f, a, mid, left, 0.5 * tol, depth + 1, max_depth, out);
  refine(f, mid, b, right, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                                    int max_depth) {
  QuadratureResult out;
  if (a == b) return out;
  const double whole = gauss_legendre_64().integrate(f, a, b);
  refine(f, a, b, whole, tol, 1, max_depth, out);
  return out;
}

}  // namespace tensormp
