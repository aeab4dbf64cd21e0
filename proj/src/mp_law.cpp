#include "tensormp/mp_law.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tensormp/error.hpp"
#include "tensormp/quadrature.hpp"

namespace tensormp {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

MPLaw::MPLaw(double c) : c_(c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("MP ratio c must be positive");
  const double r = std::sqrt(c);
  lambda_minus_ = (1.0 - r) * (1.0 - r);
  lambda_plus_ = (1.0 + r) * (1.0 + r);
  atom_mass_ = std::max(0.0, 1.0 - c);
}

double MPLaw::density(double x) const {
  if (!(x > lambda_minus_ && x < lambda_plus_) || x <= 0.0) return 0.0;
  return std::sqrt((lambda_plus_ - x) * (x - lambda_minus_)) / (2.0 * std::numbers::pi * x);
}

double MPLaw::support_point(double theta) const {
  const double s = std::sin(0.5 * theta + 0.25 * std::numbers::pi);
  return lambda_minus_ + (lambda_plus_ - lambda_minus_) * s * s;
}

// Integral over theta in [-pi/2, theta_hi] of x^power * density(x) dx/dtheta,
// where density * dx/dtheta = h^2 cos^2(theta) / (2 pi x) and h = (l+ - l-)/2.
double MPLaw::integrate_theta(double theta_hi, unsigned power) const {
  const double h = 0.5 * (lambda_plus_ - lambda_minus_);
  auto integrand = [&](double theta) {
    const double x = support_point(theta);
    const double cs = std::cos(theta);
    const double base = h * h * cs * cs / (2.0 * std::numbers::pi);
    if (power == 0) return base / x;
    return base * std::pow(x, static_cast<double>(power) - 1.0);
  };
  return integrate_adaptive(integrand, -kHalfPi, theta_hi, kMPQuadratureTol).value;
}

double MPLaw::cdf(double x) const {
  if (x < 0.0) return 0.0;
  if (x >= lambda_plus_) return 1.0;
  double out = atom_mass_;
  if (x > lambda_minus_) {
    const double h = 0.5 * (lambda_plus_ - lambda_minus_);
    const double mid = 0.5 * (lambda_plus_ + lambda_minus_);
    const double theta = std::asin(std::clamp((x - mid) / h, -1.0, 1.0));
    out += integrate_theta(theta, 0);
  }
  return std::clamp(out, 0.0, 1.0);
}

double MPLaw::moment(unsigned q) const {
  if (q > 20) throw PreconditionError("MP moment order must be at most 20");
  if (q == 0) return 1.0;
  return integrate_theta(kHalfPi, q);
}

double MPLaw::integrate_over_support(const std::function<double(double)>& g) const {
  const double h = 0.5 * (lambda_plus_ - lambda_minus_);
  auto integrand = [&](double theta) { return g(support_point(theta)) * h * std::cos(theta); };
  return integrate_adaptive(integrand, -kHalfPi, kHalfPi, kMPQuadratureTol).value;
}

}  // namespace tensormp
