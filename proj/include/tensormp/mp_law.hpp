#pragma once

#include <functional>

namespace tensormp {

/// Marchenko-Pastur law with ratio c for the unit-tau model: density
/// sqrt((l+ - x)(x - l-)) / (2 pi x) on [l-, l+] with l+- = (1 +- sqrt(c))^2,
/// plus an atom of mass max(0, 1 - c) at zero.
class MPLaw {
 public:
  explicit MPLaw(double c);

  double c() const { return c_; }
  double lambda_minus() const { return lambda_minus_; }
  double lambda_plus() const { return lambda_plus_; }
  double atom_mass() const { return atom_mass_; }

  /// Continuous part only; zero outside the open support and at x <= 0.
  double density(double x) const;

  /// atom_mass * 1{x >= 0} + integral of the density up to x.
  double cdf(double x) const;

  /// Integral of x^q dF, q <= 20.
  double moment(unsigned q) const;

  /// Integral of g over [l-, l+] after the substitution
  /// x = (l+ + l-)/2 + ((l+ - l-)/2) sin(theta). g is evaluated at interior
  /// points only, so integrable endpoint singularities are allowed.
  double integrate_over_support(const std::function<double(double)>& g) const;

  /// Maps theta in [-pi/2, pi/2] to x, computing x - l- as
  /// (l+ - l-) sin^2(theta/2 + pi/4) to avoid cancellation near the lower edge.
  double support_point(double theta) const;

 private:
  double integrate_theta(double theta_hi, unsigned power) const;

  double c_;
  double lambda_minus_;
  double lambda_plus_;
  double atom_mass_;
};

inline constexpr double kMPQuadratureTol = 1e-9;

}  // namespace tensormp
