#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tensormp/gram.hpp"
#include "tensormp/mp_law.hpp"

namespace tensormp {

/// Right-continuous step CDF: value cumulative[i] on [breakpoints[i], breakpoints[i+1]),
/// zero left of the first breakpoint.
class EmpiricalCDF {
 public:
  EmpiricalCDF(std::vector<double> breakpoints, std::vector<double> cumulative);

  static EmpiricalCDF from_spectrum(const SpectralDistribution& s);
  /// Analytic CDF on an even grid over [l- - 0.1, l+ + 0.1], with a breakpoint
  /// at 0 carrying the atom. Each step holds the CDF value at its cell midpoint.
  /// Near a hard edge at 0 (c close to 1) the step error grows like sqrt(h);
  /// ks_to_law is exact there.
  static EmpiricalCDF from_law(const MPLaw& law, std::size_t grid_points = kDefaultGrid);

  double operator()(double x) const;
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& cumulative() const { return cumulative_; }

  static constexpr std::size_t kDefaultGrid = 4096;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> cumulative_;
};

/// sup_x |F(x) - G(x)|, exact over the merged breakpoints.
double ks_distance(const EmpiricalCDF& f, const EmpiricalCDF& g);

/// Whether F(x - eps) - eps <= G(x) <= F(x + eps) + eps holds for all x.
bool levy_feasible(const EmpiricalCDF& f, const EmpiricalCDF& g, double eps);

/// Lévy distance by bisection on eps; the returned value is an upper end of a
/// bracket of width <= tol (exactly 0 when F = G).
double levy_distance(const EmpiricalCDF& f, const EmpiricalCDF& g, double tol = 1e-9);

/// KS distance between an ESD and the exact analytic MP CDF, evaluated at the atoms.
double ks_to_law(const SpectralDistribution& s, const MPLaw& law);

struct IdentitySides {
  double lhs;
  double rhs;
};

/// For an n x p matrix A with no zero column, B its column-normalized version,
/// and positive diagonal lambda (length p):
///   lhs = Tr((A/sqrt(n) - B) diag(lambda) (A/sqrt(n) - B)^*)
///   rhs = sum_j lambda_j (||A_j||^2/n - 1) - 2 sum_j lambda_j (||A_j||/sqrt(n) - 1)
IdentitySides jiang_identity_sides(const Eigen::MatrixXcd& a, std::span<const double> lambda);

/// For p x n matrices A, B:
///   lhs = L(F^{AA*}, F^{BB*})^4,  rhs = (2/p^2) Tr((A-B)(A-B)^*) Tr(AA^* + BB^*).
IdentitySides bai_bound_sides(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// (1/N) sum atoms^q; implied zeros contribute nothing.
double empirical_moment(const SpectralDistribution& s, unsigned q);

}  // namespace tensormp
