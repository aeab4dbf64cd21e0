#include "tensormp/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "tensormp/error.hpp"

namespace tensormp {

EmpiricalCDF::EmpiricalCDF(std::vector<double> breakpoints, std::vector<double> cumulative) {
  if (breakpoints.size() != cumulative.size()) throw PreconditionError("breakpoints and cumulative differ in size");
  if (breakpoints.empty()) throw PreconditionError("empty CDF");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!(cumulative[i] >= 0.0 && cumulative[i] <= 1.0)) throw PreconditionError("CDF value outside [0, 1]");
    if (i > 0 && (breakpoints[i] < breakpoints[i - 1] || cumulative[i] < cumulative[i - 1]))
      throw PreconditionError("CDF breakpoints or values are not sorted");
  }
  if (std::abs(cumulative.back() - 1.0) > 1e-12) throw PreconditionError("CDF does not reach 1");
  // Collapse repeated breakpoints, keeping the right-continuous value.
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!breakpoints_.empty() && breakpoints_.back() == breakpoints[i]) {
      cumulative_.back() = cumulative[i];
    } else {
      breakpoints_.push_back(breakpoints[i]);
      cumulative_.push_back(cumulative[i]);
    }
  }
  cumulative_.back() = 1.0;
}

EmpiricalCDF EmpiricalCDF::from_spectrum(const SpectralDistribution& s) {
  std::vector<double> bp;
  std::vector<double> cum;
  const double total = static_cast<double>(s.ambient_dim);
  const auto zeros = s.implied_zeros();
  std::uint64_t count = 0;
  bool zero_placed = zeros == 0;
  for (std::size_t i = 0; i < s.atoms.size(); ++i) {
    const double x = s.atoms[i];
    if (!zero_placed && x >= 0.0) {
      count += zeros;
      zero_placed = true;
      if (x > 0.0) {
        bp.push_back(0.0);
        cum.push_back(static_cast<double>(count) / total);
      }
    }
    ++count;
    if (!bp.empty() && bp.back() == x) {
      cum.back() = static_cast<double>(count) / total;
    } else {
      bp.push_back(x);
      cum.push_back(static_cast<double>(count) / total);
    }
  }
  if (!zero_placed) {
    count += zeros;
    bp.push_back(0.0);
    cum.push_back(static_cast<double>(count) / total);
  }
  return EmpiricalCDF(std::move(bp), std::move(cum));
}

EmpiricalCDF EmpiricalCDF::from_law(const MPLaw& law, std::size_t grid_points) {
  if (grid_points < 2) throw PreconditionError("MP grid needs at least two points");
  const double lo = law.lambda_minus() - 0.1;
  const double hi = law.lambda_plus() + 0.1;
  std::vector<double> bp;
  bp.reserve(grid_points + 1);
  for (std::size_t i = 0; i < grid_points; ++i)
    bp.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1));
  if (law.atom_mass() > 0.0) {
    bp.push_back(0.0);
    std::sort(bp.begin(), bp.end());
  }
  // Each step takes the CDF at the middle of its cell, which halves the
  // worst-case gap to the continuous CDF compared with left sampling.
  std::vector<double> cum;
  cum.reserve(bp.size());
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) cum.push_back(law.cdf(0.5 * (bp[i] + bp[i + 1])));
  cum.push_back(1.0);
  return EmpiricalCDF(std::move(bp), std::move(cum));
}

double EmpiricalCDF::operator()(double x) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it == breakpoints_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double ks_distance(const EmpiricalCDF& f, const EmpiricalCDF& g) {
  // Both are right-continuous steps, so the supremum is attained at a merged
  // breakpoint; left limits equal the value at the previous breakpoint.
  double d = 0.0;
  for (double x : f.breakpoints()) d = std::max(d, std::abs(f(x) - g(x)));
  for (double x : g.breakpoints()) d = std::max(d, std::abs(f(x) - g(x)));
  return d;
}

bool levy_feasible(const EmpiricalCDF& f, const EmpiricalCDF& g, double eps) {
  // x -> G(x) - F(x - eps) and x -> F(x + eps) - G(x) are right-continuous steps;
  // their infima are taken at breakpoints of G or at shifted breakpoints of F.
  const auto& fb = f.breakpoints();
  const auto& fc = f.cumulative();
  const auto& gb = g.breakpoints();
  const auto& gc = g.cumulative();
  for (std::size_t j = 0; j < gb.size(); ++j) {
    if (f(gb[j] - eps) - eps > gc[j]) return false;
    if (gc[j] > f(gb[j] + eps) + eps) return false;
  }
  for (std::size_t i = 0; i < fb.size(); ++i) {
    if (fc[i] - eps > g(fb[i] + eps)) return false;
    if (g(fb[i] - eps) > fc[i] + eps) return false;
  }
  return true;
}

double levy_distance(const EmpiricalCDF& f, const EmpiricalCDF& g, double tol) {
  if (levy_feasible(f, g, 0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (levy_feasible(f, g, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double ks_to_law(const SpectralDistribution& s, const MPLaw& law) {
  const auto cdf = EmpiricalCDF::from_spectrum(s);
  double d = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < cdf.breakpoints().size(); ++i) {
    const double x = cdf.breakpoints()[i];
    const double g = law.cdf(x);
    // Law CDF is continuous away from 0, where its atom sits.
    const double g_left = x == 0.0 ? 0.0 : g;
    d = std::max({d, std::abs(cdf.cumulative()[i] - g), std::abs(prev - g_left)});
    prev = cdf.cumulative()[i];
  }
  return d;
}

IdentitySides jiang_identity_sides(const Eigen::MatrixXcd& a, std::span<const double> lambda) {
  const auto n = a.rows();
  const auto p = a.cols();
  if (static_cast<std::size_t>(p) != lambda.size()) throw PreconditionError("lambda length must equal column count");
  const double rn = std::sqrt(static_cast<double>(n));

  Eigen::MatrixXcd normalized(n, p);
  Eigen::VectorXd lam(p);
  double rhs = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double norm = a.col(j).norm();
    if (!(norm > 0.0)) throw PreconditionError("jiang_identity_sides: zero column " + std::to_string(j));
    normalized.col(j) = a.col(j) / norm;
    lam(j) = lambda[static_cast<std::size_t>(j)];
    rhs += lam(j) * (norm * norm / static_cast<double>(n) - 1.0) - 2.0 * lam(j) * (norm / rn - 1.0);
  }
  const Eigen::MatrixXcd diff = a / rn - normalized;
  const double lhs = (diff * lam.asDiagonal() * diff.adjoint()).trace().real();
  return {lhs, rhs};
}

IdentitySides bai_bound_sides(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw PreconditionError("bai_bound_sides: shape mismatch");
  const auto p = static_cast<std::uint64_t>(a.rows());
  const Eigen::MatrixXcd aa = a * a.adjoint();
  const Eigen::MatrixXcd bb = b * b.adjoint();
  const auto fa = EmpiricalCDF::from_spectrum(esd(hermitian_eigenvalues(aa), p));
  const auto fb = EmpiricalCDF::from_spectrum(esd(hermitian_eigenvalues(bb), p));
  const double levy = levy_distance(fa, fb);
  const double lhs = levy * levy * levy * levy;
  const double pd = static_cast<double>(p);
  const double rhs = 2.0 / (pd * pd) * (a - b).squaredNorm() * (aa + bb).trace().real();
  return {lhs, rhs};
}

double empirical_moment(const SpectralDistribution& s, unsigned q) {
  if (q < 1 || q > 20) throw PreconditionError("empirical_moment requires 1 <= q <= 20");
  double acc = 0.0;
  for (double x : s.atoms) acc += std::pow(x, static_cast<double>(q));
  return acc / static_cast<double>(s.ambient_dim);
}

}  // namespace tensormp
