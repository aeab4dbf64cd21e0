#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tensormp/model_config.hpp"
#include "tensormp/sampler.hpp"

namespace tensormp {

/// m x m matrix sharing its nonzero spectrum with the n^k x n^k model matrix.
struct GramMatrix {
  ModelKind model;
  Eigen::MatrixXcd entries;

  std::size_t order() const { return static_cast<std::size_t>(entries.rows()); }
};

/// entries(a,b) = sqrt(tau_a tau_b) prod_l <y_a^(l), y_b^(l)> / (||y_a^(l)|| ||y_b^(l)||);
/// the diagonal is tau exactly.
GramMatrix build_correlation_gram(const BaseSample& sample, const TauScheme& tau, unsigned threads = 1);
GramMatrix build_correlation_gram(const BaseSample& sample, const NormProfile& norms, const TauScheme& tau,
                                  unsigned threads = 1);

/// entries(a,b) = sqrt(tau_a tau_b) prod_l <y_a^(l), y_b^(l)> / n.
GramMatrix build_covariance_gram(const BaseSample& sample, const TauScheme& tau, unsigned threads = 1);
GramMatrix build_covariance_gram(const BaseSample& sample, const NormProfile& norms, const TauScheme& tau,
                                 unsigned threads = 1);

GramMatrix build_gram(ModelKind model, const BaseSample& sample, const NormProfile& norms, const TauScheme& tau,
                      unsigned threads = 1);

struct EigenSolveResult {
  std::vector<double> values;  // ascending, clamped at 0
  std::size_t clamped = 0;     // count of small negatives raised to 0
  double max_residual = 0.0;   // max ||Gv - lambda v|| / ||G|| over spot-checked pairs
};

/// Eigenvalues of a (positive semidefinite) Gram matrix. Negatives within
/// 1e-9 * max(1, largest) are clamped; anything more negative is an error.
EigenSolveResult eigenvalues(const GramMatrix& g);

/// Ascending eigenvalues of a general Hermitian matrix, without clamping.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& a);

/// Throws NumericalError unless a is Hermitian within 1e-12 relative.
void require_hermitian(const Eigen::MatrixXcd& a);

/// ESD of the N x N model: m atoms plus N - m implied zeros.
struct SpectralDistribution {
  std::vector<double> atoms;  // ascending
  std::uint64_t ambient_dim = 1;
  double zero_mass = 0.0;

  std::uint64_t implied_zeros() const { return ambient_dim - atoms.size(); }
  double cdf(double x) const;
};

/// When m > N the m - N smallest eigenvalues are structural zeros and are
/// dropped; they must lie within the clamp tolerance.
SpectralDistribution esd(std::vector<double> eigs, std::uint64_t ambient_dim);

/// 1e-9 * max(1, largest |eigenvalue|).
double zero_threshold(std::span<const double> eigs);

/// Eigenvalues above zero_threshold, ascending.
std::vector<double> nonzero_eigenvalues(std::span<const double> eigs);

inline constexpr std::uint64_t kDenseCap = 4096;

/// Explicit Y_alpha = y^(1) (x) ... (x) y^(k) with j_1 most significant.
Eigen::VectorXcd tensor_vector(const BaseSample& sample, std::size_t alpha);

/// The N x N model matrix formed explicitly. Test oracle for the Gram path.
Eigen::MatrixXcd materialize_dense(const BaseSample& sample, const TauScheme& tau, ModelKind model);

}  // namespace tensormp
