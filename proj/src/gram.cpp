#include "tensormp/gram.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "tensormp/error.hpp"
#include "tensormp/parallel.hpp"

namespace tensormp {

namespace {

void check_tau(const BaseSample& s, const TauScheme& tau) {
  if (tau.size() != s.m()) throw PreconditionError("tau length does not match the sample count m");
}

// Fills the upper triangle (a <= b) with pair(a, b) and mirrors by conjugation.
template <class PairFn>
Eigen::MatrixXcd assemble(std::size_t m, unsigned threads, PairFn&& pair) {
  Eigen::MatrixXcd g(m, m);
  parallel_for(m, threads, [&](std::size_t a) {
    for (std::size_t b = a; b < m; ++b) {
      const cplx v = pair(a, b);
      g(a, b) = v;
      if (b != a) g(b, a) = std::conj(v);
    }
  });
  return g;
}

}  // namespace

GramMatrix build_correlation_gram(const BaseSample& s, const NormProfile& norms, const TauScheme& tau,
                                  unsigned threads) {
  check_tau(s, tau);
  const std::size_t k = s.k();
  auto g = assemble(s.m(), threads, [&](std::size_t a, std::size_t b) -> cplx {
    if (a == b) return tau.values[a];
    cplx prod = std::sqrt(tau.values[a] * tau.values[b]);
    for (std::size_t l = 0; l < k; ++l) {
      const double scale = std::sqrt(norms.level_sq_norm(a, l) * norms.level_sq_norm(b, l));
      prod *= inner(s.level(a, l), s.level(b, l)) / scale;
    }
    return prod;
  });
  return {ModelKind::Correlation, std::move(g)};
}

GramMatrix build_covariance_gram(const BaseSample& s, const NormProfile& norms, const TauScheme& tau,
                                 unsigned threads) {
  check_tau(s, tau);
  const std::size_t k = s.k();
  const double n = static_cast<double>(s.n());
  auto g = assemble(s.m(), threads, [&](std::size_t a, std::size_t b) -> cplx {
    if (a == b) {
      double d = tau.values[a];
      for (std::size_t l = 0; l < k; ++l) d *= norms.level_sq_norm(a, l) / n;
      return d;
    }
    cplx prod = std::sqrt(tau.values[a] * tau.values[b]);
    for (std::size_t l = 0; l < k; ++l) prod *= inner(s.level(a, l), s.level(b, l)) / n;
    return prod;
  });
  return {ModelKind::Covariance, std::move(g)};
}

GramMatrix build_correlation_gram(const BaseSample& s, const TauScheme& tau, unsigned threads) {
  return build_correlation_gram(s, norm_profile(s), tau, threads);
}

GramMatrix build_covariance_gram(const BaseSample& s, const TauScheme& tau, unsigned threads) {
  return build_covariance_gram(s, norm_profile(s), tau, threads);
}

GramMatrix build_gram(ModelKind model, const BaseSample& s, const NormProfile& norms, const TauScheme& tau,
                      unsigned threads) {
  return model == ModelKind::Correlation ? build_correlation_gram(s, norms, tau, threads)
                                         : build_covariance_gram(s, norms, tau, threads);
}

void require_hermitian(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw NumericalError("matrix is not square");
  if (a.size() == 0) return;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double skew = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (!(skew <= 1e-12 * scale)) throw NumericalError("matrix is not Hermitian");
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& a) {
  require_hermitian(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

EigenSolveResult eigenvalues(const GramMatrix& g) {
  const auto& a = g.entries;
  require_hermitian(a);
  EigenSolveResult r;
  const auto m = a.rows();
  if (m == 0) return r;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(m - 1)));
  const double denom = norm > 0.0 ? norm : 1.0;

  for (Eigen::Index i : {Eigen::Index{0}, m / 2, m - 1}) {
    const Eigen::VectorXcd v = solver.eigenvectors().col(i);
    const double res = (a * v - ev(i) * v).norm() / denom;
    r.max_residual = std::max(r.max_residual, res);
  }
  if (!(r.max_residual <= 1e-8)) throw NumericalError("eigenpair residual exceeds 1e-8 * ||G||");

  r.values.assign(ev.data(), ev.data() + m);
  std::sort(r.values.begin(), r.values.end());
  const double tol = 1e-9 * std::max(1.0, r.values.back());
  for (double& v : r.values) {
    if (v >= 0.0) continue;
    if (v < -tol) throw NumericalError("Gram matrix has a negative eigenvalue beyond clamp tolerance");
    v = 0.0;
    ++r.clamped;
  }
  return r;
}

double SpectralDistribution::cdf(double x) const {
  const auto below = std::upper_bound(atoms.begin(), atoms.end(), x) - atoms.begin();
  double count = static_cast<double>(below);
  if (x >= 0.0) count += static_cast<double>(implied_zeros());
  return count / static_cast<double>(ambient_dim);
}

double zero_threshold(std::span<const double> eigs) {
  double largest = 0.0;
  for (double v : eigs) largest = std::max(largest, std::abs(v));
  return 1e-9 * std::max(1.0, largest);
}

std::vector<double> nonzero_eigenvalues(std::span<const double> eigs) {
  const double tol = zero_threshold(eigs);
  std::vector<double> out;
  for (double v : eigs)
    if (v > tol) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

SpectralDistribution esd(std::vector<double> eigs, std::uint64_t ambient_dim) {
  if (ambient_dim < 1) throw PreconditionError("esd requires N >= 1");
  std::sort(eigs.begin(), eigs.end());
  if (eigs.size() > ambient_dim) {
    const std::size_t excess = eigs.size() - ambient_dim;
    const double tol = zero_threshold(eigs);
    if (std::abs(eigs[excess - 1]) > tol)
      throw NumericalError("more than N eigenvalues are nonzero; rank bound violated");
    eigs.erase(eigs.begin(), eigs.begin() + static_cast<std::ptrdiff_t>(excess));
  }
  SpectralDistribution s;
  s.ambient_dim = ambient_dim;
  s.zero_mass = static_cast<double>(ambient_dim - eigs.size()) / static_cast<double>(ambient_dim);
  s.atoms = std::move(eigs);
  return s;
}

Eigen::VectorXcd tensor_vector(const BaseSample& s, std::size_t alpha) {
  Eigen::VectorXcd y = Eigen::VectorXcd::Ones(1);
  for (std::size_t l = 0; l < s.k(); ++l) {
    const auto lv = s.level(alpha, l);
    Eigen::VectorXcd next(y.size() * static_cast<Eigen::Index>(s.n()));
    for (Eigen::Index i = 0; i < y.size(); ++i)
      for (std::size_t j = 0; j < s.n(); ++j) next(i * static_cast<Eigen::Index>(s.n()) + j) = y(i) * lv[j];
    y = std::move(next);
  }
  return y;
}

Eigen::MatrixXcd materialize_dense(const BaseSample& s, const TauScheme& tau, ModelKind model) {
  check_tau(s, tau);
  const std::uint64_t dim = ambient_dimension(static_cast<std::uint32_t>(s.n()), static_cast<std::uint32_t>(s.k()));
  if (dim > kDenseCap) throw PreconditionError("materialize_dense requires n^k <= 4096");
  const auto N = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N, N);
  for (std::size_t a = 0; a < s.m(); ++a) {
    const Eigen::VectorXcd y = tensor_vector(s, a);
    const double scale = model == ModelKind::Correlation ? y.squaredNorm() : static_cast<double>(dim);
    out.noalias() += (tau.values[a] / scale) * (y * y.adjoint());
  }
  return out;
}

}  // namespace tensormp
