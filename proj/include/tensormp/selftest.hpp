#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tensormp/mp_law.hpp"
#include "tensormp/rng.hpp"

namespace tensormp {

struct CheckResult {
  std::string name;
  bool passed;
  double max_residual;
  std::string detail;
};

struct SelftestOptions {
  std::uint64_t seed = 20250101;
  /// Restrict tensor-fold dependent checks to this k.
  std::optional<std::uint32_t> fold;
};

using DensityFn = std::function<double(const MPLaw&, double)>;

/// Individual checks; each is self-contained and deterministic in the seed.
CheckResult check_tau_moments();
CheckResult check_entry_laws(std::uint64_t seed);
CheckResult check_gram_dense_oracle(std::uint64_t seed, const std::vector<std::uint32_t>& folds);
CheckResult check_trace_identity(std::uint64_t seed, const std::vector<std::uint32_t>& folds);
CheckResult check_unit_modulus_collapse(std::uint64_t seed, const std::vector<std::uint32_t>& folds);
CheckResult check_gram_thread_invariance(std::uint64_t seed);
CheckResult check_jiang_identity(std::uint64_t seed, int instances = 100);
CheckResult check_bai_inequality(std::uint64_t seed, int instances = 200);
CheckResult check_levy_ks(std::uint64_t seed);
CheckResult check_norm_moments(std::uint64_t seed, std::uint32_t fold);
/// density + atom must integrate to 1 within 1e-8 for c in {0.1, 0.25, 0.5, 0.9, 1}.
CheckResult check_mp_normalization(const DensityFn& density);
CheckResult check_mp_first_moment();
CheckResult check_mp_cdf_monotone();
CheckResult check_mp_grid_refinement(std::uint64_t seed);

std::vector<CheckResult> run_selftest(const SelftestOptions& options = {});

/// Aligned table: check, status, max-residual.
std::string format_checks(const std::vector<CheckResult>& checks);

/// Complex Gaussian rows x cols matrix with unit-variance entries.
Eigen::MatrixXcd random_complex_matrix(KeyedStream& stream, Eigen::Index rows, Eigen::Index cols);

}  // namespace tensormp
