#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tensormp/gram.hpp"
#include "tensormp/model_config.hpp"
#include "tensormp/sampler.hpp"

namespace tensormp {

enum class KScheduleKind { Fixed, Power };

/// Fixed(k), or Power(gamma) with k = ceil(n^gamma) so that k/n -> 0.
struct KSchedule {
  KScheduleKind kind = KScheduleKind::Fixed;
  std::uint32_t k = 2;
  double gamma = 0.5;

  std::uint32_t fold_for(std::uint32_t n) const;
};

enum class SweepMode { Convergence, Comparison };

struct SweepPlan {
  std::vector<ModelParams> points;
  KSchedule k_schedule;
  std::uint32_t replicas = 5;
  std::string output_dir = ".";
  SweepMode mode = SweepMode::Convergence;
};

/// Grid of points over n_values x c_values (n outer), each copied from `base`
/// with k taken from the schedule.
SweepPlan make_grid_plan(const ModelParams& base, const std::vector<std::uint32_t>& n_values,
                         const std::vector<double>& c_values, KSchedule schedule, std::uint32_t replicas);

/// Throws ConfigError if any point fails validate or the plan is empty.
void validate(const SweepPlan& plan);

struct ReplicaRecord {
  std::uint32_t n;
  std::uint32_t k;
  std::uint64_t m;
  std::uint64_t ambient_dim;
  double c;
  std::uint64_t replica;
  double ks_mp;        // KS(ESD of params.model, MP(c)), MP on the 4096-point grid
  double levy_mp;      // Lévy(ESD of params.model, MP(c))
  double levy_models;  // Lévy(correlation ESD, covariance ESD) on a shared sample
  std::array<double, 4> moments;  // empirical moments q = 1..4 of the params.model ESD
  double ms;           // wall-clock; 0 unless timing was requested
};

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs);

struct PointSummary {
  ModelParams params;
  std::uint64_t m;
  std::uint64_t ambient_dim;
  MeanSe ks_mp;
  MeanSe levy_mp;
  MeanSe levy_models;
  std::array<MeanSe, 4> moments;
};

struct SweepResult {
  std::vector<ReplicaRecord> records;  // point-major, replica-minor
  std::vector<PointSummary> summaries;
};

struct RunOptions {
  unsigned threads = 1;
  bool timing = false;
};

/// One replica of one point. Both Gram matrices come from the same BaseSample.
ReplicaRecord run_replica(const ModelParams& params, std::uint64_t replica, bool timing = false);

/// Requires tau == constant_one at every point; throws PreconditionError otherwise.
SweepResult run_convergence(const SweepPlan& plan, RunOptions options = {});

/// Any tau scheme.
SweepResult run_model_comparison(const SweepPlan& plan, RunOptions options = {});

/// Dispatches on plan.mode.
SweepResult run_sweep(const SweepPlan& plan, RunOptions options = {});

/// Sample with each level vector replaced by y / ||y||.
BaseSample normalize_levels(const BaseSample& sample, const NormProfile& norms);

/// Gram of M' = sum tau_a Y'_a Y'_a^* with Y'_a a product of unit-sphere levels.
GramMatrix build_sphere_gram(const BaseSample& normalized, const TauScheme& tau);

struct SphereReport {
  ModelParams point;
  double max_gram_deviation = 0.0;  // max |sphere Gram - correlation Gram| over entries and replicas
  MeanSe sphere_ks;
  MeanSe correlation_ks;
  double pooled_se = 0.0;
  bool gram_match = false;  // deviation <= 1e-12
  bool ks_match = false;    // |mean difference| <= 2 pooled se
  bool pass() const { return gram_match && ks_match; }
};

/// Unit-sphere model from normalized complex Gaussian levels; requires
/// entry_law == complex_gaussian.
SphereReport run_sphere_comparison(const ModelParams& point, unsigned threads = 1);

/// Sweep CSV: n,k,m,N,c,replica,ks_mp,levy_mp,levy_models,m1,m2,m3,m4_emp,ms.
std::string sweep_csv(const SweepResult& result);

/// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace tensormp
