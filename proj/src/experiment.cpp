#include "tensormp/experiment.hpp"

#include <chrono>
#include <cmath>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "tensormp/error.hpp"
#include "tensormp/metrics.hpp"
#include "tensormp/mp_law.hpp"
#include "tensormp/parallel.hpp"

namespace tensormp {

std::uint32_t KSchedule::fold_for(std::uint32_t n) const {
  if (kind == KScheduleKind::Fixed) return k;
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("power k-schedule needs gamma in (0, 1)");
  const double v = std::pow(static_cast<double>(n), gamma);
  return static_cast<std::uint32_t>(std::ceil(v - 1e-9));
}

SweepPlan make_grid_plan(const ModelParams& base, const std::vector<std::uint32_t>& n_values,
                         const std::vector<double>& c_values, KSchedule schedule, std::uint32_t replicas) {
  SweepPlan plan;
  plan.k_schedule = schedule;
  plan.replicas = replicas;
  for (auto n : n_values) {
    for (double c : c_values) {
      ModelParams p = base;
      p.n = n;
      p.k = schedule.fold_for(n);
      p.c = c;
      p.replicas = replicas;
      plan.points.push_back(p);
    }
  }
  return plan;
}

void validate(const SweepPlan& plan) {
  if (plan.points.empty()) throw ConfigError("sweep plan has no points");
  if (plan.replicas < 1) throw ConfigError("sweep plan needs at least one replica");
  for (const auto& p : plan.points) validate(p);
}

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  return out;
}

namespace {

// MP reference grids are shared across replicas of a point.
class LawCache {
 public:
  std::shared_ptr<const EmpiricalCDF> get(double c) {
    std::lock_guard lock(mu_);
    auto& slot = cache_[c];
    if (!slot) slot = std::make_shared<const EmpiricalCDF>(EmpiricalCDF::from_law(MPLaw(c)));
    return slot;
  }

 private:
  std::mutex mu_;
  std::map<double, std::shared_ptr<const EmpiricalCDF>> cache_;
};

SpectralDistribution model_esd(ModelKind model, const BaseSample& s, const NormProfile& norms, const TauScheme& tau,
                               std::uint64_t dim) {
  return esd(eigenvalues(build_gram(model, s, norms, tau)).values, dim);
}

ReplicaRecord run_replica_with(const ModelParams& params, std::uint64_t replica, bool timing,
                               const EmpiricalCDF& law_cdf) {
  const auto start = std::chrono::steady_clock::now();
  const auto report = validate(params);
  const auto sample = sample_base(params, replica);
  const auto norms = norm_profile(sample);
  const auto tau = make_tau(params.tau, report.samples);

  const auto corr = model_esd(ModelKind::Correlation, sample, norms, tau, report.ambient_dim);
  const auto cov = model_esd(ModelKind::Covariance, sample, norms, tau, report.ambient_dim);
  const auto& headline = params.model == ModelKind::Correlation ? corr : cov;
  const auto f_head = EmpiricalCDF::from_spectrum(headline);

  ReplicaRecord r{};
  r.n = params.n;
  r.k = params.k;
  r.m = report.samples;
  r.ambient_dim = report.ambient_dim;
  r.c = params.c;
  r.replica = replica;
  r.ks_mp = ks_distance(f_head, law_cdf);
  r.levy_mp = levy_distance(f_head, law_cdf);
  r.levy_models = levy_distance(EmpiricalCDF::from_spectrum(corr), EmpiricalCDF::from_spectrum(cov));
  for (unsigned q = 1; q <= 4; ++q) r.moments[q - 1] = empirical_moment(headline, q);
  if (timing) {
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

SweepResult run_plan(const SweepPlan& plan, RunOptions options) {
  validate(plan);
  const std::size_t reps = plan.replicas;
  const std::size_t tasks = plan.points.size() * reps;
  LawCache cache;
  std::vector<ReplicaRecord> records(tasks);
  parallel_for(tasks, options.threads, [&](std::size_t t) {
    const auto& p = plan.points[t / reps];
    records[t] = run_replica_with(p, t % reps, options.timing, *cache.get(p.c));
  });

  SweepResult result;
  for (std::size_t i = 0; i < plan.points.size(); ++i) {
    std::vector<double> ks, lm, lmod;
    std::array<std::vector<double>, 4> mom;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto& rec = records[i * reps + r];
      ks.push_back(rec.ks_mp);
      lm.push_back(rec.levy_mp);
      lmod.push_back(rec.levy_models);
      for (int q = 0; q < 4; ++q) mom[q].push_back(rec.moments[q]);
    }
    PointSummary s{plan.points[i], records[i * reps].m, records[i * reps].ambient_dim, mean_se(ks), mean_se(lm),
                   mean_se(lmod), {}};
    for (int q = 0; q < 4; ++q) s.moments[q] = mean_se(mom[q]);
    result.summaries.push_back(s);
  }
  result.records = std::move(records);
  return result;
}

}  // namespace

ReplicaRecord run_replica(const ModelParams& params, std::uint64_t replica, bool timing) {
  return run_replica_with(params, replica, timing, EmpiricalCDF::from_law(MPLaw(params.c)));
}

SweepResult run_convergence(const SweepPlan& plan, RunOptions options) {
  for (const auto& p : plan.points)
    if (p.tau.kind != TauKind::ConstantOne)
      throw PreconditionError("convergence to the MP law requires tau = constant_one");
  return run_plan(plan, options);
}

SweepResult run_model_comparison(const SweepPlan& plan, RunOptions options) { return run_plan(plan, options); }

SweepResult run_sweep(const SweepPlan& plan, RunOptions options) {
  return plan.mode == SweepMode::Convergence ? run_convergence(plan, options) : run_model_comparison(plan, options);
}

BaseSample normalize_levels(const BaseSample& s, const NormProfile& norms) {
  std::vector<cplx> entries(s.entries().begin(), s.entries().end());
  for (std::size_t a = 0; a < s.m(); ++a) {
    for (std::size_t l = 0; l < s.k(); ++l) {
      const double inv = 1.0 / std::sqrt(norms.level_sq_norm(a, l));
      for (std::size_t j = 0; j < s.n(); ++j) entries[(a * s.k() + l) * s.n() + j] *= inv;
    }
  }
  return BaseSample(s.shape(), s.law(), s.seed(), s.replica(), std::move(entries));
}

GramMatrix build_sphere_gram(const BaseSample& u, const TauScheme& tau) {
  if (tau.size() != u.m()) throw PreconditionError("tau length does not match the sample count m");
  const auto m = static_cast<Eigen::Index>(u.m());
  Eigen::MatrixXcd g(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = a; b < m; ++b) {
      cplx prod = std::sqrt(tau.values[a] * tau.values[b]);
      for (std::size_t l = 0; l < u.k(); ++l) prod *= inner(u.level(a, l), u.level(b, l));
      if (a == b) prod = prod.real();
      g(a, b) = prod;
      g(b, a) = std::conj(prod);
    }
  }
  return {ModelKind::Correlation, std::move(g)};
}

SphereReport run_sphere_comparison(const ModelParams& point, unsigned threads) {
  if (point.entry_law != EntryLawKind::ComplexGaussian)
    throw PreconditionError("unit-sphere construction requires complex_gaussian entries");
  const auto report = validate(point);
  const auto law_cdf = EmpiricalCDF::from_law(MPLaw(point.c));
  const std::size_t reps = point.replicas;
  std::vector<double> dev(reps), sphere_ks(reps), corr_ks(reps);

  parallel_for(reps, threads, [&](std::size_t r) {
    const auto sample = sample_base(point, r);
    const auto norms = norm_profile(sample);
    const auto tau = make_tau(point.tau, report.samples);
    const auto corr = build_correlation_gram(sample, norms, tau);
    const auto sphere = build_sphere_gram(normalize_levels(sample, norms), tau);
    dev[r] = (sphere.entries - corr.entries).cwiseAbs().maxCoeff();
    sphere_ks[r] = ks_distance(EmpiricalCDF::from_spectrum(esd(eigenvalues(sphere).values, report.ambient_dim)),
                               law_cdf);
    corr_ks[r] = ks_distance(EmpiricalCDF::from_spectrum(esd(eigenvalues(corr).values, report.ambient_dim)),
                             law_cdf);
  });

  SphereReport out;
  out.point = point;
  for (double d : dev) out.max_gram_deviation = std::max(out.max_gram_deviation, d);
  out.sphere_ks = mean_se(sphere_ks);
  out.correlation_ks = mean_se(corr_ks);
  out.pooled_se = std::sqrt(out.sphere_ks.se * out.sphere_ks.se + out.correlation_ks.se * out.correlation_ks.se);
  out.gram_match = out.max_gram_deviation <= 1e-12;
  const double diff = std::abs(out.sphere_ks.mean - out.correlation_ks.mean);
  out.ks_match = out.pooled_se > 0.0 ? diff <= 2.0 * out.pooled_se : diff <= 1e-12;
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "n,k,m,N,c,replica,ks_mp,levy_mp,levy_models,m1,m2,m3,m4_emp,ms\n";
  for (const auto& r : result.records) {
    os << r.n << ',' << r.k << ',' << r.m << ',' << r.ambient_dim << ',' << format_double(r.c) << ',' << r.replica
       << ',' << format_double(r.ks_mp) << ',' << format_double(r.levy_mp) << ',' << format_double(r.levy_models);
    for (double v : r.moments) os << ',' << format_double(v);
    os << ',' << format_double(r.ms) << '\n';
  }
  return os.str();
}

}  // namespace tensormp
