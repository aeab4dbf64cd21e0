#include "tensormp/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "tensormp/experiment.hpp"
#include "tensormp/gram.hpp"
#include "tensormp/metrics.hpp"
#include "tensormp/model_config.hpp"
#include "tensormp/sampler.hpp"

namespace tensormp {

namespace {

constexpr double kCGrid[] = {0.1, 0.25, 0.5, 0.9, 1.0};

enum CheckId : std::uint64_t {
  kEntryLaws = 1,
  kJiang,
  kBai,
  kLevyKs,
};

KeyedStream check_stream(std::uint64_t seed, CheckId id, std::uint64_t index = 0) {
  return KeyedStream(seed, StreamDomain::SelfTest, id, index, 0);
}

}  // namespace

Eigen::MatrixXcd random_complex_matrix(KeyedStream& stream, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXcd a(rows, cols);
  std::vector<cplx> buf(static_cast<std::size_t>(rows * cols));
  draw_entries(EntryLawKind::ComplexGaussian, stream, buf);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = buf[static_cast<std::size_t>(j * rows + i)];
  return a;
}

CheckResult check_tau_moments() {
  double worst = 0.0;
  for (std::size_t m : {1u, 7u, 100u}) {
    const auto tau = make_tau(TauSpec::constant_one(), m);
    for (unsigned q = 1; q <= 20; ++q) worst = std::max(worst, std::abs(tau_moments(tau, q).value - 1.0));
  }
  const auto two = make_tau(TauSpec::two_point(1.0, 2.0, 0.5), 4);
  worst = std::max(worst, std::abs(tau_moments(two, 3).value - 4.5));
  return {"tau_moments", worst == 0.0, worst, "constant_one exact for q <= 20"};
}

CheckResult check_entry_laws(std::uint64_t seed) {
  constexpr std::size_t kDraws = 1'000'000;
  double worst_z = 0.0;
  bool ok = true;
  std::vector<cplx> xs(kDraws);
  for (auto law : {EntryLawKind::ComplexGaussian, EntryLawKind::RealGaussian, EntryLawKind::Rademacher,
                   EntryLawKind::UnitCircle}) {
    auto stream = check_stream(seed, kEntryLaws, static_cast<std::uint64_t>(law));
    draw_entries(law, stream, xs);
    cplx mean{};
    double sq = 0.0;
    for (const auto& z : xs) {
      mean += z;
      sq += std::norm(z);
    }
    const double nd = static_cast<double>(kDraws);
    mean /= nd;
    sq /= nd;
    double var_z = 0.0, var_sq = 0.0;
    for (const auto& z : xs) {
      var_z += std::norm(z - mean);
      var_sq += (std::norm(z) - sq) * (std::norm(z) - sq);
    }
    const double se_mean = std::sqrt(var_z / (nd - 1.0) / nd);
    const double se_sq = std::sqrt(var_sq / (nd - 1.0) / nd);
    const double z_mean = std::abs(mean) / se_mean;
    worst_z = std::max(worst_z, z_mean);
    ok = ok && z_mean <= 4.0;
    if (EntryLaw::of(law).unit_modulus) {
      ok = ok && std::abs(sq - 1.0) <= 1e-12;
    } else {
      const double z_sq = std::abs(sq - 1.0) / se_sq;
      worst_z = std::max(worst_z, z_sq);
      ok = ok && z_sq <= 4.0;
    }
  }
  return {"entry_law_moments", ok, worst_z, "max z-score of mean and E|x|^2 (10^6 draws per law)"};
}

CheckResult check_gram_dense_oracle(std::uint64_t seed, const std::vector<std::uint32_t>& folds) {
  double worst = 0.0;
  bool ok = true;
  std::string detail = "sorted nonzero spectra, dense vs Gram";
  for (std::uint32_t n : {2u, 3u}) {
    for (std::uint32_t k : folds) {
      for (std::size_t m = 1; m <= 5; ++m) {
        for (std::uint64_t s = 0; s < 3; ++s) {
          const auto sample = sample_base({m, k, n}, EntryLawKind::ComplexGaussian, seed + s, 0);
          const auto norms = norm_profile(sample);
          const auto tau = make_tau(s == 2 ? TauSpec::two_point(1.0, 2.0, 0.5) : TauSpec::constant_one(), m);
          for (auto model : {ModelKind::Correlation, ModelKind::Covariance}) {
            const auto gram = nonzero_eigenvalues(eigenvalues(build_gram(model, sample, norms, tau)).values);
            const auto dense = nonzero_eigenvalues(hermitian_eigenvalues(materialize_dense(sample, tau, model)));
            if (gram.size() != dense.size()) {
              ok = false;
              detail = "nonzero eigenvalue count mismatch";
              continue;
            }
            for (std::size_t i = 0; i < gram.size(); ++i) worst = std::max(worst, std::abs(gram[i] - dense[i]));
          }
        }
      }
    }
  }
  return {"gram_dense_oracle", ok && worst <= 1e-9, worst, detail};
}

CheckResult check_trace_identity(std::uint64_t seed, const std::vector<std::uint32_t>& folds) {
  double worst = 0.0;
  for (std::uint32_t k : folds) {
    for (std::uint32_t n : {3u, 8u}) {
      for (auto law : {EntryLawKind::ComplexGaussian, EntryLawKind::RealGaussian, EntryLawKind::Rademacher}) {
        for (const auto& spec : {TauSpec::constant_one(), TauSpec::two_point(1.0, 2.0, 0.5),
                                 TauSpec::explicit_list({0.5, 1.0, 3.0})}) {
          const std::size_t m = std::min<std::uint64_t>(40, ambient_dimension(n, k));
          const auto sample = sample_base({m, k, n}, law, seed, 0);
          const auto tau = make_tau(spec, m);
          const auto eigs = eigenvalues(build_correlation_gram(sample, tau)).values;
          double sum = 0.0;
          for (double v : eigs) sum += v;
          worst = std::max(worst, std::abs(sum - tau.sum()) / tau.sum());
        }
      }
    }
  }
  // Desk-scale point used by the sweeps.
  ModelParams p;
  p.n = 30;
  p.k = 2;
  p.c = 0.5;
  p.seed = seed;
  for (const auto& spec : {TauSpec::constant_one(), TauSpec::two_point(1.0, 2.0, 0.5)}) {
    p.tau = spec;
    const auto report = validate(p);
    const auto sample = sample_base(p, 0);
    const auto tau = make_tau(spec, report.samples);
    const auto eigs = eigenvalues(build_correlation_gram(sample, tau)).values;
    double sum = 0.0;
    for (double v : eigs) sum += v;
    worst = std::max(worst, std::abs(sum - tau.sum()) / tau.sum());
  }
  return {"correlation_trace_identity", worst <= 1e-9, worst, "relative |sum eig - sum tau|"};
}

CheckResult check_unit_modulus_collapse(std::uint64_t seed, const std::vector<std::uint32_t>& folds) {
  double worst = 0.0;
  for (auto law : {EntryLawKind::UnitCircle, EntryLawKind::Rademacher}) {
    for (std::uint32_t k : folds) {
      const auto sample = sample_base({12, k, 5}, law, seed, 0);
      const auto norms = norm_profile(sample);
      const auto tau = make_tau(TauSpec::two_point(1.0, 3.0, 0.25), 12);
      const auto corr = build_correlation_gram(sample, norms, tau);
      const auto cov = build_covariance_gram(sample, norms, tau);
      worst = std::max(worst, (corr.entries - cov.entries).cwiseAbs().maxCoeff());
    }
  }
  return {"unit_modulus_collapse", worst <= 1e-12, worst, "max |correlation - covariance| entry"};
}

CheckResult check_gram_thread_invariance(std::uint64_t seed) {
  const auto a = sample_base({60, 2, 9}, EntryLawKind::ComplexGaussian, seed, 3, 1);
  const auto b = sample_base({60, 2, 9}, EntryLawKind::ComplexGaussian, seed, 3, 4);
  const auto tau = make_tau(TauSpec::constant_one(), 60);
  const bool same_sample = a == b;
  const auto ga = build_correlation_gram(a, tau, 1);
  const auto gb = build_correlation_gram(b, tau, 4);
  const double diff = (ga.entries - gb.entries).cwiseAbs().maxCoeff();
  return {"thread_invariance", same_sample && diff == 0.0, diff, "sample and Gram, 1 vs 4 threads"};
}

CheckResult check_jiang_identity(std::uint64_t seed, int instances) {
  double worst = 0.0;
  for (int t = 0; t < instances; ++t) {
    auto stream = check_stream(seed, kJiang, static_cast<std::uint64_t>(t));
    const auto n = static_cast<Eigen::Index>(2 + stream() % 7);
    const auto p = static_cast<Eigen::Index>(1 + stream() % 8);
    // Vary column scale so that ||A_j|| / sqrt(n) is not concentrated near 1.
    Eigen::MatrixXcd a = random_complex_matrix(stream, n, p);
    std::vector<double> lambda(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) {
      a.col(j) *= 0.25 + 2.0 * stream.uniform();
      lambda[static_cast<std::size_t>(j)] = 0.1 + 3.0 * stream.uniform();
    }
    const auto sides = jiang_identity_sides(a, lambda);
    worst = std::max(worst, std::abs(sides.lhs - sides.rhs) / (1.0 + std::abs(sides.lhs)));
  }
  return {"jiang_trace_identity", worst <= 1e-10, worst, "|lhs - rhs| / (1 + |lhs|)"};
}

CheckResult check_bai_inequality(std::uint64_t seed, int instances) {
  double worst = -1e300;
  for (int t = 0; t < instances; ++t) {
    auto stream = check_stream(seed, kBai, static_cast<std::uint64_t>(t));
    const Eigen::MatrixXcd a = random_complex_matrix(stream, 5, 8);
    // Perturbation size spans several decades so the bound is exercised near equality too.
    const double delta = std::pow(10.0, -3.0 + 3.5 * stream.uniform());
    const Eigen::MatrixXcd b = a + delta * random_complex_matrix(stream, 5, 8);
    const auto sides = bai_bound_sides(a, b);
    worst = std::max(worst, sides.lhs - sides.rhs);
  }
  return {"bai_levy_bound", worst <= 1e-12, worst, "max (lhs - rhs), 5x8 pairs"};
}

namespace {

SpectralDistribution random_spectrum(KeyedStream& stream) {
  const std::size_t m = 1 + stream() % 12;
  const std::uint64_t extra = stream() % 4;
  std::vector<double> eigs(m);
  for (auto& v : eigs) v = 3.0 * stream.uniform() * stream.uniform();
  return esd(std::move(eigs), m + extra);
}

}  // namespace

CheckResult check_levy_ks(std::uint64_t seed) {
  double worst = -1e300;
  bool ok = true;
  for (int t = 0; t < 100; ++t) {
    auto stream = check_stream(seed, kLevyKs, static_cast<std::uint64_t>(t));
    const auto f = EmpiricalCDF::from_spectrum(random_spectrum(stream));
    const auto g = EmpiricalCDF::from_spectrum(random_spectrum(stream));
    const double levy = levy_distance(f, g);
    const double ks = ks_distance(f, g);
    worst = std::max(worst, levy - ks);
    ok = ok && levy <= ks + 1e-9;
    ok = ok && std::abs(levy_distance(g, f) - levy) <= 1e-9 && std::abs(ks_distance(g, f) - ks) <= 1e-12;
    ok = ok && levy >= 0.0 && levy <= 1.0 && ks >= 0.0 && ks <= 1.0;
  }
  for (int t = 0; t < 50; ++t) {
    auto stream = check_stream(seed, kLevyKs, 1000 + static_cast<std::uint64_t>(t));
    const auto f = EmpiricalCDF::from_spectrum(random_spectrum(stream));
    const auto g = EmpiricalCDF::from_spectrum(random_spectrum(stream));
    const auto h = EmpiricalCDF::from_spectrum(random_spectrum(stream));
    ok = ok && ks_distance(f, h) <= ks_distance(f, g) + ks_distance(g, h) + 1e-9;
    ok = ok && levy_distance(f, h) <= levy_distance(f, g) + levy_distance(g, h) + 2e-9;
  }
  return {"levy_ks_metrics", ok, worst, "max (levy - ks); symmetry and triangle inequality"};
}

CheckResult check_norm_moments(std::uint64_t seed, std::uint32_t fold) {
  ModelParams p;
  p.n = 10;
  p.k = fold;
  p.seed = seed;
  p.entry_law = EntryLawKind::UnitCircle;
  const auto unit = norm_moment_check(p, 10'000);
  p.entry_law = EntryLawKind::ComplexGaussian;
  const auto gauss = norm_moment_check(p, 10'000);
  const bool unit_exact = unit.second.std_error == 0.0 && unit.second.estimate == 1.0;
  const double z = gauss.fourth.std_error > 0.0
                       ? std::abs(gauss.fourth.estimate - gauss.fourth.target) / gauss.fourth.std_error
                       : 0.0;
  std::ostringstream d;
  d << "E||Y||^4/n^2k = " << gauss.fourth.estimate << " vs " << gauss.fourth.target << " (z=" << z << ")";
  return {"norm_moments", unit_exact && unit.pass() && gauss.pass(), z, d.str()};
}

CheckResult check_mp_normalization(const DensityFn& density) {
  double worst = 0.0;
  for (double c : kCGrid) {
    const MPLaw law(c);
    const double mass = law.integrate_over_support([&](double x) { return density(law, x); });
    worst = std::max(worst, std::abs(mass + law.atom_mass() - 1.0));
  }
  return {"mp_normalization", worst <= 1e-8, worst, "|atom + integral density - 1|"};
}

CheckResult check_mp_first_moment() {
  double worst = 0.0;
  for (double c : kCGrid) worst = std::max(worst, std::abs(MPLaw(c).moment(1) - c));
  return {"mp_first_moment", worst <= 1e-8, worst, "|moment(1) - c|"};
}

CheckResult check_mp_cdf_monotone() {
  bool ok = true;
  double worst = 0.0;
  for (double c : kCGrid) {
    const MPLaw law(c);
    const double lo = law.lambda_minus() - 0.1;
    const double hi = law.lambda_plus() + 0.1;
    double prev = 0.0;
    for (int i = 0; i < 10'000; ++i) {
      const double v = law.cdf(lo + (hi - lo) * i / 9999.0);
      if (v < prev) {
        ok = false;
        worst = std::max(worst, prev - v);
      }
      prev = v;
    }
    const double top = std::abs(law.cdf(law.lambda_plus()) - 1.0);
    worst = std::max(worst, top);
    ok = ok && top <= 1e-8;
  }
  return {"mp_cdf_monotone", ok, worst, "10^4-point grid per c; cdf(l+) = 1"};
}

CheckResult check_mp_grid_refinement(std::uint64_t seed) {
  ModelParams p;
  p.n = 30;
  p.k = 2;
  p.c = 0.5;
  p.seed = seed;
  const auto report = validate(p);
  const auto sample = sample_base(p, 0);
  const auto tau = make_tau(p.tau, report.samples);
  const auto f = EmpiricalCDF::from_spectrum(
      esd(eigenvalues(build_correlation_gram(sample, tau)).values, report.ambient_dim));
  const MPLaw law(p.c);
  const auto coarse = EmpiricalCDF::from_law(law, 4096);
  const auto fine = EmpiricalCDF::from_law(law, 8192);
  const double dks = std::abs(ks_distance(f, coarse) - ks_distance(f, fine));
  const double dlevy = std::abs(levy_distance(f, coarse) - levy_distance(f, fine));
  const double worst = std::max(dks, dlevy);
  return {"mp_grid_refinement", worst < 1e-4, worst, "distance change on doubling the MP grid"};
}

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  const std::vector<std::uint32_t> folds =
      options.fold ? std::vector<std::uint32_t>{*options.fold} : std::vector<std::uint32_t>{1, 2, 3};
  const std::uint32_t moment_fold = options.fold.value_or(3);
  const auto seed = options.seed;
  std::vector<CheckResult> out;
  out.push_back(check_tau_moments());
  out.push_back(check_entry_laws(seed));
  out.push_back(check_gram_dense_oracle(seed, folds));
  out.push_back(check_trace_identity(seed, folds));
  out.push_back(check_unit_modulus_collapse(seed, folds));
  out.push_back(check_gram_thread_invariance(seed));
  out.push_back(check_jiang_identity(seed));
  out.push_back(check_bai_inequality(seed));
  out.push_back(check_levy_ks(seed));
  out.push_back(check_norm_moments(seed, moment_fold));
  out.push_back(check_mp_normalization([](const MPLaw& law, double x) { return law.density(x); }));
  out.push_back(check_mp_first_moment());
  out.push_back(check_mp_cdf_monotone());
  out.push_back(check_mp_grid_refinement(seed));
  return out;
}

std::string format_checks(const std::vector<CheckResult>& checks) {
  std::ostringstream os;
  os << std::left << std::setw(28) << "check" << std::setw(8) << "status" << "max-residual\n";
  for (const auto& c : checks) {
    os << std::left << std::setw(28) << c.name << std::setw(8) << (c.passed ? "PASS" : "FAIL")
       << std::scientific << std::setprecision(3) << c.max_residual << "  " << c.detail << '\n';
    os << std::defaultfloat;
  }
  return os.str();
}

}  // namespace tensormp
