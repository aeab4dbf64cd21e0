#include "tensormp/sampler.hpp"

#include <cmath>
#include <numbers>

#include "tensormp/error.hpp"
#include "tensormp/parallel.hpp"

namespace tensormp {

BaseSample::BaseSample(SampleShape shape, EntryLawKind law, std::uint64_t seed, std::uint64_t replica,
                       std::vector<cplx> entries)
    : shape_(shape), law_(law), seed_(seed), replica_(replica), entries_(std::move(entries)) {
  if (entries_.size() != shape_.m * shape_.k * shape_.n)
    throw PreconditionError("BaseSample entries do not match shape m*k*n");
}

void draw_entries(EntryLawKind law, KeyedStream& stream, std::span<cplx> out) {
  switch (law) {
    case EntryLawKind::ComplexGaussian: {
      const double s = std::numbers::sqrt2 / 2.0;
      for (auto& z : out) {
        const auto g = stream.normal_pair();
        z = {s * g[0], s * g[1]};
      }
      break;
    }
    case EntryLawKind::RealGaussian:
      for (std::size_t j = 0; j < out.size(); j += 2) {
        const auto g = stream.normal_pair();
        out[j] = g[0];
        if (j + 1 < out.size()) out[j + 1] = g[1];
      }
      break;
    case EntryLawKind::Rademacher:
      for (auto& z : out) z = (stream() >> 63) ? 1.0 : -1.0;
      break;
    case EntryLawKind::UnitCircle:
      for (auto& z : out) z = std::polar(1.0, 2.0 * std::numbers::pi * stream.uniform());
      break;
  }
}

BaseSample sample_base(SampleShape shape, EntryLawKind law, std::uint64_t seed, std::uint64_t replica,
                       unsigned threads) {
  std::vector<cplx> entries(shape.m * shape.k * shape.n);
  parallel_for(shape.m, threads, [&](std::size_t alpha) {
    for (std::size_t l = 0; l < shape.k; ++l) {
      KeyedStream stream(seed, StreamDomain::BaseSample, replica, alpha, l);
      draw_entries(law, stream, std::span<cplx>(entries.data() + (alpha * shape.k + l) * shape.n, shape.n));
    }
  });
  return BaseSample(shape, law, seed, replica, std::move(entries));
}

BaseSample sample_base(const ModelParams& params, std::uint64_t replica, unsigned threads) {
  const auto report = validate(params);
  return sample_base({report.samples, params.k, params.n}, params.entry_law, params.seed, replica, threads);
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * std::conj(b[j]);
  return acc;
}

cplx level_inner(const BaseSample& s, std::size_t alpha, std::size_t beta, std::size_t l) {
  if (alpha >= s.m() || beta >= s.m() || l >= s.k()) throw PreconditionError("level_inner index out of range");
  return inner(s.level(alpha, l), s.level(beta, l));
}

NormProfile norm_profile(const BaseSample& s) {
  NormProfile p;
  p.m = s.m();
  p.k = s.k();
  p.level_sq_norms.resize(p.m * p.k);
  p.log_sq_norms.assign(p.m, 0.0);
  const bool unit = EntryLaw::of(s.law()).unit_modulus;
  for (std::size_t a = 0; a < p.m; ++a) {
    for (std::size_t l = 0; l < p.k; ++l) {
      double sq = 0.0;
      if (unit) {
        sq = static_cast<double>(s.n());
      } else {
        for (const auto& z : s.level(a, l)) sq += std::norm(z);
      }
      if (!(sq > 0.0)) throw DegenerateSampleError(a, l);
      p.level_sq_norms[a * p.k + l] = sq;
      p.log_sq_norms[a] += std::log(sq);
    }
  }
  return p;
}

namespace {

MomentEstimate estimate(double sum, double sum_sq, std::size_t trials, double target) {
  const double t = static_cast<double>(trials);
  const double mean = sum / t;
  const double var = std::max(0.0, (sum_sq - t * mean * mean) / (t - 1.0));
  const double se = std::sqrt(var / t);
  const double dev = std::abs(mean - target);
  const bool pass = se > 0.0 ? dev <= 4.0 * se : dev <= 1e-12 * target;
  return {mean, se, target, pass};
}

}  // namespace

MomentReport norm_moment_check(const ModelParams& params, std::size_t trials) {
  if (trials < 1000) throw PreconditionError("norm_moment_check requires at least 1000 trials");
  ambient_dimension(params.n, params.k);
  const EntryLaw law = EntryLaw::of(params.entry_law);
  const double n = params.n;

  std::vector<cplx> level(params.n);
  double s2 = 0.0, s2sq = 0.0, s4 = 0.0, s4sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    // ||Y||^2 / n^k accumulated as a sum of log level ratios.
    double log_ratio = 0.0;
    for (std::uint32_t l = 0; l < params.k; ++l) {
      KeyedStream stream(params.seed, StreamDomain::NormMoments, 0, t, l);
      draw_entries(params.entry_law, stream, level);
      double sq = 0.0;
      if (law.unit_modulus) {
        sq = n;
      } else {
        for (const auto& z : level) sq += std::norm(z);
      }
      log_ratio += std::log(sq / n);
    }
    const double r2 = std::exp(log_ratio);
    const double r4 = r2 * r2;
    s2 += r2;
    s2sq += r2 * r2;
    s4 += r4;
    s4sq += r4 * r4;
  }
  const double target4 = std::pow(1.0 + (law.m4 - 1.0) / n, static_cast<double>(params.k));
  return {trials, params.k * std::log(n), estimate(s2, s2sq, trials, 1.0), estimate(s4, s4sq, trials, target4)};
}

}  // namespace tensormp
