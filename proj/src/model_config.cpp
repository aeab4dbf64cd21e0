#include "tensormp/model_config.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "tensormp/error.hpp"

namespace tensormp {

EntryLaw EntryLaw::of(EntryLawKind kind) {
  switch (kind) {
    case EntryLawKind::ComplexGaussian: return {kind, 2.0, false};
    case EntryLawKind::RealGaussian: return {kind, 3.0, false};
    case EntryLawKind::Rademacher: return {kind, 1.0, true};
    case EntryLawKind::UnitCircle: return {kind, 1.0, true};
  }
  throw ConfigError("unknown entry law");
}

TauSpec TauSpec::two_point(double a, double b, double weight) {
  TauSpec s;
  s.kind = TauKind::TwoPoint;
  s.a = a;
  s.b = b;
  s.weight = weight;
  return s;
}

TauSpec TauSpec::explicit_list(std::vector<double> values) {
  TauSpec s;
  s.kind = TauKind::ExplicitList;
  s.list = std::move(values);
  return s;
}

double TauScheme::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

void validate_tau_spec(const TauSpec& spec) {
  switch (spec.kind) {
    case TauKind::ConstantOne: return;
    case TauKind::TwoPoint:
      if (!(spec.a > 0.0) || !(spec.b > 0.0))
        throw ConfigError("two_point tau requires positive a and b");
      if (!(spec.weight > 0.0 && spec.weight < 1.0))
        throw ConfigError("two_point tau weight must lie in (0, 1)");
      return;
    case TauKind::ExplicitList:
      if (spec.list.empty()) throw ConfigError("explicit tau list is empty");
      for (double v : spec.list)
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("explicit tau values must be positive");
      return;
  }
}

TauScheme make_tau(const TauSpec& spec, std::size_t m) {
  if (m == 0) throw PreconditionError("make_tau requires m >= 1");
  validate_tau_spec(spec);
  TauScheme out{spec, std::vector<double>(m, 1.0)};
  switch (spec.kind) {
    case TauKind::ConstantOne: break;
    case TauKind::TwoPoint: {
      const auto first = static_cast<std::size_t>(std::floor(spec.weight * static_cast<double>(m)));
      for (std::size_t i = 0; i < m; ++i) out.values[i] = i < first ? spec.a : spec.b;
      break;
    }
    case TauKind::ExplicitList:
      for (std::size_t i = 0; i < m; ++i) out.values[i] = spec.list[i % spec.list.size()];
      break;
  }
  return out;
}

TauMoment tau_moments(const TauScheme& tau, unsigned q, double bound_constant) {
  if (q == 0) throw PreconditionError("tau_moments requires q >= 1");
  if (tau.values.empty()) throw PreconditionError("tau_moments on an empty sequence");
  double acc = 0.0;
  for (double t : tau.values) acc += std::pow(t, static_cast<double>(q));
  const double value = acc / static_cast<double>(tau.values.size());
  const double qd = static_cast<double>(q);
  const double bound = std::pow(bound_constant, qd) * std::pow(qd, qd);
  return {value, bound, std::abs(value) <= bound};
}

std::uint64_t ambient_dimension(std::uint32_t n, std::uint32_t k) {
  if (n < 2) throw ConfigError("n must be at least 2");
  if (k < 1) throw ConfigError("k must be at least 1");
  std::uint64_t dim = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (dim > kMaxAmbientDim / n) {
      std::ostringstream os;
      os << "ambient dimension " << n << "^" << k << " exceeds 2^53";
      throw ConfigError(os.str());
    }
    dim *= n;
  }
  return dim;
}

std::uint64_t sample_count(double c, std::uint64_t ambient_dim) {
  return static_cast<std::uint64_t>(std::floor(c * static_cast<double>(ambient_dim) + 0.5));
}

ValidationReport validate(const ModelParams& p) {
  if (!(p.c > 0.0) || !std::isfinite(p.c)) throw ConfigError("c must be a positive finite number");
  if (p.replicas < 1) throw ConfigError("replicas must be at least 1");
  const std::uint64_t dim = ambient_dimension(p.n, p.k);
  const std::uint64_t m = sample_count(p.c, dim);
  if (m == 0) throw ConfigError("c * n^k rounds to m = 0 samples");
  validate_tau_spec(p.tau);

  ValidationReport r{dim, m, static_cast<double>(p.k) / static_cast<double>(p.n), false, {}};
  if (r.fold_ratio > kRegimeWarnRatio) {
    r.outside_regime = true;
    r.warnings.push_back("k/n = " + std::to_string(r.fold_ratio) + " is outside the asymptotic regime k = o(n)");
  }
  return r;
}

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::Correlation ? "correlation" : "covariance";
}

std::string_view to_string(EntryLawKind kind) {
  switch (kind) {
    case EntryLawKind::ComplexGaussian: return "complex_gaussian";
    case EntryLawKind::RealGaussian: return "real_gaussian";
    case EntryLawKind::Rademacher: return "rademacher";
    case EntryLawKind::UnitCircle: return "unit_circle";
  }
  return "?";
}

std::string_view to_string(TauKind kind) {
  switch (kind) {
    case TauKind::ConstantOne: return "constant_one";
    case TauKind::TwoPoint: return "two_point";
    case TauKind::ExplicitList: return "explicit";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view s) {
  if (s == "correlation") return ModelKind::Correlation;
  if (s == "covariance") return ModelKind::Covariance;
  throw ConfigError("unknown model '" + std::string(s) + "'");
}

EntryLawKind parse_entry_law(std::string_view s) {
  for (auto kind : {EntryLawKind::ComplexGaussian, EntryLawKind::RealGaussian, EntryLawKind::Rademacher,
                    EntryLawKind::UnitCircle})
    if (s == to_string(kind)) return kind;
  throw ConfigError("unknown entry_law '" + std::string(s) + "'");
}

TauKind parse_tau_kind(std::string_view s) {
  for (auto kind : {TauKind::ConstantOne, TauKind::TwoPoint, TauKind::ExplicitList})
    if (s == to_string(kind)) return kind;
  throw ConfigError("unknown tau kind '" + std::string(s) + "'");
}

}  // namespace tensormp
