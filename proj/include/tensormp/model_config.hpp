#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tensormp {

enum class ModelKind { Correlation, Covariance };

enum class EntryLawKind { ComplexGaussian, RealGaussian, Rademacher, UnitCircle };

/// Law of a single base-vector entry. Every law is centered with E|x|^2 = 1.
struct EntryLaw {
  EntryLawKind kind;
  double m4;  // E|x|^4
  bool unit_modulus;

  static EntryLaw of(EntryLawKind kind);
};

enum class TauKind { ConstantOne, TwoPoint, ExplicitList };

/// Recipe for a tau sequence, independent of m.
struct TauSpec {
  TauKind kind = TauKind::ConstantOne;
  double a = 1.0;
  double b = 1.0;
  double weight = 0.5;
  std::vector<double> list;  // ExplicitList only; repeated cyclically to length m

  static TauSpec constant_one() { return {}; }
  static TauSpec two_point(double a, double b, double weight);
  static TauSpec explicit_list(std::vector<double> values);
};

/// A materialized tau sequence of length m.
struct TauScheme {
  TauSpec spec;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  bool is_constant_one() const { return spec.kind == TauKind::ConstantOne; }
  double sum() const;
};

/// Checks the recipe itself; throws ConfigError on non-positive values.
void validate_tau_spec(const TauSpec& spec);

/// TwoPoint fills the first floor(weight*m) entries with a and the rest with b.
TauScheme make_tau(const TauSpec& spec, std::size_t m);

struct TauMoment {
  double value;      // (1/m) sum tau^q
  double bound;      // A^q q^q
  bool within_bound;
};

TauMoment tau_moments(const TauScheme& tau, unsigned q, double bound_constant = 2.0);

struct ModelParams {
  std::uint32_t n = 2;
  std::uint32_t k = 1;
  double c = 0.5;
  ModelKind model = ModelKind::Correlation;
  EntryLawKind entry_law = EntryLawKind::ComplexGaussian;
  TauSpec tau;
  std::uint64_t seed = 0;
  std::uint32_t replicas = 1;
};

inline constexpr std::uint64_t kMaxAmbientDim = std::uint64_t{1} << 53;
/// k/n above this is flagged as outside the k = o(n) regime.
inline constexpr double kRegimeWarnRatio = 0.5;

struct ValidationReport {
  std::uint64_t ambient_dim;  // N = n^k
  std::uint64_t samples;      // m
  double fold_ratio;          // k/n
  bool outside_regime;
  std::vector<std::string> warnings;
};

/// Pure; throws ConfigError on invalid input.
ValidationReport validate(const ModelParams& params);

/// n^k with overflow checking against kMaxAmbientDim; throws ConfigError.
std::uint64_t ambient_dimension(std::uint32_t n, std::uint32_t k);

/// floor(c*N + 0.5).
std::uint64_t sample_count(double c, std::uint64_t ambient_dim);

std::string_view to_string(ModelKind kind);
std::string_view to_string(EntryLawKind kind);
std::string_view to_string(TauKind kind);
ModelKind parse_model_kind(std::string_view s);
EntryLawKind parse_entry_law(std::string_view s);
TauKind parse_tau_kind(std::string_view s);

}  // namespace tensormp
