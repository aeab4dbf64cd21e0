#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tensormp/model_config.hpp"
#include "tensormp/rng.hpp"

namespace tensormp {

using cplx = std::complex<double>;

struct SampleShape {
  std::size_t m;
  std::size_t k;
  std::size_t n;

  bool operator==(const SampleShape&) const = default;
};

/// The m x k x n array of base-vector entries y_alpha^(l)_j. The k-fold tensor
/// Y_alpha is never stored; everything downstream works level by level.
class BaseSample {
 public:
  BaseSample(SampleShape shape, EntryLawKind law, std::uint64_t seed, std::uint64_t replica,
             std::vector<cplx> entries);

  const SampleShape& shape() const { return shape_; }
  std::size_t m() const { return shape_.m; }
  std::size_t k() const { return shape_.k; }
  std::size_t n() const { return shape_.n; }
  EntryLawKind law() const { return law_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t replica() const { return replica_; }

  std::span<const cplx> level(std::size_t alpha, std::size_t l) const {
    return {entries_.data() + (alpha * shape_.k + l) * shape_.n, shape_.n};
  }
  /// Row-major (alpha, l, j).
  std::span<const cplx> entries() const { return entries_; }

  bool operator==(const BaseSample&) const = default;

 private:
  SampleShape shape_;
  EntryLawKind law_;
  std::uint64_t seed_;
  std::uint64_t replica_;
  std::vector<cplx> entries_;
};

/// Fills `out` with i.i.d. draws of `law` from `stream`.
void draw_entries(EntryLawKind law, KeyedStream& stream, std::span<cplx> out);

/// Each (alpha, l) vector comes from its own keyed stream, so the result is
/// independent of `threads`.
BaseSample sample_base(SampleShape shape, EntryLawKind law, std::uint64_t seed, std::uint64_t replica,
                       unsigned threads = 1);
BaseSample sample_base(const ModelParams& params, std::uint64_t replica, unsigned threads = 1);

/// sum_j a_j * conj(b_j).
cplx inner(std::span<const cplx> a, std::span<const cplx> b);

/// <y_alpha^(l), y_beta^(l)>, conjugating the second argument.
cplx level_inner(const BaseSample& s, std::size_t alpha, std::size_t beta, std::size_t l);

struct NormProfile {
  std::size_t m = 0;
  std::size_t k = 0;
  std::vector<double> level_sq_norms;  // (alpha, l) row-major
  std::vector<double> log_sq_norms;    // ln ||Y_alpha||^2 = sum_l ln ||y_alpha^(l)||^2

  double level_sq_norm(std::size_t alpha, std::size_t l) const { return level_sq_norms[alpha * k + l]; }
};

/// For unit-modulus laws ||y||^2 = n holds identically and is stored as exactly n.
/// Throws DegenerateSampleError on a zero level norm.
NormProfile norm_profile(const BaseSample& s);

struct MomentEstimate {
  double estimate;
  double std_error;
  double target;
  bool pass;  // |estimate - target| <= 4 std_error (1e-12 relative when std_error = 0)
};

/// Monte Carlo check of E||Y||^2 = n^k and E||Y||^4 = n^{2k}(1 + (m4-1)/n)^k.
/// Values are reported normalized by n^k and n^{2k}; log_scale = k ln n.
struct MomentReport {
  std::size_t trials;
  double log_scale;
  MomentEstimate second;
  MomentEstimate fourth;
  bool pass() const { return second.pass && fourth.pass; }
};

MomentReport norm_moment_check(const ModelParams& params, std::size_t trials);

}  // namespace tensormp
