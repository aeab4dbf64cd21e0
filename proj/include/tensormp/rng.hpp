#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <limits>

namespace tensormp {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// A 128-bit counter and 64-bit key map to four 32-bit outputs.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// Stream domains keep independent consumers of the same seed apart.
enum class StreamDomain : std::uint32_t {
  BaseSample = 0,
  NormMoments = 1,
  SelfTest = 2,
};

/// Deterministic stream keyed by (seed, domain, replica, alpha, level).
/// Output depends only on the key and the draw position, never on which
/// thread consumes it or in which order keys are visited.
class KeyedStream {
 public:
  using result_type = std::uint64_t;

  KeyedStream(std::uint64_t seed, StreamDomain domain, std::uint64_t replica,
              std::uint64_t alpha, std::uint64_t level);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_low() { return 1.0 - uniform(); }
  /// Pair of independent standard normals (Box-Muller).
  std::array<double, 2> normal_pair();

 private:
  void refill();

  Philox4x32::Key key_{};
  Philox4x32::Counter ctr_{};
  Philox4x32::Counter buf_{};
  int pos_ = 4;
};

}  // namespace tensormp
