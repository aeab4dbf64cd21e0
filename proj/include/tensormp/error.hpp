#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tensormp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration (dimensions, ratio, tau parameters).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver failure, non-Hermitian input, or an out-of-tolerance residual.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A base vector with zero norm. The replica is aborted rather than resampled.
class DegenerateSampleError : public Error {
 public:
  DegenerateSampleError(std::size_t alpha, std::size_t level)
      : Error("degenerate sample: zero norm at alpha=" + std::to_string(alpha) +
              ", level=" + std::to_string(level)),
        alpha_(alpha),
        level_(level) {}

  std::size_t alpha() const noexcept { return alpha_; }
  std::size_t level() const noexcept { return level_; }

 private:
  std::size_t alpha_;
  std::size_t level_;
};

}  // namespace tensormp
