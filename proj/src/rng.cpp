#include "tensormp/rng.hpp"

#include <cmath>
#include <numbers>

namespace tensormp {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

KeyedStream::KeyedStream(std::uint64_t seed, StreamDomain domain, std::uint64_t replica,
                         std::uint64_t alpha, std::uint64_t level) {
  key_ = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  // ctr_[0] counts blocks within the stream; the rest of the counter is the key tuple.
  ctr_[1] = static_cast<std::uint32_t>(level) ^ (static_cast<std::uint32_t>(domain) << 24);
  ctr_[2] = static_cast<std::uint32_t>(alpha);
  ctr_[3] = static_cast<std::uint32_t>(replica);
}

void KeyedStream::refill() {
  buf_ = Philox4x32::block(ctr_, key_);
  ++ctr_[0];
  pos_ = 0;
}

KeyedStream::result_type KeyedStream::operator()() {
  if (pos_ > 2) refill();
  const std::uint64_t v = (static_cast<std::uint64_t>(buf_[pos_]) << 32) | buf_[pos_ + 1];
  pos_ += 2;
  return v;
}

double KeyedStream::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::array<double, 2> KeyedStream::normal_pair() {
  const double r = std::sqrt(-2.0 * std::log(uniform_open_low()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace tensormp
