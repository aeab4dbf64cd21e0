#include <doctest.h>

#include <set>
#include <vector>

#include "tensormp/rng.hpp"

using namespace tensormp;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using C = Philox4x32::Counter;
  CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("keyed streams depend only on the key") {
  KeyedStream a(42, StreamDomain::BaseSample, 1, 2, 3);
  KeyedStream b(42, StreamDomain::BaseSample, 1, 2, 3);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());

  std::set<std::uint64_t> firsts;
  firsts.insert(KeyedStream(42, StreamDomain::BaseSample, 1, 2, 3)());
  firsts.insert(KeyedStream(43, StreamDomain::BaseSample, 1, 2, 3)());
  firsts.insert(KeyedStream(42, StreamDomain::NormMoments, 1, 2, 3)());
  firsts.insert(KeyedStream(42, StreamDomain::BaseSample, 2, 2, 3)());
  firsts.insert(KeyedStream(42, StreamDomain::BaseSample, 1, 3, 3)());
  firsts.insert(KeyedStream(42, StreamDomain::BaseSample, 1, 2, 4)());
  CHECK(firsts.size() == 6);
}

TEST_CASE("uniform draws stay in range and look uniform") {
  KeyedStream s(7, StreamDomain::SelfTest, 0, 0, 0);
  constexpr int kDraws = 200000;
  std::vector<int> bins(10, 0);
  for (int i = 0; i < kDraws; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    bins[static_cast<int>(u * 10)]++;
  }
  // chi-square with 9 dof; 99.9% quantile is 27.9
  double chi2 = 0.0;
  for (int b : bins) chi2 += (b - kDraws / 10.0) * (b - kDraws / 10.0) / (kDraws / 10.0);
  CHECK(chi2 < 27.9);
}

TEST_CASE("normal pairs have unit variance and are uncorrelated") {
  KeyedStream s(11, StreamDomain::SelfTest, 0, 0, 0);
  constexpr int kPairs = 200000;
  double m0 = 0, m1 = 0, v0 = 0, v1 = 0, cov = 0;
  for (int i = 0; i < kPairs; ++i) {
    const auto g = s.normal_pair();
    m0 += g[0];
    m1 += g[1];
    v0 += g[0] * g[0];
    v1 += g[1] * g[1];
    cov += g[0] * g[1];
  }
  const double se = 1.0 / std::sqrt(static_cast<double>(kPairs));
  CHECK(std::abs(m0 / kPairs) < 4 * se);
  CHECK(std::abs(m1 / kPairs) < 4 * se);
  CHECK(std::abs(v0 / kPairs - 1.0) < 4 * std::sqrt(2.0) * se);
  CHECK(std::abs(v1 / kPairs - 1.0) < 4 * std::sqrt(2.0) * se);
  CHECK(std::abs(cov / kPairs) < 4 * se);
}
