#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tensormp/gram.hpp"
#include "tensormp/mp_law.hpp"
#include "tensormp/sampler.hpp"

namespace tensormp {

struct EigenvalueDump {
  std::map<std::string, std::string> header;  // from "# key=value" comment lines
  std::uint64_t ambient_dim = 0;
  std::map<std::uint64_t, std::vector<double>> by_replica;
};

/// Columns replica,index,eigenvalue preceded by "# key=value" comment lines
/// for n, k, m, N, model, seed.
void write_eigenvalue_csv(std::ostream& os, const ModelParams& params, std::uint64_t m, std::uint64_t ambient_dim,
                          const std::map<std::uint64_t, std::vector<double>>& by_replica);
EigenvalueDump read_eigenvalue_csv(std::istream& is);
EigenvalueDump read_eigenvalue_csv(const std::filesystem::path& path);

/// Columns bin_left,bin_right,count,density_estimate. Bins cover the atoms;
/// density_estimate = count / (N * width), comparable with the MP density.
std::string histogram_csv(std::span<const SpectralDistribution> spectra, std::size_t bins);

/// Columns x,density,cdf on an even grid of `points` over [lo, hi].
std::string mp_grid_csv(const MPLaw& law, double lo, double hi, std::size_t points);

struct DistanceRow {
  std::uint64_t replica;
  std::string metric;
  double value;
};

/// Columns replica,metric,value.
std::string distance_csv(std::span<const DistanceRow> rows);

/// Binary dump: "TMPS" magic, u32 version, u64 n, k, m, seed, replica, u32 law,
/// then (re, im) pairs in (alpha, l, j) row-major order. Little-endian throughout.
void write_sample(std::ostream& os, const BaseSample& s);
BaseSample read_sample(std::istream& is);

}  // namespace tensormp
