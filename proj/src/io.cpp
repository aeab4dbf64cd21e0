#include "tensormp/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tensormp/error.hpp"
#include "tensormp/experiment.hpp"

namespace tensormp {

void write_eigenvalue_csv(std::ostream& os, const ModelParams& p, std::uint64_t m, std::uint64_t ambient_dim,
                          const std::map<std::uint64_t, std::vector<double>>& by_replica) {
  os << "# n=" << p.n << "\n# k=" << p.k << "\n# m=" << m << "\n# N=" << ambient_dim
     << "\n# model=" << to_string(p.model) << "\n# seed=" << p.seed << "\n";
  os << "replica,index,eigenvalue\n";
  for (const auto& [replica, eigs] : by_replica)
    for (std::size_t i = 0; i < eigs.size(); ++i) os << replica << ',' << i << ',' << format_double(eigs[i]) << '\n';
}

EigenvalueDump read_eigenvalue_csv(std::istream& is) {
  EigenvalueDump dump;
  std::string line;
  bool seen_columns = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto body = line.substr(1);
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
      };
      dump.header[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
      continue;
    }
    if (!seen_columns) {
      if (line.rfind("replica,index,eigenvalue", 0) != 0)
        throw ConfigError("eigenvalue CSV: expected header 'replica,index,eigenvalue'");
      seen_columns = true;
      continue;
    }
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c))
      throw ConfigError("eigenvalue CSV: malformed row at line " + std::to_string(lineno));
    try {
      dump.by_replica[std::stoull(a)].push_back(std::stod(c));
    } catch (const std::exception&) {
      throw ConfigError("eigenvalue CSV: bad number at line " + std::to_string(lineno));
    }
  }
  if (!dump.header.contains("N")) throw ConfigError("eigenvalue CSV: missing '# N=' header");
  dump.ambient_dim = std::stoull(dump.header.at("N"));
  for (auto& [r, v] : dump.by_replica) std::sort(v.begin(), v.end());
  return dump;
}

EigenvalueDump read_eigenvalue_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  return read_eigenvalue_csv(in);
}

std::string histogram_csv(std::span<const SpectralDistribution> spectra, std::size_t bins) {
  if (bins == 0) throw PreconditionError("histogram needs at least one bin");
  double lo = 0.0, hi = 0.0;
  double total = 0.0;
  bool any = false;
  for (const auto& s : spectra) {
    total += static_cast<double>(s.ambient_dim);
    for (double x : s.atoms) {
      lo = any ? std::min(lo, x) : x;
      hi = any ? std::max(hi, x) : x;
      any = true;
    }
  }
  if (hi <= lo) hi = lo + 1.0;
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::uint64_t> counts(bins, 0);
  for (const auto& s : spectra)
    for (double x : s.atoms) {
      auto b = static_cast<std::size_t>((x - lo) / width);
      counts[std::min(b, bins - 1)] += 1;
    }
  std::ostringstream os;
  os << "bin_left,bin_right,count,density_estimate\n";
  for (std::size_t b = 0; b < bins; ++b) {
    const double left = lo + width * static_cast<double>(b);
    os << format_double(left) << ',' << format_double(left + width) << ',' << counts[b] << ','
       << format_double(static_cast<double>(counts[b]) / (total * width)) << '\n';
  }
  return os.str();
}

std::string mp_grid_csv(const MPLaw& law, double lo, double hi, std::size_t points) {
  if (points < 2) throw PreconditionError("grid needs at least two points");
  std::ostringstream os;
  os << "x,density,cdf\n";
  for (std::size_t i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    os << format_double(x) << ',' << format_double(law.density(x)) << ',' << format_double(law.cdf(x)) << '\n';
  }
  return os.str();
}

std::string distance_csv(std::span<const DistanceRow> rows) {
  std::ostringstream os;
  os << "replica,metric,value\n";
  for (const auto& r : rows) os << r.replica << ',' << r.metric << ',' << format_double(r.value) << '\n';
  return os.str();
}

namespace {

constexpr char kMagic[4] = {'T', 'M', 'P', 'S'};
constexpr std::uint32_t kVersion = 1;

template <class T>
T to_le(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    std::reverse(b, b + sizeof(T));
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

template <class T>
void put(std::ostream& os, T v) {
  v = to_le(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw ConfigError("sample dump truncated");
  return to_le(v);
}

}  // namespace

void write_sample(std::ostream& os, const BaseSample& s) {
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kVersion);
  put<std::uint64_t>(os, s.n());
  put<std::uint64_t>(os, s.k());
  put<std::uint64_t>(os, s.m());
  put<std::uint64_t>(os, s.seed());
  put<std::uint64_t>(os, s.replica());
  put<std::uint32_t>(os, static_cast<std::uint32_t>(s.law()));
  for (const auto& z : s.entries()) {
    put<double>(os, z.real());
    put<double>(os, z.imag());
  }
}

BaseSample read_sample(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || !std::equal(magic, magic + 4, kMagic)) throw ConfigError("not a sample dump");
  if (get<std::uint32_t>(is) != kVersion) throw ConfigError("unsupported sample dump version");
  const auto n = get<std::uint64_t>(is);
  const auto k = get<std::uint64_t>(is);
  const auto m = get<std::uint64_t>(is);
  const auto seed = get<std::uint64_t>(is);
  const auto replica = get<std::uint64_t>(is);
  const auto law = get<std::uint32_t>(is);
  if (law > static_cast<std::uint32_t>(EntryLawKind::UnitCircle)) throw ConfigError("sample dump: bad law");
  std::vector<cplx> entries(m * k * n);
  for (auto& z : entries) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    z = {re, im};
  }
  return BaseSample({m, k, n}, static_cast<EntryLawKind>(law), seed, replica, std::move(entries));
}

}  // namespace tensormp
