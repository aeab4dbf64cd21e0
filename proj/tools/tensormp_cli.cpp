// Command-line driver: simulate, sweep, mp, distance, sphere, selftest.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tensormp/config_json.hpp"
#include "tensormp/error.hpp"
#include "tensormp/experiment.hpp"
#include "tensormp/gram.hpp"
#include "tensormp/io.hpp"
#include "tensormp/metrics.hpp"
#include "tensormp/mp_law.hpp"
#include "tensormp/sampler.hpp"
#include "tensormp/selftest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tensormp;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string out = ".";
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonFlags& f, bool needs_config) {
  auto* opt = cmd->add_option("--config", f.config, "JSON configuration file");
  if (needs_config) opt->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "Override the configured seed");
  cmd->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

json record_json(const ReplicaRecord& r) {
  return {{"n", r.n},           {"k", r.k},
          {"m", r.m},           {"N", r.ambient_dim},
          {"c", r.c},           {"replica", r.replica},
          {"ks_mp", r.ks_mp},   {"levy_mp", r.levy_mp},
          {"levy_models", r.levy_models},
          {"m1", r.moments[0]}, {"m2", r.moments[1]},
          {"m3", r.moments[2]}, {"m4_emp", r.moments[3]},
          {"ms", r.ms}};
}

int cmd_simulate(const CommonFlags& f, std::size_t bins, bool dump_sample) {
  ModelParams p = params_from_json(load_json_file(f.config));
  if (f.seed) p.seed = *f.seed;
  const auto report = validate(p);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';

  const MPLaw law(p.c);
  const auto law_cdf = EmpiricalCDF::from_law(law);
  std::map<std::uint64_t, std::vector<double>> eigs;
  std::vector<SpectralDistribution> spectra;
  json summary = json::array();
  for (std::uint64_t r = 0; r < p.replicas; ++r) {
    const auto sample = sample_base(p, r, f.threads);
    if (dump_sample) {
      fs::create_directories(f.out);
      std::ofstream bin(fs::path(f.out) / ("sample_r" + std::to_string(r) + ".bin"), std::ios::binary);
      write_sample(bin, sample);
    }
    const auto norms = norm_profile(sample);
    const auto tau = make_tau(p.tau, report.samples);
    const auto solved = eigenvalues(build_gram(p.model, sample, norms, tau, f.threads));
    if (solved.clamped > 0)
      std::cerr << "replica " << r << ": clamped " << solved.clamped << " small negative eigenvalue(s) to 0\n";
    auto spec = esd(solved.values, report.ambient_dim);
    const auto cdf = EmpiricalCDF::from_spectrum(spec);
    summary.push_back({{"replica", r},
                       {"ks_mp", ks_distance(cdf, law_cdf)},
                       {"levy_mp", levy_distance(cdf, law_cdf)},
                       {"m1", empirical_moment(spec, 1)},
                       {"m2", empirical_moment(spec, 2)}});
    eigs[r] = solved.values;
    spectra.push_back(std::move(spec));
  }

  const fs::path out(f.out);
  if (f.format == "json") {
    json doc = {{"config", to_json(p)}, {"m", report.samples}, {"N", report.ambient_dim}, {"replicas", summary}};
    json ev = json::object();
    for (const auto& [r, v] : eigs) ev[std::to_string(r)] = v;
    doc["eigenvalues"] = ev;
    write_file(out / "simulate.json", doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    write_eigenvalue_csv(os, p, report.samples, report.ambient_dim, eigs);
    write_file(out / "eigenvalues.csv", os.str());
    write_file(out / "histogram.csv", histogram_csv(spectra, bins));
  }
  std::cout << "n=" << p.n << " k=" << p.k << " m=" << report.samples << " N=" << report.ambient_dim
            << " model=" << to_string(p.model) << '\n';
  for (const auto& s : summary)
    std::cout << "replica " << s["replica"] << ": ks_mp=" << s["ks_mp"] << " levy_mp=" << s["levy_mp"] << '\n';
  return 0;
}

int cmd_sweep(const CommonFlags& f, bool timing) {
  SweepPlan plan = plan_from_json(load_json_file(f.config));
  if (f.seed)
    for (auto& p : plan.points) p.seed = *f.seed;
  const auto result = run_sweep(plan, {f.threads, timing});
  const fs::path out(f.out);
  if (f.format == "json") {
    json rows = json::array();
    for (const auto& r : result.records) rows.push_back(record_json(r));
    write_file(out / "sweep.json", rows.dump(2) + "\n");
  } else {
    write_file(out / "sweep.csv", sweep_csv(result));
  }
  for (const auto& s : result.summaries)
    std::cout << "n=" << s.params.n << " k=" << s.params.k << " c=" << s.params.c << "  ks_mp=" << s.ks_mp.mean
              << " (se " << s.ks_mp.se << ")  levy_models=" << s.levy_models.mean << " (se " << s.levy_models.se
              << ")\n";
  return 0;
}

int cmd_mp(const CommonFlags& f, double c, std::size_t points, std::optional<double> lo, std::optional<double> hi,
           unsigned moments) {
  const MPLaw law(c);
  const double a = lo.value_or(std::min(0.0, law.lambda_minus() - 0.1));
  const double b = hi.value_or(law.lambda_plus() + 0.1);
  const fs::path out(f.out);
  if (f.format == "json") {
    json doc = {{"c", c},
                {"lambda_minus", law.lambda_minus()},
                {"lambda_plus", law.lambda_plus()},
                {"atom_mass", law.atom_mass()}};
    json mom = json::array();
    for (unsigned q = 0; q <= moments; ++q) mom.push_back(law.moment(q));
    doc["moments"] = mom;
    json grid = json::array();
    for (std::size_t i = 0; i < points; ++i) {
      const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
      grid.push_back({{"x", x}, {"density", law.density(x)}, {"cdf", law.cdf(x)}});
    }
    doc["grid"] = grid;
    write_file(out / "mp.json", doc.dump(2) + "\n");
  } else {
    write_file(out / "mp_grid.csv", mp_grid_csv(law, a, b, points));
  }
  std::cout << "c=" << c << " support=[" << law.lambda_minus() << ", " << law.lambda_plus()
            << "] atom=" << law.atom_mass() << '\n';
  for (unsigned q = 1; q <= moments; ++q) std::cout << "moment(" << q << ")=" << law.moment(q) << '\n';
  return 0;
}

int cmd_distance(const CommonFlags& f, const std::string& a_path, const std::string& b_path) {
  const auto a = read_eigenvalue_csv(a_path);
  const auto b = read_eigenvalue_csv(b_path);
  std::vector<DistanceRow> rows;
  for (const auto& [r, ea] : a.by_replica) {
    const auto it = b.by_replica.find(r);
    if (it == b.by_replica.end()) continue;
    const auto fa = EmpiricalCDF::from_spectrum(esd(ea, a.ambient_dim));
    const auto fb = EmpiricalCDF::from_spectrum(esd(it->second, b.ambient_dim));
    rows.push_back({r, "ks", ks_distance(fa, fb)});
    rows.push_back({r, "levy", levy_distance(fa, fb)});
  }
  if (rows.empty()) throw ConfigError("the two eigenvalue files share no replica");
  const fs::path out(f.out);
  if (f.format == "json") {
    json doc = json::array();
    for (const auto& r : rows) doc.push_back({{"replica", r.replica}, {"metric", r.metric}, {"value", r.value}});
    write_file(out / "distance.json", doc.dump(2) + "\n");
  } else {
    write_file(out / "distance.csv", distance_csv(rows));
  }
  std::cout << distance_csv(rows);
  return 0;
}

int cmd_sphere(const CommonFlags& f) {
  ModelParams p = params_from_json(load_json_file(f.config));
  if (f.seed) p.seed = *f.seed;
  const auto rep = run_sphere_comparison(p, f.threads);
  std::cout << "max |sphere Gram - correlation Gram| = " << rep.max_gram_deviation << '\n'
            << "ks_mp sphere      = " << rep.sphere_ks.mean << " (se " << rep.sphere_ks.se << ")\n"
            << "ks_mp correlation = " << rep.correlation_ks.mean << " (se " << rep.correlation_ks.se << ")\n"
            << (rep.pass() ? "PASS" : "FAIL") << '\n';
  return rep.pass() ? 0 : 1;
}

int cmd_selftest(std::optional<std::uint64_t> seed, std::optional<std::uint32_t> fold) {
  SelftestOptions opt;
  if (seed) opt.seed = *seed;
  opt.fold = fold;
  const auto checks = run_selftest(opt);
  std::cout << format_checks(checks);
  for (const auto& c : checks)
    if (!c.passed) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of sample correlation and covariance matrices from k-fold tensor vectors"};
  app.require_subcommand(1);

  CommonFlags sim_f, sweep_f, mp_f, dist_f, sphere_f;
  std::size_t bins = 50;
  bool dump_sample = false;
  auto* sim = app.add_subcommand("simulate", "Run one configuration; dump eigenvalues and a histogram");
  add_common(sim, sim_f, true);
  sim->add_option("--bins", bins, "Histogram bins")->check(CLI::PositiveNumber);
  sim->add_flag("--dump-sample", dump_sample, "Write each BaseSample as a binary dump");

  bool timing = false;
  auto* sweep = app.add_subcommand("sweep", "Run a sweep plan and write the results table");
  add_common(sweep, sweep_f, true);
  sweep->add_flag("--timing", timing, "Record wall-clock ms per replica (output is no longer reproducible)");

  double c = 0.5;
  std::size_t points = 201;
  std::optional<double> lo, hi;
  unsigned moments = 4;
  auto* mp = app.add_subcommand("mp", "Evaluate the Marchenko-Pastur density, CDF and moments");
  add_common(mp, mp_f, false);
  mp->add_option("--c", c, "Ratio m/N")->check(CLI::PositiveNumber);
  mp->add_option("--points", points, "Grid points")->check(CLI::Range(2, 10'000'000));
  mp->add_option("--lo", lo, "Grid start");
  mp->add_option("--hi", hi, "Grid end");
  mp->add_option("--moments", moments, "Highest moment to print")->check(CLI::Range(0, 20));

  std::string a_path, b_path;
  auto* dist = app.add_subcommand("distance", "KS and Lévy distances between two eigenvalue CSVs");
  add_common(dist, dist_f, false);
  dist->add_option("first", a_path, "Eigenvalue CSV")->required()->check(CLI::ExistingFile);
  dist->add_option("second", b_path, "Eigenvalue CSV")->required()->check(CLI::ExistingFile);

  auto* sphere = app.add_subcommand("sphere", "Unit-sphere product-state model vs the correlation model");
  add_common(sphere, sphere_f, true);

  std::optional<std::uint64_t> st_seed;
  std::optional<std::uint32_t> st_fold;
  auto* st = app.add_subcommand("selftest", "Run every invariant and identity check");
  st->add_option("--seed", st_seed, "Seed");
  st->add_option("--fold", st_fold, "Restrict fold-dependent checks to this k")->check(CLI::Range(1, 8));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return cmd_simulate(sim_f, bins, dump_sample);
    if (*sweep) return cmd_sweep(sweep_f, timing);
    if (*mp) return cmd_mp(mp_f, c, points, lo, hi, moments);
    if (*dist) return cmd_distance(dist_f, a_path, b_path);
    if (*sphere) return cmd_sphere(sphere_f);
    if (*st) return cmd_selftest(st_seed, st_fold);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
