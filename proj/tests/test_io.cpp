#include <doctest.h>

#include <sstream>

#include "tensormp/config_json.hpp"
#include "tensormp/error.hpp"
#include "tensormp/io.hpp"

using namespace tensormp;

TEST_CASE("binary sample dump round-trips exactly") {
  for (auto law : {EntryLawKind::ComplexGaussian, EntryLawKind::UnitCircle}) {
    const auto s = sample_base({4, 3, 5}, law, 77, 6);
    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    write_sample(buf, s);
    CHECK(buf.str().substr(0, 4) == "TMPS");
    CHECK(read_sample(buf) == s);
  }
  std::istringstream bad("XXXX");
  CHECK_THROWS(read_sample(bad));
}

TEST_CASE("eigenvalue CSV round-trips") {
  ModelParams p;
  p.n = 3;
  p.k = 2;
  p.seed = 9;
  std::map<std::uint64_t, std::vector<double>> eig{{0, {0.1, 1.0 / 3.0, 2.5}}, {1, {0.0, 1e-300, 7.0}}};
  std::stringstream buf;
  write_eigenvalue_csv(buf, p, 3, 9, eig);
  const auto dump = read_eigenvalue_csv(buf);
  CHECK(dump.ambient_dim == 9);
  CHECK(dump.header.at("model") == "correlation");
  CHECK(dump.header.at("seed") == "9");
  CHECK(dump.by_replica == eig);
}

TEST_CASE("histogram counts and density") {
  const std::vector<SpectralDistribution> spectra{esd({0.5, 1.5}, 4), esd({0.6, 1.9}, 4)};
  const auto csv = histogram_csv(spectra, 2);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "bin_left,bin_right,count,density_estimate");
  double total = 0, mass = 0;
  for (; std::getline(is, line);) {
    std::istringstream row(line);
    std::string f[4];
    for (auto& x : f) std::getline(row, x, ',');
    total += std::stod(f[2]);
    mass += std::stod(f[3]) * (std::stod(f[1]) - std::stod(f[0]));
  }
  CHECK(total == 4);
  CHECK(mass == doctest::Approx(0.5));  // the other half sits in the implied zeros
}

TEST_CASE("MP grid and distance tables") {
  const auto csv = mp_grid_csv(MPLaw(0.25), 0.0, 3.0, 4);
  CHECK(csv.rfind("x,density,cdf\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  const std::vector<DistanceRow> rows{{0, "ks", 0.25}, {1, "levy", 0.0}};
  CHECK(distance_csv(rows) == "replica,metric,value\n0,ks,0.25\n1,levy,0\n");
}

TEST_CASE("model configs from JSON") {
  const auto p = params_from_json(nlohmann::json::parse(
      R"({"n": 5, "k": 3, "c": 0.25, "model": "covariance", "entry_law": "rademacher",
          "tau": {"kind": "two_point", "a": 1, "b": 2, "weight": 0.25}, "seed": 12, "replicas": 4})"));
  CHECK(p.n == 5);
  CHECK(p.k == 3);
  CHECK(p.model == ModelKind::Covariance);
  CHECK(p.entry_law == EntryLawKind::Rademacher);
  CHECK(p.tau.kind == TauKind::TwoPoint);
  CHECK(p.tau.weight == 0.25);
  CHECK(p.seed == 12);
  CHECK(p.replicas == 4);
  const auto back = params_from_json(to_json(p));
  CHECK(to_json(back) == to_json(p));

  const auto d = params_from_json(nlohmann::json::parse(R"({"n": 5, "k": 1, "c": 1})"));
  CHECK(d.model == ModelKind::Correlation);
  CHECK(d.tau.kind == TauKind::ConstantOne);

  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"n": 5, "c": 1})")), ConfigError);
  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"n": "x", "k": 1, "c": 1})")), ConfigError);
  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"n": 5, "k": 1, "c": 1, "entry_law": "cauchy"})")),
                  ConfigError);
  CHECK(tau_from_json(nlohmann::json::parse(R"({"kind": "explicit", "values": [1, 1, 4]})")).list ==
        std::vector<double>{1, 1, 4});
}

TEST_CASE("sweep plans from JSON") {
  const auto plan = plan_from_json(nlohmann::json::parse(
      R"({"n": [10, 20], "c": [0.5, 1.0], "k_schedule": {"kind": "power", "gamma": 0.5},
          "seed": 1, "replicas": 2, "mode": "comparison", "out": "res"})"));
  CHECK(plan.points.size() == 4);
  CHECK(plan.points[2].n == 20);
  CHECK(plan.points[2].k == 5);
  CHECK(plan.mode == SweepMode::Comparison);
  CHECK(plan.output_dir == "res");
  CHECK(plan.replicas == 2);

  const auto pts = plan_from_json(nlohmann::json::parse(R"({"points": [{"n": 6, "k": 2, "c": 0.5}]})"));
  CHECK(pts.points.size() == 1);
  CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(R"({"n": [10], "c": [0.5], "mode": "other"})")),
                  ConfigError);
  CHECK_THROWS_AS(load_json_file("/nonexistent/file.json"), ConfigError);
}
