#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tensormp/error.hpp"
#include "tensormp/gram.hpp"
#include "tensormp/metrics.hpp"
#include "tensormp/rng.hpp"
#include "tensormp/sampler.hpp"
#include "tensormp/selftest.hpp"

using namespace tensormp;

namespace {

EmpiricalCDF step_at(double x) { return EmpiricalCDF({x}, {1.0}); }

// Smallest eps on a uniform grid for which the Lévy condition holds at every
// probe point of a dense x grid.
double levy_grid_oracle(const EmpiricalCDF& f, const EmpiricalCDF& g, double lo, double hi, double step) {
  for (double eps = 0.0; eps <= 1.0 + step; eps += step) {
    bool ok = true;
    for (double x = lo; x <= hi && ok; x += step / 4) {
      const double gx = g(x);
      ok = f(x - eps) - eps <= gx + 1e-12 && gx <= f(x + eps) + eps + 1e-12;
    }
    if (ok) return eps;
  }
  return 1.0;
}

EmpiricalCDF random_step(KeyedStream& rs, int atoms) {
  std::vector<double> xs(atoms);
  for (auto& x : xs) x = rs.uniform() * 2.0;
  std::sort(xs.begin(), xs.end());
  std::vector<double> cum(atoms);
  for (int i = 0; i < atoms; ++i) cum[i] = static_cast<double>(i + 1) / atoms;
  return EmpiricalCDF(xs, cum);
}

}  // namespace

TEST_CASE("CDF construction checks its input") {
  CHECK_THROWS_AS(EmpiricalCDF({1.0, 0.5}, {0.5, 1.0}), PreconditionError);
  CHECK_THROWS_AS(EmpiricalCDF({0.0, 1.0}, {0.5, 0.9}), PreconditionError);
  CHECK_THROWS_AS(EmpiricalCDF({0.0, 1.0}, {0.6, 0.5}), PreconditionError);
  CHECK_THROWS_AS(EmpiricalCDF({}, {}), PreconditionError);
  const EmpiricalCDF f({0.0, 0.0, 1.0}, {0.25, 0.5, 1.0});
  CHECK(f.breakpoints().size() == 2);
  CHECK(f(-1.0) == 0.0);
  CHECK(f(0.0) == 0.5);
  CHECK(f(0.999) == 0.5);
  CHECK(f(1.0) == 1.0);
}

TEST_CASE("KS distance examples") {
  CHECK(ks_distance(step_at(0.0), step_at(0.0)) == 0.0);
  CHECK(ks_distance(step_at(0.0), step_at(1.0)) == 1.0);
  CHECK(ks_distance(step_at(0.0), EmpiricalCDF({0.0, 1.0}, {0.5, 1.0})) == 0.5);
}

TEST_CASE("Lévy distance examples") {
  CHECK(levy_distance(step_at(0.0), step_at(0.0)) == 0.0);
  CHECK(levy_distance(step_at(0.0), step_at(0.5)) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(levy_distance(step_at(0.0), step_at(3.0)) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(levy_feasible(step_at(0.0), step_at(0.5), 0.5 + 1e-12));
  CHECK_FALSE(levy_feasible(step_at(0.0), step_at(0.5), 0.49));
}

TEST_CASE("Lévy distance against a brute-force grid oracle") {
  KeyedStream rs(5, StreamDomain::SelfTest, 0, 0, 0);
  for (int t = 0; t < 25; ++t) {
    const auto f = random_step(rs, 3 + t % 4);
    const auto g = random_step(rs, 2 + t % 5);
    const double exact = levy_distance(f, g);
    const double grid = levy_grid_oracle(f, g, -1.5, 3.5, 1e-3);
    CHECK(exact <= grid + 1e-9);
    CHECK(exact >= grid - 1e-3 - 1e-9);
    CHECK(exact <= ks_distance(f, g) + 1e-9);
    CHECK(std::abs(exact - levy_distance(g, f)) < 1e-9);
  }
}

TEST_CASE("ks_to_law agrees with the gridded law away from the hard edge") {
  const auto s = sample_base({45, 2, 9}, EntryLawKind::ComplexGaussian, 12, 0);
  const auto tau = make_tau(TauSpec::constant_one(), 45);
  const auto d = esd(eigenvalues(build_correlation_gram(s, norm_profile(s), tau)).values, 81);
  const MPLaw law(45.0 / 81.0);
  const double exact = ks_to_law(d, law);
  const double gridded = ks_distance(EmpiricalCDF::from_spectrum(d), EmpiricalCDF::from_law(law));
  CHECK(std::abs(exact - gridded) < 2e-4);
  CHECK(exact > 0.0);
}

TEST_CASE("normalization identity examples") {
  const int n = 4;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Constant(n, 1, cplx(1.0, 0.0));  // column norm 2 = sqrt(n)
  const std::vector<double> one{1.0};
  auto sides = jiang_identity_sides(a, one);
  CHECK(sides.lhs == doctest::Approx(0.0).scale(1.0));
  CHECK(sides.rhs == doctest::Approx(0.0).scale(1.0));

  a *= 2.0;  // column norm 2 sqrt(n)
  sides = jiang_identity_sides(a, one);
  CHECK(sides.lhs == doctest::Approx(1.0));
  CHECK(sides.rhs == doctest::Approx(1.0));

  KeyedStream rs(3, StreamDomain::SelfTest, 0, 0, 0);
  const Eigen::MatrixXcd r = random_complex_matrix(rs, 6, 4);
  const std::vector<double> lam{0.5, 1.0, 2.0, 3.5};
  sides = jiang_identity_sides(r, lam);
  CHECK(sides.lhs == doctest::Approx(sides.rhs).epsilon(1e-12));

  Eigen::MatrixXcd zero_col = r;
  zero_col.col(2).setZero();
  CHECK_THROWS_AS(jiang_identity_sides(zero_col, lam), PreconditionError);
  CHECK_THROWS_AS(jiang_identity_sides(r, one), PreconditionError);
}

TEST_CASE("perturbation bound examples") {
  KeyedStream rs(9, StreamDomain::SelfTest, 0, 0, 0);
  const Eigen::MatrixXcd a = random_complex_matrix(rs, 5, 8);
  const auto same = bai_bound_sides(a, a);
  CHECK(same.lhs == 0.0);
  CHECK(same.rhs == 0.0);

  Eigen::MatrixXcd one(1, 1), zero(1, 1);
  one(0, 0) = 1.0;
  zero(0, 0) = 0.0;
  const auto s = bai_bound_sides(one, zero);
  CHECK(s.lhs == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(s.rhs == doctest::Approx(2.0));
  CHECK_THROWS_AS(bai_bound_sides(a, a.transpose()), PreconditionError);
}

TEST_CASE("empirical moments") {
  const auto s = esd({1.0, 2.0}, 4);
  CHECK(empirical_moment(s, 1) == doctest::Approx(0.75));
  CHECK(empirical_moment(s, 2) == doctest::Approx(1.25));
  CHECK(empirical_moment(s, 3) == doctest::Approx(2.25));
  CHECK_THROWS_AS(empirical_moment(s, 0), PreconditionError);
  CHECK_THROWS_AS(empirical_moment(s, 21), PreconditionError);
}

TEST_CASE("finite-N second moment is unbiased for c + c^2 - c/N") {
  // For unit vectors with E|<u, v>|^2 = 1/n per level, E Tr(M^2)/N = c + c(m - 1)/N exactly.
  const std::size_t n = 10, k = 2, m = 50;
  const double dim = 100.0, c = m / dim;
  const double target = c + c * c - c / dim;
  const auto tau = make_tau(TauSpec::constant_one(), m);
  const int replicas = 400;
  double sum = 0, sumsq = 0;
  for (int r = 0; r < replicas; ++r) {
    const auto s = sample_base({m, k, n}, EntryLawKind::ComplexGaussian, 2024, r);
    const auto d = esd(eigenvalues(build_correlation_gram(s, norm_profile(s), tau)).values, 100);
    const double m2 = empirical_moment(d, 2);
    sum += m2;
    sumsq += m2 * m2;
  }
  const double mean = sum / replicas;
  const double se = std::sqrt((sumsq / replicas - mean * mean) / (replicas - 1));
  CHECK(std::abs(mean - target) < 4 * se);
}
