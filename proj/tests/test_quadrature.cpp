#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "tensormp/quadrature.hpp"

using namespace tensormp;

TEST_CASE("Gauss-Legendre rule structure") {
  for (std::size_t order : {1, 2, 5, 16, 64}) {
    const auto r = make_gauss_legendre(order);
    CHECK(r.order() == order);
    CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t i = 0; i + 1 < order; ++i) CHECK(r.nodes[i] < r.nodes[i + 1]);
    for (std::size_t i = 0; i < order; ++i) CHECK(r.nodes[i] == doctest::Approx(-r.nodes[order - 1 - i]));
  }
  const auto two = make_gauss_legendre(2);
  CHECK(two.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("exact on polynomials up to degree 2n-1") {
  const auto& r = gauss_legendre_64();
  for (int d = 0; d <= 127; d += 7) {
    const double exact = (std::pow(2.0, d + 1) - std::pow(-1.0, d + 1)) / (d + 1);  // int_{-1}^{2} x^d
    const double got = r.integrate([d](double x) { return std::pow(x, d); }, -1.0, 2.0);
    CHECK(got == doctest::Approx(exact).epsilon(1e-12));
  }
  const auto five = make_gauss_legendre(5);
  CHECK(five.integrate([](double x) { return std::pow(x, 9); }, 0.0, 1.0) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("adaptive integration of endpoint singular integrands") {
  const auto r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  // The sqrt endpoint exhausts the bisection budget; the flag says so and the
  // value is still accurate.
  CHECK_FALSE(r.converged);
  CHECK(r.max_depth_reached == 8);
  CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-9);

  const auto s = integrate_adaptive([](double x) { return std::sqrt(1 - x * x); }, -1.0, 1.0);
  CHECK(s.value == doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));

  const auto smooth = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(smooth.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(smooth.max_depth_reached <= 1);
}
