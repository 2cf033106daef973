#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wmlab/grid.hpp"
#include "wmlab/quadrature.hpp"

using namespace wmlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("log-uniform grid hits the decade lattice") {
  auto g = RadialGrid::make(1e-3, 1e3, 49);  // 6 decades x 8 per decade
  CHECK(g.size() == 49);
  for (std::size_t k = 0; k < 49; ++k) {
    const double expect = std::pow(10.0, -3.0 + static_cast<double>(k) / 8.0);
    CHECK(g[k] == doctest::Approx(expect).epsilon(1e-13));
  }
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 1e3);
}

TEST_CASE("grid rejects empty range and bad counts") {
  CHECK_THROWS_AS(RadialGrid::make(1.0, 1.0, 33), Error);
  CHECK_THROWS_AS(RadialGrid::make(1e-2, 1e2, 8), Error);
  CHECK_THROWS_AS(RadialGrid::make(-1.0, 1.0, 33), Error);
}

TEST_CASE("log symmetry puts the middle node at 1") {
  auto g = RadialGrid::make(1e-2, 1e2, 33);
  CHECK(g[16] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("half-line quadrature: exponential") {
  const double v = integrate_halfline([](double R) { return std::exp(-R); }, 1e-10);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("half-line quadrature: R/(1+R^4) = pi/4") {
  const double v = integrate_halfline([](double R) { return R / (1.0 + R * R * R * R); }, 1e-11);
  CHECK(v == doctest::Approx(kPi / 4.0).epsilon(1e-10));
}

TEST_CASE("half-line quadrature: Phi^2 R = 2 pi") {
  auto phi = [](double R) {
    const double R2 = R * R;
    return 4.0 * R2 / (1.0 + R2 * R2);
  };
  const double v = integrate_halfline([&](double R) { return phi(R) * phi(R) * R; }, 1e-12);
  CHECK(v == doctest::Approx(2.0 * kPi).epsilon(1e-10));
}

TEST_CASE("quadrature tolerance domain") {
  CHECK_THROWS_AS(integrate_halfline([](double R) { return std::exp(-R); }, 1e-3), Error);
  CHECK_THROWS_AS(integrate_halfline([](double R) { return std::exp(-R); }, 1e-15), Error);
}

TEST_CASE("quadrature is linear within tolerance") {
  const double tol = 1e-10;
  auto f = [](double R) { return std::exp(-R); };
  auto g = [](double R) { return R / (1.0 + R * R * R * R); };
  const double a = 3.0, b = -2.0;
  const double If = integrate_halfline(f, tol);
  const double Ig = integrate_halfline(g, tol);
  const double Ifg = integrate_halfline([&](double R) { return a * f(R) + b * g(R); }, tol);
  CHECK(std::abs(Ifg - a * If - b * Ig) <=
        4.0 * tol * (std::abs(a * If) + std::abs(b * Ig)));
}

TEST_CASE("Richardson self-consistency under tol halving") {
  auto f = [](double R) { return R / (1.0 + R * R * R * R); };
  for (double tol : {1e-8, 1e-9, 1e-10}) {
    auto r1 = integrate_halfline_result(f, tol);
    auto r2 = integrate_halfline_result(f, tol / 2.0);
    CHECK(std::abs(r1.value - r2.value) <= std::max(r1.error, 1e-15));
  }
}

TEST_CASE("scaling field on r^2") {
  auto f = [](double, double r) { return r * r; };
  const double v = apply_scaling_field(f, 0.7, 1.3, 1e-3);
  CHECK(v == doctest::Approx(2.0 * 1.3 * 1.3).epsilon(1e-8));
}

TEST_CASE("scaling field on lambda2(t) r") {
  const double beta = 2.0;
  auto f = [&](double t, double r) { return std::pow(-std::log(t), beta) / t * r; };
  const double t = 0.1, r = 0.37;
  const double L = -std::log(t);
  // S f = f (1 + t lambda2'/lambda2) = -f beta/L
  const double expect = -beta / L * f(t, r);
  const double v = apply_scaling_field(f, t, r, 1e-4);
  CHECK(v == doctest::Approx(expect).epsilon(1e-6));
  CHECK(std::abs(v) == doctest::Approx(f(t, r) * 2.0 / 2.302585093).epsilon(1e-6));
}

TEST_CASE("scaling field annihilates self-similar profiles") {
  auto f = [](double t, double r) { return std::exp(-r / t); };
  const double v = apply_scaling_field(f, 0.5, 0.2, 1e-4);
  CHECK(std::abs(v) < 1e-7);
}

TEST_CASE("scaling field converges at second order") {
  auto f = [](double t, double r) { return t * r * std::exp(-r); };
  const double t = 0.8, r = 1.7;
  const double exact = t * r * std::exp(-r) * (2.0 - r);
  double prev_err = 0.0;
  int k = 0;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    const double err = std::abs(apply_scaling_field(f, t, r, h) - exact);
    if (k > 0) {
      const double ratio = prev_err / err;
      CHECK(ratio > 2.0);  // order 2 within factor 2
      CHECK(ratio < 8.0);
    }
    prev_err = err;
    ++k;
  }
}

TEST_CASE("scaling field reports domain escapes") {
  auto f = [](double t, double r) {
    if (t < 0.5) return std::nan("");
    return t + r;
  };
  CHECK_THROWS_AS(apply_scaling_field(f, 0.5, 1.0, 1e-2), Error);
}
