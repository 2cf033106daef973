#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wmlab/bubble.hpp"
#include "wmlab/outer.hpp"
#include "wmlab/quadrature.hpp"

using namespace wmlab;
namespace ou = wmlab::outer;
namespace bb = wmlab::bubble;

namespace {
constexpr double kPi = std::numbers::pi;
const ou::OuterParams kP{2.0, 0.15};
}

TEST_CASE("lambda2 closed form and domain") {
  ou::OuterParams p{2.0, 0.15};
  const double l10 = std::log(10.0);
  CHECK(ou::lambda2(0.1, p) == doctest::Approx(l10 * l10 / 0.1).epsilon(1e-12));
  CHECK(ou::lambda2(0.1, p) == doctest::Approx(53.0189811).epsilon(1e-7));
  ou::OuterParams pe{2.0, 0.5};
  CHECK(ou::lambda2(std::exp(-1.0), pe) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(ou::lambda2(0.3, p), Error);   // t > t0
  CHECK_THROWS_AS(ou::lambda2(0.0, p), Error);
  CHECK_THROWS_AS(ou::lambda2(1.0, pe), Error);  // log 1 degeneracy is outside (0,t0]
}

TEST_CASE("outer params validation") {
  ou::OuterParams bad{1.4, 0.15};
  CHECK_THROWS_AS(bad.validate(), Error);
  ou::OuterParams bad2{2.0, 1.5};
  CHECK_THROWS_AS(bad2.validate(), Error);
}

TEST_CASE("v10 closed form") {
  CHECK(ou::v10(0.13, 0.0, kP) == 0.0);
  const double t = 0.1;
  const double L = -std::log(t);
  const double r1 = 1.0 / ou::lambda2(t, kP);  // R = 1
  CHECK(ou::v10(t, r1, kP) == doctest::Approx(0.5 * std::pow(L, -4.0)).epsilon(1e-12));
  CHECK(ou::v10(t, r1, kP) == doctest::Approx(0.017786).epsilon(1e-4));
  // r -> infinity limit is (t lambda2)^{-2}
  CHECK(ou::v10(t, 1e9, kP) == doctest::Approx(std::pow(L, -4.0)).epsilon(1e-9));
}

TEST_CASE("e0 tilde scaled source") {
  const double t = 0.1;
  const double L = -std::log(t);
  const double expect = -(2.0 / L - 2.0 / (L * L)) * 2.0;
  CHECK(ou::e0_tilde_scaled(t, 1.0, kP) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(ou::e0_tilde_scaled(t, 1.0, kP) == doctest::Approx(-0.982729).epsilon(1e-4));
  // pointwise vanishing as |log t| -> infinity
  CHECK(std::abs(ou::e0_tilde_scaled(1e-8, 1.0, kP)) < 0.25);
  CHECK(std::abs(ou::e0_tilde_scaled(1e-8, 1.0, kP)) <
        std::abs(ou::e0_tilde_scaled(0.1, 1.0, kP)));
  // R -> 0: O(R^2) with an O(1/L) coefficient
  const double v = ou::e0_tilde_scaled(t, 1e-3, kP);
  CHECK(std::abs(v) < 5e-5);
}

TEST_CASE("v11 cache satisfies the conjugated equation") {
  ou::OuterProfile prof(kP, ou::Truncation::v10_v11);
  // Ltilde(sqrt(R) Y_i) = sqrt(R) g_i on the cache nodes
  auto g = std::make_shared<RadialGrid>(RadialGrid::make_per_decade(1e-4, 400.0, 64));
  for (int which = 1; which <= 2; ++which) {
    std::vector<double> y(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) {
      const double R = (*g)[i];
      y[i] = std::sqrt(R) * prof.Y(which, R);
    }
    RadialFn yf;
    yf.grid = g;
    yf.values = std::move(y);
    bb::LinearizedOperator Lt{bb::LinearizedOperator::Form::Ltilde,
                              bb::LinearizedOperator::Sign::spectral};
    RadialFn out = bb::apply_operator(Lt, yf);
    double sup = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double R = (*out.grid)[i];
      const double gsrc = which == 1 ? R * bb::dPhi(R) : bb::Phi(R);
      sup = std::max(sup, std::abs(out[i] - std::sqrt(R) * gsrc));
      scale = std::max(scale, std::abs(std::sqrt(R) * gsrc));
    }
    CHECK(sup / scale < 1e-6);
  }
}

TEST_CASE("v11 vanishes to fourth order at the origin") {
  ou::OuterProfile prof(kP, ou::Truncation::v10_v11);
  const double t = 0.1;
  const double a = prof.v11_of_R(t, 2e-3), b = prof.v11_of_R(t, 1e-3);
  const double slope = std::log2(std::abs(a / b));
  CHECK(slope > 3.7);
  CHECK(slope < 4.3);
  CHECK(std::abs(prof.v11_of_R(1e-8, 1.0)) < std::abs(prof.v11_of_R(0.1, 1.0)));
}

TEST_CASE("v11 quadratic growth carries the phi0-branch integral") {
  ou::OuterProfile prof(kP, ou::Truncation::v10_v11);
  // theta0 ~ R^{5/2}/16, so Y ~ -(B_inf/16) R^2 with B_inf = int phi0 sqrt(s) g ds
  for (int which = 1; which <= 2; ++which) {
    auto g = [which](double s) { return which == 1 ? s * bb::dPhi(s) : bb::Phi(s); };
    const double Binf = integrate_halfline(
        [&](double s) { return bb::phi0(s) * std::sqrt(s) * g(s); }, 1e-10);
    CHECK(prof.Y_large_R_coeff(which) == doctest::Approx(-Binf / 16.0).epsilon(2e-2));
  }
}

TEST_CASE("Q2tilde endpoint invariants") {
  for (auto tr : {ou::Truncation::q_only, ou::Truncation::v10}) {
    ou::OuterProfile prof(kP, tr);
    const double t = 0.11;
    CHECK(prof.value(t, 0.0) == 0.0);
    const double L = -std::log(t);
    const double tail = tr == ou::Truncation::q_only ? 0.0 : std::pow(L, -4.0);
    CHECK(prof.value(t, 1e9) == doctest::Approx(kPi + tail).epsilon(1e-9));
  }
}

TEST_CASE("correction bound |v| <= C/|log t| with stable C") {
  ou::OuterProfile prof(kP, ou::Truncation::v10_v11);
  double cmin = 1e300, cmax = 0.0;
  for (double t : {1e-3, 1e-2, 0.1, 0.15}) {
    double C = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double r = t * std::pow(10.0, -4.0 + 4.0 * i / 200.0);
      C = std::max(C, std::abs(prof.correction(t, r)) * (-std::log(t)));
    }
    cmin = std::min(cmin, C);
    cmax = std::max(cmax, C);
  }
  CHECK(cmax / cmin < 2.0);
}

TEST_CASE("scaling derivative of v10 matches the closed form at second order") {
  auto f = [&](double t, double r) { return ou::v10(t, r, kP); };
  const double t = 0.1;
  const double r = 0.3 / ou::lambda2(t, kP);
  const double exact = ou::Sv10_analytic(t, r, kP);
  double prev = 0.0;
  int k = 0;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    const double err = std::abs(apply_scaling_field(f, t, r, h) - exact);
    if (k > 0) CHECK(prev / err > 2.0);
    prev = err;
    ++k;
  }
}

TEST_CASE("outer dtt matches finite differences of the value") {
  ou::OuterProfile prof(kP, ou::Truncation::v10_v11);
  const double t = 0.1, r = 0.01;
  const double d = 5e-4 * t;
  const double fd = (-prof.value(t + 2 * d, r) + 16 * prof.value(t + d, r) -
                     30 * prof.value(t, r) + 16 * prof.value(t - d, r) -
                     prof.value(t - 2 * d, r)) /
                    (12 * d * d);
  CHECK(prof.dtt(t, r) == doctest::Approx(fd).epsilon(1e-6));
}
