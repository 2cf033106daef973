#include "wmlab/outer.hpp"

#include <cmath>

#include "wmlab/bubble.hpp"
#include "wmlab/quadrature.hpp"

namespace wmlab::outer {

namespace {
void require_time(double t, const OuterParams& p, const char* who) {
  if (!(t > 0.0 && t <= p.t0))
    throw Error(ErrorKind::domain, std::string(who) + ": t outside (0, t0]");
}
}  // namespace

void OuterParams::validate() const {
  if (!(beta > 1.5)) throw Error(ErrorKind::config, "outer: beta must exceed 3/2");
  if (!(t0 > 0.0 && t0 < 1.0)) throw Error(ErrorKind::config, "outer: t0 must lie in (0,1)");
}

double log_lambda2(double t, const OuterParams& p) {
  require_time(t, p, "lambda2");
  const double L = absl(t);
  return p.beta * std::log(L) - std::log(t);
}

double lambda2(double t, const OuterParams& p) { return std::exp(log_lambda2(t, p)); }

double dlog_lambda2(double t, const OuterParams& p) {
  require_time(t, p, "lambda2");
  const double L = absl(t);
  return -(1.0 + p.beta / L) / t;
}

double ddlambda2_over(double t, const OuterParams& p) {
  require_time(t, p, "lambda2");
  const double L = absl(t);
  const double u = 1.0 + p.beta / L;
  return (u - p.beta / (L * L)) / (t * t) + u * u / (t * t);
}

double v10(double t, double r, const OuterParams& p) {
  require_time(t, p, "v10");
  if (r == 0.0) return 0.0;
  const double L = absl(t);
  const double R = lambda2(t, p) * r;
  const double R4 = R * R * R * R;
  return std::pow(L, -2.0 * p.beta) * R4 / (1.0 + R4);
}

double e0c1(double L, double beta) {
  const double u = beta / L;
  return -(2.0 * u + u * u);
}

double e0c2(double L, double beta) { return -beta / L + beta / (L * L); }

double e0_tilde_scaled(double t, double R, const OuterParams& p) {
  require_time(t, p, "e0_tilde");
  const double L = absl(t);
  return e0c1(L, p.beta) * R * bubble::dPhi(R) + e0c2(L, p.beta) * bubble::Phi(R);
}

OuterProfile::OuterProfile(OuterParams params, Truncation trunc, double quad_tol)
    : params_(params), trunc_(trunc) {
  params_.validate();
  if (trunc_ != Truncation::v10_v11) return;

  // Cache the two t-independent Green responses
  //   sqrt(R) Y_i = phi0 \int_0^R theta0 sqrt(s) g_i ds - theta0 \int_0^R phi0 sqrt(s) g_i ds,
  // g_1 = s Phi'(s), g_2 = Phi(s).  Ltilde(sqrt(R) Y_i) = sqrt(R) g_i.
  auto grid = std::make_shared<RadialGrid>(RadialGrid::make_per_decade(1e-4, 400.0, 64));
  const std::size_t n = grid->size();
  y1_.resize(n);
  y1p_.resize(n);
  y2_.resize(n);
  y2p_.resize(n);
  for (int which = 1; which <= 2; ++which) {
    auto g = [which](double s) {
      return which == 1 ? s * bubble::dPhi(s) : bubble::Phi(s);
    };
    auto theta_int = [&](double s) { return bubble::theta0(s) * std::sqrt(s) * g(s); };
    auto phi_int = [&](double s) { return bubble::phi0(s) * std::sqrt(s) * g(s); };
    std::vector<double> A(n), B(n);
    double a = integrate_interval(theta_int, 0.0, grid->front(), quad_tol, 1e-300).value;
    double b = integrate_interval(phi_int, 0.0, grid->front(), quad_tol, 1e-300).value;
    A[0] = a;
    B[0] = b;
    for (std::size_t i = 1; i < n; ++i) {
      a += integrate_interval(theta_int, (*grid)[i - 1], (*grid)[i], quad_tol, 1e-300).value;
      b += integrate_interval(phi_int, (*grid)[i - 1], (*grid)[i], quad_tol, 1e-300).value;
      A[i] = a;
      B[i] = b;
    }
    auto& yv = which == 1 ? y1_ : y2_;
    auto& yp = which == 1 ? y1p_ : y2p_;
    for (std::size_t i = 0; i < n; ++i) {
      const double R = (*grid)[i];
      const double y = bubble::phi0(R) * A[i] - bubble::theta0(R) * B[i];
      const double dy = bubble::dphi0(R) * A[i] - bubble::dtheta0(R) * B[i];
      yv[i] = y / std::sqrt(R);
      // dY/dx with x = log R
      yp[i] = R * (dy / std::sqrt(R) - 0.5 * y / (R * std::sqrt(R)));
    }
  }
  ygrid_ = grid;
}

double OuterProfile::hermite(const std::vector<double>& v, const std::vector<double>& vp,
                             double R, int zero_order) const {
  const auto& g = *ygrid_;
  if (R <= g.front()) return v.front() * std::pow(R / g.front(), zero_order);
  if (R >= g.back()) {
    // quadratic growth branch at the far end
    const double c = v.back() / (g.back() * g.back());
    return c * R * R;
  }
  std::size_t i = g.locate(R);
  if (i >= g.size() - 1) i = g.size() - 2;
  const double x0 = std::log(g[i]), x1 = std::log(g[i + 1]);
  const double w = x1 - x0;
  const double s = (std::log(R) - x0) / w;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * v[i] + h10 * w * vp[i] + h01 * v[i + 1] + h11 * w * vp[i + 1];
}

double OuterProfile::Y(int which, double R) const {
  if (trunc_ != Truncation::v10_v11)
    throw Error(ErrorKind::input, "OuterProfile: v11 cache not built at this truncation");
  return hermite(which == 1 ? y1_ : y2_, which == 1 ? y1p_ : y2p_, R, 4);
}

double OuterProfile::Y_large_R_coeff(int which) const {
  const auto& v = which == 1 ? y1_ : y2_;
  const double R = ygrid_->back();
  return v.back() / (R * R);
}

double OuterProfile::v11_of_R(double t, double R) const {
  require_time(t, params_, "v11");
  if (R <= 0.0) return 0.0;
  const double L = absl(t);
  const double scale = std::pow(L, -2.0 * params_.beta);
  return scale * (e0c1(L, params_.beta) * Y(1, R) + e0c2(L, params_.beta) * Y(2, R));
}

double OuterProfile::v11(double t, double r) const {
  return v11_of_R(t, lambda2(t, params_) * r);
}

double OuterProfile::value(double t, double r) const {
  require_time(t, params_, "Q2tilde");
  if (r == 0.0) return 0.0;
  const double R = lambda2(t, params_) * r;
  double u = bubble::Q(R);
  if (trunc_ != Truncation::q_only) u += v10(t, r, params_);
  if (trunc_ == Truncation::v10_v11) u += v11_of_R(t, R);
  return u;
}

double OuterProfile::correction(double t, double r) const {
  double v = 0.0;
  if (trunc_ != Truncation::q_only) v += v10(t, r, params_);
  if (trunc_ == Truncation::v10_v11) v += v11(t, r);
  return v;
}

double OuterProfile::dtt(double t, double r) const {
  require_time(t, params_, "Q2tilde_tt");
  // bubble part by the chain rule
  const double R = lambda2(t, params_) * r;
  const double dl = dlog_lambda2(t, params_);
  double out = ddlambda2_over(t, params_) * bubble::Phi(R) +
               dl * dl * (R * bubble::dPhi(R) - bubble::Phi(R));
  if (trunc_ == Truncation::q_only) return out;
  // corrections by 5-point finite differences (outer time scale, smooth)
  const double d = 1e-3 * t;
  auto v = [&](double tt) {
    double s = v10(tt, r, params_);
    if (trunc_ == Truncation::v10_v11) s += v11(tt, r);
    return s;
  };
  out += (-v(t + 2 * d) + 16.0 * v(t + d) - 30.0 * v(t) + 16.0 * v(t - d) - v(t - 2 * d)) /
         (12.0 * d * d);
  return out;
}

double OuterProfile::potential(double t, double r) const {
  const double u = value(t, r);
  return 4.0 * std::cos(2.0 * u) / (r * r);
}

double Sv10_analytic(double t, double r, const OuterParams& p) {
  const double L = absl(t);
  const double R = lambda2(t, p) * r;
  const double R4 = R * R * R * R;
  const double d = 1.0 + R4;
  const double g = R4 / d;
  const double Rgp = 4.0 * R4 / (d * d);
  return p.beta * std::pow(L, -2.0 * p.beta - 1.0) * (2.0 * g - Rgp);
}

}  // namespace wmlab::outer
