#include "wmlab/bubble.hpp"

#include <cmath>
#include <numbers>

#include "wmlab/quadrature.hpp"

namespace wmlab::bubble {

namespace {
constexpr double kPi = std::numbers::pi;

void require_positive(double R, const char* who) {
  if (!(R > 0.0)) throw Error(ErrorKind::singularity, std::string(who) + ": requires R > 0");
}
}  // namespace

double Q(double R) { return 2.0 * std::atan(R * R); }

double Phi(double R) {
  const double R2 = R * R;
  return 4.0 * R2 / (1.0 + R2 * R2);
}

double Theta(double R) {
  require_positive(R, "Theta");
  const double R4 = R * R * R * R;
  return (-1.0 + 8.0 * R4 * std::log(R) + R4 * R4) / (4.0 * R * R * (1.0 + R4));
}

double phi0(double R) { return std::sqrt(R) * Phi(R); }

double theta0(double R) {
  require_positive(R, "theta0");
  const double R4 = R * R * R * R;
  return (-1.0 + 8.0 * R4 * std::log(R) + R4 * R4) /
         (16.0 * R * std::sqrt(R) * (1.0 + R4));
}

double cos2Q(double R) {
  const double R4 = R * R * R * R;
  const double d = 1.0 + R4;
  return 1.0 - 8.0 * R4 / (d * d);
}

double sin2Q(double R) {
  const double R2 = R * R;
  const double R4 = R2 * R2;
  const double d = 1.0 + R4;
  return 4.0 * R2 * (1.0 - R4) / (d * d);
}

double one_minus_cos2Q(double R) {
  const double R4 = R * R * R * R;
  const double d = 1.0 + R4;
  return 8.0 * R4 / (d * d);
}

double dPhi(double R) {
  const double R4 = R * R * R * R;
  const double d = 1.0 + R4;
  return 8.0 * R * (1.0 - R4) / (d * d);
}

double dTheta(double R) {
  require_positive(R, "dTheta");
  const double R2 = R * R, R3 = R2 * R, R4 = R2 * R2, R7 = R4 * R3, R8 = R4 * R4;
  const double lnR = std::log(R);
  const double N = -1.0 + 8.0 * R4 * lnR + R8;
  const double Np = 32.0 * R3 * lnR + 8.0 * R3 + 8.0 * R7;
  const double D = 4.0 * R2 * (1.0 + R4);
  const double Dp = 8.0 * R + 24.0 * R4 * R;
  return (Np * D - N * Dp) / (D * D);
}

double dphi0(double R) {
  const double R4 = R * R * R * R;
  const double d = 1.0 + R4;
  return 2.0 * R * std::sqrt(R) * (5.0 - 3.0 * R4) / (d * d);
}

double dtheta0(double R) {
  require_positive(R, "dtheta0");
  const double R4 = R * R * R * R;
  const double lnR = std::log(R);
  const double sqR = std::sqrt(R);
  const double N = -1.0 + 8.0 * R4 * lnR + R4 * R4;
  const double Np = 32.0 * R * R * R * lnR + 8.0 * R * R * R + 8.0 * R4 * R * R * R;
  const double D = 16.0 * R * sqR * (1.0 + R4);
  const double Dp = 24.0 * sqR + 88.0 * R4 * sqR;
  return (Np * D - N * Dp) / (D * D);
}

double Q_over_R2(double R) {
  const double R4 = R * R * R * R;
  if (R4 < 1e-4) {
    // 2 atan(R^2)/R^2 = 2 (1 - R^4/3 + R^8/5 - ...)
    return 2.0 * (1.0 - R4 / 3.0 + R4 * R4 / 5.0 - R4 * R4 * R4 / 7.0);
  }
  return Q(R) / (R * R);
}

double Phi_over_R2(double R) { return 4.0 / (1.0 + R * R * R * R); }

double sin2Q_over_R2(double R) {
  const double R4 = R * R * R * R;
  const double d = 1.0 + R4;
  return 4.0 * (1.0 - R4) / (d * d);
}

double eval_profile(ProfileKind kind, double R) {
  if (!(R >= 0.0) || !std::isfinite(R))
    throw Error(ErrorKind::input, "eval_profile: R must be finite and nonnegative");
  switch (kind) {
    case ProfileKind::Q: return Q(R);
    case ProfileKind::Phi: return Phi(R);
    case ProfileKind::Theta: return Theta(R);
    case ProfileKind::phi0: return phi0(R);
    case ProfileKind::theta0: return theta0(R);
    case ProfileKind::cos2Q: return cos2Q(R);
    case ProfileKind::sin2Q: return sin2Q(R);
  }
  throw Error(ErrorKind::input, "eval_profile: unknown kind");
}

RadialFn apply_operator(LinearizedOperator op, const RadialFn& f) {
  const auto& g = *f.grid;
  const std::size_t n = g.size();
  if (n < 8) throw Error(ErrorKind::resolution, "apply_operator: grid too small");
  const double per_decade =
      static_cast<double>(n - 1) / std::log10(g.back() / g.front());
  if (per_decade < 5.0)
    throw Error(ErrorKind::resolution, "apply_operator: fewer than 5 nodes per decade");
  if (g.spacing != SpacingKind::log_uniform)
    throw Error(ErrorKind::input, "apply_operator: log-uniform grid required");
  const double h = std::log(g[1] / g[0]);

  // 6th-order centered stencils in x = log R on the interior (3 dropped per end).
  std::vector<double> out(n - 6);
  std::vector<double> nodes(n - 6);
  for (std::size_t i = 3; i + 3 < n; ++i) {
    const double R = g[i];
    const auto& v = f.values;
    const double d1 = (-v[i - 3] + 9.0 * v[i - 2] - 45.0 * v[i - 1] + 45.0 * v[i + 1] -
                       9.0 * v[i + 2] + v[i + 3]) /
                      (60.0 * h);
    const double d2 = (2.0 * v[i - 3] - 27.0 * v[i - 2] + 270.0 * v[i - 1] - 490.0 * v[i] +
                       270.0 * v[i + 1] - 27.0 * v[i + 2] + 2.0 * v[i + 3]) /
                      (180.0 * h * h);
    const double inv_R2 = 1.0 / (R * R);
    double val;
    if (op.form == LinearizedOperator::Form::L) {
      // d_RR + (1/R) d_R = e^{-2x} d_xx
      val = inv_R2 * d2 - 4.0 * cos2Q(R) * inv_R2 * v[i];
      if (op.sign == LinearizedOperator::Sign::spectral) val = -val;
    } else {
      // Ltilde (spectral): -d_RR + 15/(4R^2) - 32 R^2/(1+R^4)^2
      const double R4 = R * R * R * R;
      const double dd = 1.0 + R4;
      const double V = 15.0 / (4.0 * R * R) - 32.0 * R * R / (dd * dd);
      val = -inv_R2 * (d2 - d1) + V * v[i];
      if (op.sign == LinearizedOperator::Sign::elliptic) val = -val;
    }
    out[i - 3] = val;
    nodes[i - 3] = R;
  }
  auto sub = std::make_shared<RadialGrid>(RadialGrid::from_nodes(std::move(nodes)));
  RadialFn r;
  r.grid = sub;
  r.values = std::move(out);
  r.zero_order = std::max(0, f.zero_order - 2);
  r.infinity_decay = f.infinity_decay + 2.0;
  return r;
}

double wronskian(double R) {
  require_positive(R, "wronskian");
  const double u1 = 0.25 * Phi(R);
  const double du1 = 0.25 * dPhi(R);
  return R * (du1 * Theta(R) - u1 * dTheta(R));
}

IdentityReport compute_identities(double tol) {
  if (!(tol <= 1e-8)) throw Error(ErrorKind::input, "compute_identities: tol must be <= 1e-8");
  IdentityReport rep;
  auto i1 = integrate_halfline_result([](double R) { return Phi(R) * Phi(R) * R; }, tol);
  auto i2 = integrate_halfline_result(
      [](double R) { return 8.0 * one_minus_cos2Q(R) * Phi(R) * R; }, tol);
  rep.I1 = i1.value;
  rep.I2 = i2.value;
  rep.I1_error = i1.error;
  rep.I2_error = i2.error;
  rep.c_star = rep.I2 / rep.I1;
  rep.paper_I1 = 3.0 * kPi;
  rep.paper_I2 = 12.0 * kPi;
  rep.dev_paper_I1 = rep.I1 - rep.paper_I1;
  rep.dev_paper_I2 = rep.I2 - rep.paper_I2;
  return rep;
}

}  // namespace wmlab::bubble
