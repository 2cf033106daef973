#include "wmlab/modulation.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

#include "wmlab/quadrature.hpp"

namespace wmlab::modulation {

namespace {

constexpr double kPiCell = 3.14159265358979323846;

double absl(double t) { return -std::log(t); }

// Degree-5 polynomial fit of the rate on one cell, kept as the exact
// antiderivative Phi(u) = \int_u^1 p(v) dv * (b-a), so the exponential weight
// exp(-(Gamma(t') - Gamma(b))) is closed-form inside the cell.
struct CellExp {
  double a = 0.0, dt = 0.0;
  double P[7] = {0, 0, 0, 0, 0, 0, 0};  // Phi(u) = sum P[k] u^k, Phi(1) = 0
  double t_of(double u) const { return a + dt * u; }
  double phi(double u) const {
    double s = 0.0;
    for (int k = 6; k >= 0; --k) s = s * u + P[k];
    return s;
  }
  double total() const { return phi(0.0); }  // Gamma(a) - Gamma(b)
};

CellExp fit_cell(const Integrand& rate, double a, double b) {
  // interpolate rate(t(u)) at 6 Chebyshev nodes on [0,1]
  constexpr int N = 6;
  double u[N], f[N];
  for (int i = 0; i < N; ++i) {
    u[i] = 0.5 - 0.5 * std::cos(kPiCell * (2.0 * i + 1.0) / (2.0 * N));
    f[i] = rate(a + (b - a) * u[i]);
  }
  // solve the Vandermonde system for monomial coefficients c[0..5]
  double M[N][N + 1];
  for (int i = 0; i < N; ++i) {
    double p = 1.0;
    for (int j = 0; j < N; ++j) {
      M[i][j] = p;
      p *= u[i];
    }
    M[i][N] = f[i];
  }
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int r = col + 1; r < N; ++r)
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    for (int j = 0; j <= N; ++j) std::swap(M[col][j], M[piv][j]);
    for (int r = 0; r < N; ++r) {
      if (r == col) continue;
      const double q = M[r][col] / M[col][col];
      for (int j = col; j <= N; ++j) M[r][j] -= q * M[col][j];
    }
  }
  double c[N];
  for (int i = 0; i < N; ++i) c[i] = M[i][N] / M[i][i];
  CellExp ce;
  ce.a = a;
  ce.dt = b - a;
  // \int_u^1 p = sum_k c[k]/(k+1) (1 - u^{k+1})
  double c0 = 0.0;
  for (int k = 0; k < N; ++k) {
    ce.P[k + 1] = -(b - a) * c[k] / (k + 1.0);
    c0 += (b - a) * c[k] / (k + 1.0);
  }
  ce.P[0] = c0;
  return ce;
}

// adaptive GK on exp(-phi(u)) source(t(u)) over [u0, u1] of a cell
double weighted_cell(const CellExp& ce, const Integrand& source, double u0, double u1,
                     double abs_tol, int depth) {
  static const double xgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                                0.741531185599394, 0.586087235467691, 0.405845151377397,
                                0.207784955007898, 0.0};
  static const double wgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                                0.140653259715526, 0.169004726639267, 0.190350578064785,
                                0.204432940075298, 0.209482141084728};
  static const double wg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                               0.417959183673469};
  const double c = 0.5 * (u0 + u1), h = 0.5 * (u1 - u0);
  auto fval = [&](double u) { return std::exp(-ce.phi(u)) * source(ce.t_of(u)); };
  const double fc = fval(c);
  double resk = wgk[7] * fc, resg = wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * xgk[i];
    const double s = fval(c - dx) + fval(c + dx);
    resk += wgk[i] * s;
    if (i % 2 == 1) resg += wg[i / 2] * s;
  }
  const double K = resk * h * ce.dt, G = resg * h * ce.dt;
  if (std::abs(K - G) <= std::max(abs_tol, 1e-14 * std::abs(K)) || depth >= 30) return K;
  return weighted_cell(ce, source, u0, c, 0.5 * abs_tol, depth + 1) +
         weighted_cell(ce, source, c, u1, 0.5 * abs_tol, depth + 1);
}

// March y' = -rate y + source upward over the node times, seeded with the
// stationary value at the smallest node (all homogeneous memory has decayed
// over the tail below the grid).
std::vector<double> exp_weighted_march(const std::vector<double>& ts, const Integrand& rate,
                                       const Integrand& source, double tol) {
  const std::size_t n = ts.size();
  std::vector<double> y(n);
  y[0] = source(ts[0]) / rate(ts[0]);
  for (std::size_t i = 1; i < n; ++i) {
    CellExp ce = fit_cell(rate, ts[i - 1], ts[i]);
    const double decay = std::exp(-ce.total());
    const double scale =
        std::max({std::abs(y[i - 1]), std::abs(source(ts[i])) / rate(ts[i]), 1e-290});
    y[i] = y[i - 1] * decay + weighted_cell(ce, source, 0.0, 1.0, tol * scale, 0);
  }
  return y;
}

}  // namespace

void ModulationParams::validate() const {
  if (!(beta > 1.5)) throw Error(ErrorKind::config, "modulation: beta must exceed 3/2");
  if (!(t0 > 0.0 && t0 < 1.0)) throw Error(ErrorKind::config, "modulation: t0 in (0,1)");
  if (!(c > 0.0)) throw Error(ErrorKind::config, "modulation: c must be positive");
  if (!(picard_tol > 0.0 && picard_tol <= 1e-10 * t0))
    throw Error(ErrorKind::config, "modulation: picard_tol must be <= 1e-10 t0");
  if (!(t_min > 0.0 && t_min < t0)) throw Error(ErrorKind::config, "modulation: bad t_min");
  if (density < 32) throw Error(ErrorKind::config, "modulation: density < 32");
}

double ModulationSolution::zeta0(double t) const {
  const double L = absl(t);
  const double Lb = std::pow(L, p_.beta);
  const double L2b = Lb * Lb;
  return -p_.ansatz_a() * t / Lb + p_.ansatz_b() * t / L2b + p_.ansatz_d() * t / (L2b * L);
}

double ModulationSolution::dzeta0_dt(double t) const {
  // d/dt [t L^{-k}] = L^{-k} + k L^{-k-1}
  const double L = absl(t);
  auto term = [&](double coeff, double k) {
    return coeff * (std::pow(L, -k) + k * std::pow(L, -k - 1.0));
  };
  const double b = p_.beta;
  return term(-p_.ansatz_a(), b) + term(p_.ansatz_b(), 2 * b) + term(p_.ansatz_d(), 2 * b + 1);
}

double ModulationSolution::w(double t) const { return w_s_.eval(std::log(t)); }

double ModulationSolution::nu(double t) const {
  if (nu_s_.empty()) return 0.0;
  return nu_s_.eval(std::log(t));
}

double ModulationSolution::alpha(double t) const { return alpha_s_.eval(std::log(t)); }

double ModulationSolution::log_lambda2(double t) const {
  const double L = absl(t);
  return p_.beta * std::log(L) - std::log(t);
}

double ModulationSolution::lambda1_pp_over(double t) const {
  const double ap = alpha_prime(t);
  const double lm = std::exp(log_lambda2(t)) + m_(t);
  return 2.0 * ap * ap - p_.c * lm * lm;
}

double ModulationSolution::log_tau1(double t) const {
  // tau1 = int_t^{t0} lambda1 ds, Laplace-stable in log space
  const double a0 = alpha(t);
  const auto& ts = grid_t_;
  auto it = std::lower_bound(ts.begin(), ts.end(), t);
  std::size_t i0 = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - ts.begin() - 1));
  double J = 0.0;
  double lo = t;
  for (std::size_t i = i0 + 1; i < ts.size(); ++i) {
    const double hi = ts[i];
    if (hi <= lo) continue;
    const double piece =
        integrate_interval([&](double s) { return std::exp(alpha(s) - a0); }, lo, hi, 1e-12,
                           1e-300)
            .value;
    J += piece;
    lo = hi;
    if (std::exp(alpha(hi) - a0) < 1e-26) break;
  }
  return a0 + std::log(J);
}

double ModulationSolution::tau2(double t) const {
  const double b1 = p_.beta + 1.0;
  return (std::pow(absl(t), b1) - std::pow(absl(p_.t0), b1)) / b1;
}

double ModulationSolution::log_tau_exp(double t) const {
  return 2.0 * std::pow(absl(t), p_.beta + 1.0) / (p_.beta + 1.0);
}

double ModulationSolution::w_envelope_C(double t_lo, double t_hi) const {
  double C = 0.0;
  for (double t : grid_t_) {
    if (t < t_lo || t > t_hi) continue;
    C = std::max(C, std::abs(w(t)) * std::pow(absl(t), 2.0 * p_.beta) / t);
  }
  return C;
}

double ModulationSolution::zeta_ode_residual(double t) const {
  // 5-point centered FD of the sampled zeta against zeta' = c (lambda2 zeta)^2 - 1
  const double d = 0.02 * t;
  auto z = [&](double tt) { return zeta0(tt) + w(tt); };
  const double zp = (-z(t + 2 * d) + 8.0 * z(t + d) - 8.0 * z(t - d) + z(t - 2 * d)) / (12.0 * d);
  const double lz = std::exp(log_lambda2(t)) * z(t);
  return zp - (p_.c * lz * lz - 1.0);
}

ModulationSolution solve_modulation(const ModulationParams& p, PerturbationM m) {
  p.validate();
  ModulationSolution sol;
  sol.p_ = p;
  sol.m_ = m;

  // grid uniform in s = log|log t|
  const double s_lo = std::log(absl(p.t0));
  const double s_hi = std::log(absl(p.t_min));
  const auto n = static_cast<std::size_t>(std::ceil((s_hi - s_lo) * p.density)) + 1;
  std::vector<double> ts(n), xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = s_hi + (s_lo - s_hi) * static_cast<double>(i) / static_cast<double>(n - 1);
    ts[i] = std::exp(-std::exp(s));
    xs[i] = std::log(ts[i]);
  }
  ts.back() = p.t0;
  xs.back() = std::log(p.t0);
  sol.grid_t_ = ts;

  const double beta = p.beta, c = p.c, sc = std::sqrt(c);
  const double b2 = p.ansatz_b(), dd = p.ansatz_d();
  auto lambda2 = [&](double t) { return std::pow(absl(t), beta) / t; };

  // ---- w fixed point ----
  auto F0 = [&](double t) {
    const double L = absl(t);
    const double u = b2 * std::pow(L, -beta) + dd * std::pow(L, -beta - 1.0);
    return c * u * u - b2 * (std::pow(L, -2 * beta) + 2 * beta * std::pow(L, -2 * beta - 1.0)) -
           dd * (std::pow(L, -2 * beta - 1.0) + (2 * beta + 1) * std::pow(L, -2 * beta - 2.0));
  };
  auto rate_w = [&](double t) {
    const double L = absl(t);
    const double u = b2 * std::pow(L, -beta) + dd * std::pow(L, -beta - 1.0);
    return 2.0 * sc * lambda2(t) * (1.0 - sc * u);
  };

  std::vector<double> w(n, 0.0);
  HermiteSampler w_prev;  // empty => zero
  double last_diff = std::numeric_limits<double>::infinity();
  int stall = 0;
  for (int it = 0; it < p.max_iter; ++it) {
    HermiteSampler wp = w_prev;
    auto src = [&](double t) {
      const double wv = wp.empty() ? 0.0 : wp.eval(std::log(t));
      const double l2 = lambda2(t);
      return F0(t) + c * l2 * l2 * wv * wv;
    };
    std::vector<double> w_new = exp_weighted_march(ts, rate_w, src, 1e-3 * p.picard_tol);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(w_new[i] - w[i]));
    w = std::move(w_new);
    std::vector<double> dv(n);
    for (std::size_t i = 0; i < n; ++i)
      dv[i] = ts[i] * (-rate_w(ts[i]) * w[i] + src(ts[i]));  // dw/dx at the new iterate
    w_prev = HermiteSampler(xs, w, dv);
    sol.iters_w_ = it + 1;
    if (diff < p.picard_tol) break;
    if (diff >= last_diff) {
      if (++stall >= 5)
        throw Error(ErrorKind::fixed_point_failure, "solve_w: iteration stopped contracting");
    } else {
      stall = 0;
    }
    last_diff = diff;
    if (it + 1 == p.max_iter)
      throw Error(ErrorKind::fixed_point_failure, "solve_w: no convergence in max_iter");
  }
  sol.w_s_ = w_prev;

  auto zeta = [&](double t) { return sol.zeta0(t) + sol.w_s_.eval(std::log(t)); };

  // ---- nu fixed point (exact zero when m == 0) ----
  if (!m.zero()) {
    for (double t : ts) {
      const double bound = std::exp(-0.5 * sol.log_tau_exp(t));
      if (std::abs(m(t)) > bound * (1.0 + 1e-12) + 1e-300)
        throw Error(ErrorKind::input, "solve_nu: |m| exceeds the tau^{-1/2} envelope");
    }
    auto rate_nu = [&](double t) {
      const double lm = lambda2(t) + m(t);
      return -2.0 * c * zeta(t) * lm * lm;
    };
    std::vector<double> nu(n, 0.0);
    HermiteSampler nu_prev;
    last_diff = std::numeric_limits<double>::infinity();
    stall = 0;
    for (int it = 0; it < p.max_iter; ++it) {
      HermiteSampler np = nu_prev;
      auto src = [&](double t) {
        const double nv = np.empty() ? 0.0 : np.eval(std::log(t));
        const double l2 = lambda2(t), mv = m(t), z = zeta(t);
        return c * (mv * mv + 2.0 * l2 * mv) * z * z + c * (l2 + mv) * (l2 + mv) * nv * nv;
      };
      std::vector<double> nu_new = exp_weighted_march(ts, rate_nu, src, 1e-3 * p.picard_tol);
      double diff = 0.0;
      for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(nu_new[i] - nu[i]));
      nu = std::move(nu_new);
      std::vector<double> dv(n);
      for (std::size_t i = 0; i < n; ++i)
        dv[i] = ts[i] * (-rate_nu(ts[i]) * nu[i] + src(ts[i]));
      nu_prev = HermiteSampler(xs, nu, dv);
      sol.iters_nu_ = it + 1;
      if (diff < p.picard_tol) break;
      if (diff >= last_diff) {
        if (++stall >= 5)
          throw Error(ErrorKind::fixed_point_failure, "solve_nu: iteration stopped contracting");
      } else {
        stall = 0;
      }
      last_diff = diff;
      if (it + 1 == p.max_iter)
        throw Error(ErrorKind::fixed_point_failure, "solve_nu: no convergence in max_iter");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double bound = std::exp(-0.5 * sol.log_tau_exp(ts[i]));
      if (std::abs(nu[i]) > bound * (1.0 + 1e-9) + 1e-300)
        throw Error(ErrorKind::fixed_point_failure, "solve_nu: envelope violated");
    }
    sol.nu_s_ = nu_prev;
  }

  // ---- alpha ----
  auto nu_at = [&](double t) { return sol.nu_s_.empty() ? 0.0 : sol.nu_s_.eval(std::log(t)); };
  auto zt = [&](double t) {
    const double z = zeta(t) + nu_at(t);
    if (!(z < 0.0))
      throw Error(ErrorKind::singularity, "alpha: zeta + nu changes sign on the grid");
    return z;
  };
  // A2(t) = int_t^{t0} zeta^{-1}; A1(t) = int_{tmin}^{t} [(zeta+nu)^{-1} - zeta^{-1}]
  std::vector<double> A2(n, 0.0), A1(n, 0.0);
  for (std::size_t i = n - 1; i-- > 0;) {
    A2[i] = A2[i + 1] +
            integrate_interval([&](double s) { return 1.0 / zeta(s); }, ts[i], ts[i + 1], 1e-13,
                               1e-300)
                .value;
  }
  for (std::size_t i = 1; i < n; ++i) {
    A1[i] = A1[i - 1] +
            integrate_interval([&](double s) { return 1.0 / zt(s) - 1.0 / zeta(s); }, ts[i - 1],
                               ts[i], 1e-13, 1e-300)
                .value;
  }
  // tail below t_min is < |nu|/zeta^2 * t_min which underflows; ignored
  std::vector<double> av(n), ad(n);
  for (std::size_t i = 0; i < n; ++i) {
    av[i] = A1[i] - A2[i];
    ad[i] = ts[i] / zt(ts[i]);  // d alpha / d log t
  }
  sol.alpha_s_ = HermiteSampler(xs, av, ad);
  sol.alpha_t0_ = A1.back();
  return sol;
}

double check_modulation_ode(const ModulationSolution& sol, double t) {
  const double d = 1e-3 * t;
  auto ap = [&](double tt) { return sol.alpha_prime(tt); };
  const double app =
      (-ap(t + 2 * d) + 8.0 * ap(t + d) - 8.0 * ap(t - d) + ap(t - 2 * d)) / (12.0 * d);
  const double a1 = ap(t);
  const double lm = std::exp(sol.log_lambda2(t)) + sol.m_at(t);
  return app - a1 * a1 + sol.params().c * lm * lm;
}

double m_seminorm(const PerturbationM& m, const ModulationParams& mp, double p, int l,
                  double t_lo, double t_hi) {
  if (l > 2) throw Error(ErrorKind::input, "m_seminorm: l <= 2 supported");
  const int samples = 200;
  const double h = 0.01;
  double sup_log = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double x = std::log(t_lo) + (std::log(t_hi) - std::log(t_lo)) * i / samples;
    const double t = std::exp(x);
    double sum = std::abs(m(t));
    if (l >= 1) sum += std::abs((m(std::exp(x + h)) - m(std::exp(x - h))) / (2 * h));
    if (l >= 2)
      sum += std::abs((m(std::exp(x + h)) - 2 * m(t) + m(std::exp(x - h))) / (h * h));
    if (sum <= 0.0) continue;
    const double lt = p * 2.0 * std::pow(-x, mp.beta + 1.0) / (mp.beta + 1.0) + std::log(sum);
    sup_log = std::max(sup_log, lt);
  }
  return std::exp(std::min(sup_log, 700.0));
}

MFixedPointResult m_fixed_point(const std::vector<std::function<double(double)>>& mks,
                                const ModulationParams& p, int iterations) {
  p.validate();
  const double s_lo = std::log(absl(p.t0));
  const double s_hi = std::log(absl(p.t_min));
  const auto n = static_cast<std::size_t>(std::ceil((s_hi - s_lo) * p.density)) + 1;
  std::vector<double> ts(n), xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = s_hi + (s_lo - s_hi) * static_cast<double>(i) / static_cast<double>(n - 1);
    ts[i] = std::exp(-std::exp(s));
    xs[i] = std::log(ts[i]);
  }
  ts.back() = p.t0;
  xs.back() = std::log(p.t0);

  auto lambda2 = [&](double t) { return std::pow(absl(t), p.beta) / t; };
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (const auto& mk : mks) s += mk(ts[i]);
    d[i] = -s / (16.0 * lambda2(ts[i]));
  }
  auto P = [&](const std::vector<double>& m) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = -m[i] * m[i] / (2.0 * lambda2(ts[i]));
    return out;
  };

  MFixedPointResult res;
  std::vector<double> Pk = P(d);  // P_1(d)
  std::vector<double> mk(n);
  for (int k = 0; k < iterations; ++k) {
    for (std::size_t i = 0; i < n; ++i) mk[i] = d[i] + Pk[i];
    // envelope guard
    for (std::size_t i = 0; i < n; ++i) {
      const double log_bound = -std::pow(absl(ts[i]), p.beta + 1.0) / (p.beta + 1.0);
      if (std::abs(mk[i]) > std::exp(std::max(log_bound, -700.0)) + 1e-300)
        throw Error(ErrorKind::divergence, "m_fixed_point: iterate left the envelope");
    }
    std::vector<double> Pm = P(mk);
    double defect = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      defect = std::max(defect, std::abs(mk[i] - d[i] - Pm[i]));
    res.defect_per_iter.push_back(defect);
    res.iterations = k + 1;
    // P_{k+1}(d) = P(d + P_k(d)) = P(m_k)
    Pk = std::move(Pm);
  }
  std::vector<double> dv(n);
  for (std::size_t i = 0; i < n; ++i) {
    // nodal d/dx by centered differences for the sampler
    const std::size_t a = i == 0 ? 0 : i - 1;
    const std::size_t b = i + 1 >= n ? n - 1 : i + 1;
    dv[i] = (mk[b] - mk[a]) / (xs[b] - xs[a]);
  }
  auto sampler = std::make_shared<HermiteSampler>(xs, mk, dv);
  res.m.fn = [sampler](double t) { return sampler->eval(std::log(t)); };
  return res;
}

}  // namespace wmlab::modulation
