#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "wmlab/sampler.hpp"

namespace wmlab::modulation {

struct ModulationParams {
  double beta = 2.0;
  double t0 = 0.15;
  double c = 4.0;            // coefficient in the lambda1 law; 4 (paper) or c_star (computed)
  double picard_tol = 1e-12;
  int max_iter = 64;
  double t_min = 1e-9;       // lower end of the solve grid
  int density = 512;         // nodes per unit of log|log t|
  void validate() const;

  // three-term ansatz coefficients: zeta0 = -a t/L^b + b2 t/L^{2b} + d t/L^{2b+1}
  double ansatz_a() const { return 1.0 / std::sqrt(c); }
  double ansatz_b() const { return 1.0 / (2.0 * c); }
  double ansatz_d() const { return beta / (2.0 * c); }
};

// Scalar perturbation m(t) with the (p,l) seminorm table of the paper's
// norm family sup_t tau^p sum_j |(t d/dt)^j m|.
struct PerturbationM {
  std::function<double(double)> fn;  // null => m == 0
  double operator()(double t) const { return fn ? fn(t) : 0.0; }
  bool zero() const { return !fn; }
};

class ModulationSolution {
 public:
  const ModulationParams& params() const { return p_; }

  double zeta0(double t) const;       // explicit three-term ansatz
  double dzeta0_dt(double t) const;
  double w(double t) const;
  double zeta(double t) const { return zeta0(t) + w(t); }
  double nu(double t) const;
  double zeta_tilde(double t) const { return zeta(t) + nu(t); }
  double alpha(double t) const;
  double alpha_prime(double t) const { return 1.0 / zeta_tilde(t); }  // = lambda1'/lambda1
  double lambda1_pp_over(double t) const;  // lambda1''/lambda1 = 2 a'^2 - c (lambda2+m)^2
  double log_lambda1(double t) const { return alpha(t); }
  double log_lambda2(double t) const;
  double log_tau(double t) const { return alpha(t) - log_lambda2(t); }
  double tau(double t) const { return std::exp(log_tau(t)); }
  double log_tau1(double t) const;
  double tau2(double t) const;            // closed form
  double log_tau_exp(double t) const;     // 2 (beta+1)^{-1} L^{beta+1}
  double m_at(double t) const { return m_(t); }

  double w_envelope_C(double t_lo, double t_hi) const;  // sup |w| L^{2beta}/t
  double alpha_t0_offset() const { return alpha_t0_; }  // reported, not normalized
  int picard_iters_w() const { return iters_w_; }
  int picard_iters_nu() const { return iters_nu_; }
  const std::vector<double>& grid_t() const { return grid_t_; }

  // fixed-point defect of the w equation, by finite differences of the
  // sampled zeta against zeta' = c (lambda2 zeta)^2 - 1
  double zeta_ode_residual(double t) const;

  friend ModulationSolution solve_modulation(const ModulationParams&, PerturbationM m);

 private:
  ModulationParams p_;
  PerturbationM m_;
  HermiteSampler w_s_, nu_s_, alpha_s_;
  std::vector<double> grid_t_;
  double alpha_t0_ = 0.0;
  int iters_w_ = 0, iters_nu_ = 0;
};

ModulationSolution solve_modulation(const ModulationParams& p, PerturbationM m = {});

// residual of lambda1''/lambda1 - 2 (lambda1'/lambda1)^2 + c (lambda2+m)^2,
// with alpha'' obtained by finite differences of the alpha' sampler
double check_modulation_ode(const ModulationSolution& sol, double t);

// seminorm ||m||_{p,l} over [t_lo, t_hi]; (t d/dt)^j by log-t finite differences
double m_seminorm(const PerturbationM& m, const ModulationParams& mp, double p, int l,
                  double t_lo, double t_hi);

struct MFixedPointResult {
  PerturbationM m;
  std::vector<double> defect_per_iter;
  int iterations = 0;
};

// m + (16 lambda2)^{-1} sum m_k + (2 lambda2)^{-1} m^2 = 0 via the P_k iteration
MFixedPointResult m_fixed_point(const std::vector<std::function<double(double)>>& mks,
                                const ModulationParams& p, int iterations = 4);

}  // namespace wmlab::modulation
