#pragma once

#include <cmath>
#include <memory>

#include "wmlab/grid.hpp"

namespace wmlab::outer {

struct OuterParams {
  double beta = 2.0;   // Theorem requires beta > 3/2
  double t0 = 0.15;    // in (0, 1)
  void validate() const;
};

enum class Truncation { q_only, v10, v10_v11 };

// L = |log t| for t in (0,1)
inline double absl(double t) { return -std::log(t); }

double log_lambda2(double t, const OuterParams& p);  // beta log L - log t
double lambda2(double t, const OuterParams& p);
double dlog_lambda2(double t, const OuterParams& p);   // lambda2'/lambda2
double ddlambda2_over(double t, const OuterParams& p); // lambda2''/lambda2

// First correction v10 = (t lambda2)^{-2} R^4/(1+R^4), R = lambda2 r.
double v10(double t, double r, const OuterParams& p);

// t^2 * e0~ = c1(L) R Phi'(R) + c2(L) Phi(R); the source for v11.
double e0_tilde_scaled(double t, double R, const OuterParams& p);
double e0c1(double L, double beta);  // 1 - (1+beta/L)^2
double e0c2(double L, double beta);  // -(beta/L - beta/L^2)

// Truncated outer profile Q~2 = Q(lambda2 r) + v10 + v11 with the v11
// variation-of-constants integrals cached as two t-independent responses
// Y1 (source R Phi') and Y2 (source Phi).
class OuterProfile {
 public:
  OuterProfile(OuterParams params, Truncation trunc, double quad_tol = 1e-10);

  double value(double t, double r) const;        // Q~2(t, r)
  double correction(double t, double r) const;   // v = Q~2 - Q(lambda2 r)
  double v11(double t, double r) const;
  double v11_of_R(double t, double R) const;     // R = lambda2(t) r
  double dtt(double t, double r) const;          // d^2/dt^2 Q~2 (Q-part analytic, v-part FD)
  double potential(double t, double r) const;    // 4 cos(2 Q~2)/r^2

  const OuterParams& params() const { return params_; }
  Truncation truncation() const { return trunc_; }

  // Green responses for the v11 cache (exposed for the round-trip oracle)
  double Y(int which, double R) const;
  double Y_large_R_coeff(int which) const;  // fitted R^2 coefficient at the far end

 private:
  OuterParams params_;
  Truncation trunc_;
  GridPtr ygrid_;
  std::vector<double> y1_, y1p_, y2_, y2p_;  // values and d/dx (x = log R)
  double hermite(const std::vector<double>& v, const std::vector<double>& vp, double R,
                 int zero_order) const;
};

// Analytic S v10 = beta L^{-2beta-1} (2 g - R g'), g = R^4/(1+R^4); test oracle.
double Sv10_analytic(double t, double r, const OuterParams& p);

}  // namespace wmlab::outer
