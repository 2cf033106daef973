#pragma once

#include <functional>

#include "wmlab/errors.hpp"

namespace wmlab {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;   // internal error estimate
  int panels = 0;
  bool converged = true;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod 7/15 on [a, b]. Deterministic: fixed panel budget,
// bisection of the worst panel, final sum in left-endpoint order.
QuadResult integrate_interval(const Integrand& f, double a, double b, double rel_tol,
                              double abs_floor = 0.0, int max_panels = 4000);

// Half-line integral of f(R), R in (0, inf), via the compactifying map
// R = x/(1-x). Integrands are expected to decay at least like R^-3 (or the
// caller supplies tol-consistent decay). Throws QuadratureFailure carrying
// the best estimate when the panel budget is exhausted.
double integrate_halfline(const Integrand& f_of_R, double rel_tol);
QuadResult integrate_halfline_result(const Integrand& f_of_R, double rel_tol);

// Second-order centered approximation of (Sf)(t, r), S = t dt + r dr,
// with relative step h on each axis (4-point stencil).
double apply_scaling_field(const std::function<double(double, double)>& f, double t, double r,
                           double h);

}  // namespace wmlab
