#pragma once

#include "wmlab/grid.hpp"

namespace wmlab::bubble {

// Closed forms around the k=2 bubble Q(R) = 2 arctan(R^2).
double Q(double R);
double Phi(double R);       // R Q'(R) = 4R^2/(1+R^4), the scaling zero mode
double Theta(double R);     // (-1 + 8R^4 log R + R^8) / (4R^2 (1+R^4)), singular at 0
double phi0(double R);      // sqrt(R) Phi
double theta0(double R);    // (-1 + 8R^4 log R + R^8) / (16 R^{3/2} (1+R^4)), singular at 0
double cos2Q(double R);     // rational form 1 - 8R^4/(1+R^4)^2
double sin2Q(double R);     // 4R^2 (1-R^4)/(1+R^4)^2
double one_minus_cos2Q(double R);  // 8R^4/(1+R^4)^2

// derivatives of the closed forms
double dPhi(double R);
double dTheta(double R);
double dphi0(double R);
double dtheta0(double R);

// series-guarded small-R quotients
double Q_over_R2(double R);        // -> 2 as R -> 0
double Phi_over_R2(double R);      // 4/(1+R^4)
double sin2Q_over_R2(double R);    // 4(1-R^4)/(1+R^4)^2

enum class ProfileKind { Q, Phi, Theta, phi0, theta0, cos2Q, sin2Q };
double eval_profile(ProfileKind kind, double R);

struct LinearizedOperator {
  enum class Form { L, Ltilde };
  enum class Sign { elliptic, spectral };  // elliptic: +d^2; spectral: -d^2
  Form form = Form::L;
  Sign sign = Sign::elliptic;
};

// Finite-difference application on the interior of a log-uniform grid
// (6th-order stencils in x = log R; three nodes dropped at each end).
RadialFn apply_operator(LinearizedOperator op, const RadialFn& f);

// R [ (Phi/4)'(R) Theta(R) - (Phi/4)(R) Theta'(R) ]; identically -1.
double wronskian(double R);

struct IdentityReport {
  double I1 = 0.0;       // int Phi^2 R dR
  double I2 = 0.0;       // 8 int [1 - cos 2Q] Phi R dR
  double c_star = 0.0;   // I2 / I1
  double paper_I1 = 0.0; // 3 pi, stored verbatim
  double paper_I2 = 0.0; // 12 pi, stored verbatim
  double I1_error = 0.0;
  double I2_error = 0.0;
  double dev_paper_I1 = 0.0;
  double dev_paper_I2 = 0.0;
};
IdentityReport compute_identities(double tol);

}  // namespace wmlab::bubble
