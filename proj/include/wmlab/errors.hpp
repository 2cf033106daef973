#pragma once

#include <stdexcept>
#include <string>

namespace wmlab {

// Error kinds. The CLI maps these onto its documented exit codes:
// config -> 3, instability -> 4, resolution -> 5, everything else -> 2.
enum class ErrorKind {
  input,
  domain,
  singularity,
  config,
  quadrature_failure,
  fixed_point_failure,
  orthogonality_violation,
  divergence,
  instability,
  resolution,
  regime,
  fit_degeneracy,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Quadrature failure keeps the best estimate so callers can decide
// whether the result is still usable for diagnostics.
class QuadratureFailure : public Error {
 public:
  QuadratureFailure(const std::string& msg, double best, double err_est)
      : Error(ErrorKind::quadrature_failure, msg), best_estimate(best), error_estimate(err_est) {}
  double best_estimate;
  double error_estimate;
};

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::config: return 3;
    case ErrorKind::instability: return 4;
    case ErrorKind::resolution: return 5;
    default: return 2;
  }
}

}  // namespace wmlab
