#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "wmlab/errors.hpp"

namespace wmlab {

// Cubic Hermite sampler on a fixed increasing abscissa array (typically
// x = log t), with exact nodal derivatives dv/dx supplied by the builder.
class HermiteSampler {
 public:
  HermiteSampler() = default;
  HermiteSampler(std::vector<double> x, std::vector<double> v, std::vector<double> dvdx)
      : x_(std::move(x)), v_(std::move(v)), d_(std::move(dvdx)) {
    if (x_.size() < 2 || x_.size() != v_.size() || x_.size() != d_.size())
      throw Error(ErrorKind::input, "HermiteSampler: inconsistent arrays");
  }

  bool empty() const { return x_.empty(); }
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

  double eval(double x) const {
    std::size_t i = locate(x);
    const double w = x_[i + 1] - x_[i];
    const double s = (x - x_[i]) / w;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * v_[i] + h10 * w * d_[i] + h01 * v_[i + 1] + h11 * w * d_[i + 1];
  }

  double deriv(double x) const {
    std::size_t i = locate(x);
    const double w = x_[i + 1] - x_[i];
    const double s = (x - x_[i]) / w;
    const double g00 = 6 * s * (s - 1);
    const double g10 = (1 - s) * (1 - 3 * s);
    const double g01 = -g00;
    const double g11 = s * (3 * s - 2);
    return (g00 * v_[i] + g01 * v_[i + 1]) / w + g10 * d_[i] + g11 * d_[i + 1];
  }

  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& values() const { return v_; }

 private:
  std::size_t locate(double x) const {
    if (x <= x_.front()) return 0;
    if (x >= x_.back()) return x_.size() - 2;
    std::size_t lo = 0, hi = x_.size() - 1;
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      (x_[mid] <= x ? lo : hi) = mid;
    }
    return lo;
  }

  std::vector<double> x_, v_, d_;
};

}  // namespace wmlab
