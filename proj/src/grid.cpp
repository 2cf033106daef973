#include "wmlab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace wmlab {

RadialGrid RadialGrid::make(double r_min, double r_max, std::size_t n, SpacingKind kind) {
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw Error(ErrorKind::input, "make_grid: need 0 < r_min < r_max");
  if (n < 16) throw Error(ErrorKind::input, "make_grid: need n >= 16");
  if (kind != SpacingKind::log_uniform)
    throw Error(ErrorKind::input, "make_grid: graded grids are built via from_nodes");
  RadialGrid g;
  g.spacing = SpacingKind::log_uniform;
  g.nodes.resize(n);
  const double x0 = std::log(r_min), x1 = std::log(r_max);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.nodes[i] = std::exp(x);
  }
  g.nodes.front() = r_min;
  g.nodes.back() = r_max;
  return g;
}

RadialGrid RadialGrid::make_per_decade(double r_min, double r_max, int nodes_per_decade) {
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw Error(ErrorKind::input, "make_grid: need 0 < r_min < r_max");
  const double decades = std::log10(r_max / r_min);
  auto n = static_cast<std::size_t>(std::ceil(decades * nodes_per_decade)) + 1;
  n = std::max<std::size_t>(n, 16);
  return make(r_min, r_max, n);
}

RadialGrid RadialGrid::from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 16) throw Error(ErrorKind::input, "grid: need at least 16 nodes");
  if (!(nodes.front() > 0.0)) throw Error(ErrorKind::input, "grid: first node must be positive");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1]))
      throw Error(ErrorKind::input, "grid: nodes must be strictly increasing");
  RadialGrid g;
  g.nodes = std::move(nodes);
  g.spacing = SpacingKind::graded;
  return g;
}

std::size_t RadialGrid::locate(double r) const {
  auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
  if (it == nodes.begin()) return 0;
  return static_cast<std::size_t>(it - nodes.begin()) - 1;
}

RadialFn::RadialFn(GridPtr g, std::vector<double> v, int zo, double dec)
    : grid(std::move(g)), values(std::move(v)), zero_order(zo), infinity_decay(dec) {
  validate();
}

void RadialFn::validate() const {
  if (!grid || grid->size() != values.size())
    throw Error(ErrorKind::input, "RadialFn: grid/values size mismatch");
  for (double v : values)
    if (!std::isfinite(v)) throw Error(ErrorKind::input, "RadialFn: non-finite value");
  // declared vanishing order must be consistent with the first two samples
  if (zero_order != 0 && grid->front() < 0.05 && values[0] != 0.0 && values[1] != 0.0) {
    const double a = values[0] / std::pow(grid->nodes[0], zero_order);
    const double b = values[1] / std::pow(grid->nodes[1], zero_order);
    const double q = a / b;
    if (!(q > 0.1 && q < 10.0))
      throw Error(ErrorKind::input, "RadialFn: declared zero_order inconsistent with samples");
  }
}

double RadialFn::eval(double R) const {
  const auto& rn = grid->nodes;
  const std::size_t n = rn.size();
  if (R <= rn.front()) {
    // power-law extension with the declared vanishing order
    return values.front() * std::pow(R / rn.front(), zero_order);
  }
  if (R >= rn.back()) {
    return values.back() * std::pow(R / rn.back(), -infinity_decay);
  }
  std::size_t i = grid->locate(R);
  if (i >= n - 1) i = n - 2;
  // 4-point Lagrange in x = log R (3-point at the ends)
  const double x = std::log(R);
  std::size_t j0 = (i == 0) ? 0 : i - 1;
  std::size_t j3 = std::min(j0 + 3, n - 1);
  j0 = j3 - 3 <= j3 ? (j3 >= 3 ? j3 - 3 : 0) : 0;
  double num = 0.0;
  for (std::size_t a = j0; a <= j3; ++a) {
    double term = values[a];
    const double xa = std::log(rn[a]);
    for (std::size_t b = j0; b <= j3; ++b) {
      if (a == b) continue;
      const double xb = std::log(rn[b]);
      term *= (x - xb) / (xa - xb);
    }
    num += term;
  }
  return num;
}

double RadialFn::sup_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace wmlab
