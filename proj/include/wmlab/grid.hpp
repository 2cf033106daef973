#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "wmlab/errors.hpp"

namespace wmlab {

enum class SpacingKind { log_uniform, graded };

// Strictly increasing positive radial nodes. Log-uniform is the workhorse;
// "graded" takes caller-provided nodes (validated).
struct RadialGrid {
  std::vector<double> nodes;
  SpacingKind spacing = SpacingKind::log_uniform;

  std::size_t size() const { return nodes.size(); }
  double front() const { return nodes.front(); }
  double back() const { return nodes.back(); }
  double operator[](std::size_t i) const { return nodes[i]; }

  // Uniform spacing in x = log r (exact endpoints).
  static RadialGrid make(double r_min, double r_max, std::size_t n,
                         SpacingKind kind = SpacingKind::log_uniform);
  static RadialGrid make_per_decade(double r_min, double r_max, int nodes_per_decade);
  static RadialGrid from_nodes(std::vector<double> nodes);

  // Index of the last node <= r (nodes assumed log-uniform for the fast path).
  std::size_t locate(double r) const;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Grid samples of a radial profile together with the local behaviour needed
// to evaluate it safely at the ends: vanishing order at R=0 and the power-law
// decay exponent at infinity.
struct RadialFn {
  GridPtr grid;
  std::vector<double> values;
  int zero_order = 0;
  double infinity_decay = 0.0;

  RadialFn() = default;
  RadialFn(GridPtr g, std::vector<double> v, int zo = 0, double dec = 0.0);

  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }

  // Cubic interpolation in log R inside the grid; power-law extension
  // via zero_order / infinity_decay outside.
  double eval(double R) const;
  double sup_abs() const;
  void validate() const;
};

}  // namespace wmlab
