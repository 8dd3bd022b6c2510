#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lab/cayley.hpp"

namespace lab {

struct PoincareCell {
  int center = 0;
  int radius = 0;
  double value = 0.0;
  bool infinite = false;
};

struct PoincareEstimate {
  std::vector<PoincareCell> cells;
  double p_hat = 0.0;
  int argmax_center = 0;
  int argmax_radius = 0;
  bool any_infinite = false;
};

// Exact local constant sup_f int_{B(x,R)} |f - mean_R f|^2 /
// (R^2 int_{B(x,3R)} |grad f|^2), solved as a generalized eigenproblem on the
// orthogonal complement of the gradient form's null space.  Gradient terms
// keep only edges with both endpoints in B(x,3R).  Returns an infinite cell
// when the null space contains a direction with positive numerator energy
// (disconnected B(x,3R)).
PoincareCell local_poincare(const Graph& x, int center, int radius);

// Max over the grid; the omp version parallelizes over cells with a
// deterministic max-reduction and must match the serial reference.
PoincareEstimate global_poincare(const Graph& x, const std::vector<int>& radii,
                                 const std::vector<int>& centers);
PoincareEstimate global_poincare_serial(const Graph& x, const std::vector<int>& radii,
                                        const std::vector<int>& centers);

std::vector<int> default_radius_grid(const Graph& x);

struct KscCheck {
  double p_hat = 0.0;
  double c_real = 0.0;
  double bound = 0.0;   // K_ksc * c_real^3
  double ratio = 0.0;   // p_hat / c_real^3
  bool pass = false;
};

// Poincare constant against the Cayley-graph cube-of-doubling bound.
KscCheck ksc_bound_check(const Graph& x, double c_real, double k_ksc = 16.0);

}  // namespace lab
