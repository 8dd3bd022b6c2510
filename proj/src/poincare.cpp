#include "lab/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lab {

PoincareCell local_poincare(const Graph& x, int center, int radius) {
  if (radius < 1) throw std::invalid_argument("local_poincare: R >= 1");
  PoincareCell cell;
  cell.center = center;
  cell.radius = radius;

  const uint16_t* row = x.dist_row(center);
  std::vector<int> b3;
  std::vector<int> local_index(x.n, -1);
  for (int v = 0; v < x.n; ++v) {
    if (row[v] <= 3 * radius) {
      local_index[v] = static_cast<int>(b3.size());
      b3.push_back(v);
    }
  }
  const int m = static_cast<int>(b3.size());
  int inner_count = 0;
  for (int v : b3)
    if (row[v] <= radius) ++inner_count;

  // Numerator form: centered mass on B(x,R).
  Eigen::MatrixXd num = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    if (row[b3[i]] > radius) continue;
    for (int j = 0; j < m; ++j) {
      if (row[b3[j]] > radius) continue;
      num(i, j) = (i == j ? 1.0 : 0.0) - 1.0 / inner_count;
    }
  }
  // Denominator form: R^2 times the Dirichlet form on edges inside B(x,3R).
  // Summing den(i,i) - den(i,j) over both directions of an edge yields
  // (f_i - f_j)^2 once, so the directed-sum normalization 1/(2d) becomes 1/d.
  Eigen::MatrixXd den = Eigen::MatrixXd::Zero(m, m);
  const double w = static_cast<double>(radius) * radius / x.degree;
  for (int i = 0; i < m; ++i) {
    for (int y : x.neighbors[b3[i]]) {
      const int j = local_index[y];
      if (j < 0) continue;
      den(i, i) += w;
      den(i, j) -= w;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dsolve(den);
  const Eigen::VectorXd mu = dsolve.eigenvalues();
  const Eigen::MatrixXd u = dsolve.eigenvectors();
  const double mu_max = mu[m - 1];
  const double cut = std::max(1e-12 * std::max(1.0, mu_max), 0.0);
  int first_pos = 0;
  while (first_pos < m && mu[first_pos] <= cut) ++first_pos;

  // Numerator energy inside the null space means an unbounded ratio.
  for (int i = 0; i < first_pos; ++i) {
    const Eigen::VectorXd z = u.col(i);
    if (z.dot(num * z) > 1e-10) {
      cell.infinite = true;
      return cell;
    }
  }
  if (first_pos == m) {
    cell.value = 0.0;
    return cell;
  }
  const int p = m - first_pos;
  const Eigen::MatrixXd up = u.rightCols(p);
  const Eigen::VectorXd scale = mu.tail(p).array().rsqrt();
  const Eigen::MatrixXd reduced =
      scale.asDiagonal() * (up.transpose() * num * up) * scale.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rsolve(reduced);
  cell.value = std::max(0.0, rsolve.eigenvalues()[p - 1]);
  return cell;
}

namespace {

PoincareEstimate poincare_common(const Graph& x, const std::vector<int>& radii,
                                 const std::vector<int>& centers, bool parallel) {
  if (radii.empty() || centers.empty())
    throw std::invalid_argument("global_poincare: empty grid");
  PoincareEstimate est;
  const int cells = static_cast<int>(radii.size() * centers.size());
  est.cells.resize(cells);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int idx = 0; idx < cells; ++idx) {
    const int c = centers[idx / radii.size()];
    const int r = radii[idx % radii.size()];
    est.cells[idx] = local_poincare(x, c, r);
  }
  est.p_hat = 0.0;
  for (const auto& cell : est.cells) {
    est.any_infinite = est.any_infinite || cell.infinite;
    if (!cell.infinite && cell.value > est.p_hat) {
      est.p_hat = cell.value;
      est.argmax_center = cell.center;
      est.argmax_radius = cell.radius;
    }
  }
  return est;
}

}  // namespace

PoincareEstimate global_poincare(const Graph& x, const std::vector<int>& radii,
                                 const std::vector<int>& centers) {
  return poincare_common(x, radii, centers, true);
}

PoincareEstimate global_poincare_serial(const Graph& x, const std::vector<int>& radii,
                                        const std::vector<int>& centers) {
  return poincare_common(x, radii, centers, false);
}

std::vector<int> default_radius_grid(const Graph& x) {
  std::vector<int> grid;
  const int top = (x.diameter + 2) / 3;
  for (int r = 1; r <= top; ++r) grid.push_back(r);
  if (grid.empty() || grid.back() != x.diameter) grid.push_back(std::max(1, x.diameter));
  return grid;
}

KscCheck ksc_bound_check(const Graph& x, double c_real, double k_ksc) {
  KscCheck out;
  out.c_real = c_real;
  PoincareEstimate est = global_poincare(x, default_radius_grid(x), {0});
  out.p_hat = est.p_hat;
  out.bound = k_ksc * c_real * c_real * c_real;
  out.ratio = out.p_hat / (c_real * c_real * c_real);
  out.pass = !est.any_infinite && out.p_hat <= out.bound;
  return out;
}

}  // namespace lab
