#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lab/cayley.hpp"

namespace lab {

// Normalized combinatorial Laplacian I - A/d of a regular multigraph.
// A self-loop contributes its own endpoint to the neighbor average, so row
// sums stay zero and a single vertex with d loops has Laplacian [0].
Eigen::MatrixXd assemble_laplacian(const Graph& x);

struct Spectrum {
  Eigen::VectorXd eigenvalues;            // ascending
  Eigen::MatrixXd eigenvectors;           // orthonormal columns
  std::vector<std::pair<int, int>> clusters;  // [begin, end) index ranges
  double tol_cluster = 0.0;

  int num_clusters() const { return static_cast<int>(clusters.size()); }
  // 1-based cluster access matching the lambda_k numbering (k=1 is constants).
  double lambda(int k) const { return eigenvalues[clusters[k - 1].first]; }
  int multiplicity(int k) const { return clusters[k - 1].second - clusters[k - 1].first; }
  Eigen::MatrixXd eigenspace(int k) const {
    const auto [b, e] = clusters[k - 1];
    return eigenvectors.middleCols(b, e - b);
  }
};

// Dense symmetric eigendecomposition with single-linkage gap clustering.
// tol_cluster <= 0 selects the default 1e-6 * max(1, lambda_max).
Spectrum full_spectrum(const Eigen::MatrixXd& laplacian, double tol_cluster = 0.0);

// |grad f|^2(x) = (1/2d) sum_{y ~ x} (f(x) - f(y))^2.
double gradient_sq_at(const Graph& x, const Eigen::VectorXd& f, int v);
double dirichlet_energy(const Graph& x, const Eigen::VectorXd& f);

// |sum |grad phi|^2 - lambda sum phi^2| / max(1, sum phi^2).
double stokes_residual(const Graph& x, const Eigen::VectorXd& phi, double lambda);

// Min-max bound: with k disjointly supported non-constant test functions,
// lambda_k <= max_i dirichlet(f_i) / sum (f_i - mean f_i)^2 (global mean).
double rayleigh_upper_bound(const Graph& x, const std::vector<Eigen::VectorXd>& fs);

// Row j holds the averages of each basis column over B(centers[j], r).
Eigen::MatrixXd ball_average_map(const Graph& x, const Eigen::MatrixXd& basis,
                                 const std::vector<int>& centers, double r);

struct MultiplicityCertificate {
  double delta = 0.0;
  int radius = 0;
  int cover_size = 0;
  int rank = 0;
  int multiplicity = 0;
  bool certified = false;
  // Lemma-style consistency product lambda_k * c^K * P_hat * (delta*diam)^2,
  // reported when a Poincare estimate is available.
  std::optional<double> null_vector_product;
};

MultiplicityCertificate multiplicity_certificate(const Graph& x, const Spectrum& spec,
                                                 int k, double delta,
                                                 std::optional<double> p_hat = {},
                                                 double c_real = 1.0, double k_const = 4.0);

// Halving search from delta = 1/4; a radius-0 cover (point evaluations on
// every vertex) is the final fallback and always certifies.
MultiplicityCertificate certificate_search(const Graph& x, const Spectrum& spec, int k,
                                           std::optional<double> p_hat = {},
                                           double c_real = 1.0, double k_const = 4.0);

struct ReversePoincareCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

// Dirichlet energy of an eigenfunction on B(R) against
// (128/(d R^2) + 2 lambda) * mass on B(2R), constants as printed.
ReversePoincareCheck reverse_poincare_check(const Graph& x, const Eigen::VectorXd& phi,
                                            double lambda, int center, int radius);

// 1 on B(R), linear taper to 0 across B(2R) \ B(R); |u(x)-u(y)| <= 1/R on edges.
Eigen::VectorXd cutoff_function(const Graph& x, int center, int radius);

}  // namespace lab
