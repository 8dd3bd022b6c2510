#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lab/cayley.hpp"
#include "lab/spectral.hpp"

namespace lab {

// [rho(g) f](x) = f(g^-1 x), the left translation action on L^2(G).
Eigen::VectorXd apply_translation(const FiniteGroup& g, int elem, const Eigen::VectorXd& f);

// Max over sampled (g, f) of ||Delta rho(g) f - rho(g) Delta f|| / ||f||.
double commutation_residual(const CayleyGraph& x, const Eigen::MatrixXd& laplacian,
                            const std::vector<int>& elements,
                            const std::vector<Eigen::VectorXd>& vectors);

// Restriction of the translation action to one eigenspace cluster; the
// matrices are orthogonal and multiplicative up to eigensolver tolerance.
struct ActionRestriction {
  int cluster = 2;
  Eigen::MatrixXd basis;                 // n x m orthonormal
  std::vector<Eigen::MatrixXd> matrices; // m x m per group element
  double max_invariance_residual = 0.0;
};

ActionRestriction restrict_action(const CayleyGraph& x, const Spectrum& spec, int k,
                                  double invariance_tol = 1e-6);

struct KernelReport {
  std::vector<int> members;
  int index = 0;                          // [G : H]
  double max_member_deviation = 0.0;      // ||M_g - I||_F over H
  double min_nonmember_deviation = 0.0;   // over G \ H
  double epsilon = 0.0;
};

// Numerical detection (||M_g - I||_F <= eps) followed by exact subgroup and
// normality verification and a 10x separation check against non-members.
KernelReport kernel(const CayleyGraph& x, const ActionRestriction& action,
                    double epsilon = 1e-6);

struct QuotientAnalysis {
  Quotient quotient;
  Graph graph;                            // Cay(G/H; S) as a regular multigraph
  int loops_per_vertex = 0;
  Eigen::VectorXd pushed;                 // f-hat by coset averaging
  double coset_variance = 0.0;
  double pushdown_residual = 0.0;         // ||Delta_q fhat - lambda fhat|| / ||fhat||
  double lambda2_quotient = 0.0;
  double lambda_input = 0.0;
};

// Quotient multigraph keeps the full multiset image of S (generators landing
// in H become self-loops), so the pushed-down eigen-equation holds verbatim.
QuotientAnalysis quotient_pushdown(const CayleyGraph& x, const std::vector<int>& h,
                                   const Eigen::VectorXd& f, double lambda);

Graph quotient_cayley_graph(const CayleyGraph& x, const Quotient& q);

struct CheegerResult {
  double h = 0.0;
  bool exact = false;
  std::vector<int> best_cut;              // only when exact
};

// Exact edge-expansion min_{|U| <= n/2} |E(U, U^c)| / |U| by subset
// enumeration for n <= 24; self-loops never cross a cut.
CheegerResult cheeger(const Graph& xq);

struct RepresentationReport {
  int dim_w2 = 0;
  int image_size = 0;                     // |rho_W(G)| = [G : H]
  int kernel_size = 0;
  double lambda2 = 0.0;
  double lambda2_quotient = 0.0;
  double cheeger_h = 0.0;
  bool cheeger_exact = false;
  double c_real = 0.0;
  int diam = 0;
  double image_lower_bound = 0.0;         // sqrt(2 / (d^2 lambda2))
  bool chain_holds = false;
  double dim_bound_report = 0.0;          // exp(K (ln c)^2)
  double image_target_report = 0.0;       // diam / c^K
  double measured_growth_exponent = 0.0;  // log|G/H| / log|G|
};

RepresentationReport representation_report(const CayleyGraph& x, const Spectrum& spec,
                                           double k_const = 4.0);

struct ZmCertificate {
  bool attempted = false;
  std::vector<int> abelian_subgroup_of_quotient;  // A <= Q, quotient indices
  std::vector<int> normal_subgroup;               // N = preimage of A in G
  int index = 0;                                   // [G : N] = [Q : A]
  int m = 1;                                       // largest cyclic quotient of A
  double jordan_comparison = 0.0;                  // O(k)^{k^2} printout, k = dim W
};

// Brute-force route through small quotients: enumerate subgroups of Q = G/H
// generated by at most two elements, keep the normal abelian ones, maximize
// the largest invariant factor.
ZmCertificate zm_certificate(const CayleyGraph& x, const std::vector<int>& h,
                             int dim_w, int max_enum = 64);

}  // namespace lab
