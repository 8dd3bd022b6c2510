#include "lab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace lab {

Eigen::MatrixXd assemble_laplacian(const Graph& x) {
  for (const auto& nb : x.neighbors)
    if (static_cast<int>(nb.size()) != x.degree)
      throw std::invalid_argument("assemble_laplacian: graph is not regular");
  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(x.n, x.n);
  const double w = 1.0 / x.degree;
  for (int v = 0; v < x.n; ++v)
    for (int y : x.neighbors[v]) lap(v, y) -= w;
  return lap;
}

Spectrum full_spectrum(const Eigen::MatrixXd& laplacian, double tol_cluster) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigensolver failed");
  Spectrum s;
  s.eigenvalues = solver.eigenvalues();
  s.eigenvectors = solver.eigenvectors();
  const int n = static_cast<int>(s.eigenvalues.size());
  s.tol_cluster =
      tol_cluster > 0 ? tol_cluster : 1e-6 * std::max(1.0, s.eigenvalues[n - 1]);
  int begin = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || s.eigenvalues[i] - s.eigenvalues[i - 1] > s.tol_cluster) {
      s.clusters.emplace_back(begin, i);
      begin = i;
    }
  }
  return s;
}

double gradient_sq_at(const Graph& x, const Eigen::VectorXd& f, int v) {
  double acc = 0.0;
  for (int y : x.neighbors[v]) {
    const double d = f[v] - f[y];
    acc += d * d;
  }
  return acc / (2.0 * x.degree);
}

double dirichlet_energy(const Graph& x, const Eigen::VectorXd& f) {
  double acc = 0.0;
  for (int v = 0; v < x.n; ++v) acc += gradient_sq_at(x, f, v);
  return acc;
}

double stokes_residual(const Graph& x, const Eigen::VectorXd& phi, double lambda) {
  const double mass = phi.squaredNorm();
  return std::abs(dirichlet_energy(x, phi) - lambda * mass) / std::max(1.0, mass);
}

double rayleigh_upper_bound(const Graph& x, const std::vector<Eigen::VectorXd>& fs) {
  if (fs.empty()) throw std::invalid_argument("rayleigh_upper_bound: empty family");
  std::vector<char> used(x.n, 0);
  for (const auto& f : fs) {
    for (int v = 0; v < x.n; ++v) {
      if (f[v] == 0.0) continue;
      if (used[v])
        throw std::invalid_argument("rayleigh_upper_bound: supports overlap");
      used[v] = 1;
    }
  }
  double bound = 0.0;
  for (const auto& f : fs) {
    const double mean = f.sum() / x.n;
    const double var = (f.array() - mean).matrix().squaredNorm();
    if (var <= 0.0)
      throw std::invalid_argument("rayleigh_upper_bound: test function has zero variance");
    bound = std::max(bound, dirichlet_energy(x, f) / var);
  }
  return bound;
}

Eigen::MatrixXd ball_average_map(const Graph& x, const Eigen::MatrixXd& basis,
                                 const std::vector<int>& centers, double r) {
  const int rad = static_cast<int>(std::floor(r));
  Eigen::MatrixXd phi(centers.size(), basis.cols());
  for (size_t j = 0; j < centers.size(); ++j) {
    const uint16_t* row = x.dist_row(centers[j]);
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(basis.cols());
    int count = 0;
    for (int v = 0; v < x.n; ++v) {
      if (row[v] <= rad) {
        acc += basis.row(v);
        ++count;
      }
    }
    phi.row(j) = acc / count;
  }
  return phi;
}

namespace {

int svd_rank(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  const double cut = 1e-8 * sv[0];
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++rank;
  return rank;
}

}  // namespace

MultiplicityCertificate multiplicity_certificate(const Graph& x, const Spectrum& spec,
                                                 int k, double delta,
                                                 std::optional<double> p_hat,
                                                 double c_real, double k_const) {
  MultiplicityCertificate cert;
  cert.delta = delta;
  cert.radius = static_cast<int>(std::floor(delta * x.diameter));
  cert.multiplicity = spec.multiplicity(k);
  std::vector<int> centers = greedy_net(x, delta * x.diameter);
  cert.cover_size = static_cast<int>(centers.size());
  const Eigen::MatrixXd basis = spec.eigenspace(k);
  cert.rank = svd_rank(ball_average_map(x, basis, centers, cert.radius));
  cert.certified = cert.rank == cert.multiplicity;
  if (p_hat) {
    const double dd = delta * x.diameter;
    cert.null_vector_product =
        spec.lambda(k) * std::pow(c_real, k_const) * (*p_hat) * dd * dd;
  }
  return cert;
}

MultiplicityCertificate certificate_search(const Graph& x, const Spectrum& spec, int k,
                                           std::optional<double> p_hat, double c_real,
                                           double k_const) {
  MultiplicityCertificate cert;
  for (double delta = 0.25; delta * x.diameter >= 1.0; delta /= 2.0) {
    cert = multiplicity_certificate(x, spec, k, delta, p_hat, c_real, k_const);
    if (cert.certified) return cert;
  }
  // Point-evaluation fallback: every vertex is a radius-0 ball, so the map is
  // the restriction of an orthonormal basis and has full rank.
  const double delta = 0.5 / std::max(1, x.diameter);
  cert = multiplicity_certificate(x, spec, k, delta, p_hat, c_real, k_const);
  return cert;
}

ReversePoincareCheck reverse_poincare_check(const Graph& x, const Eigen::VectorXd& phi,
                                            double lambda, int center, int radius) {
  if (radius < 1) throw std::invalid_argument("reverse_poincare_check: R >= 1");
  ReversePoincareCheck out;
  const uint16_t* row = x.dist_row(center);
  for (int v = 0; v < x.n; ++v) {
    if (row[v] <= radius) out.lhs += gradient_sq_at(x, phi, v);
    if (row[v] <= 2 * radius) out.rhs += phi[v] * phi[v];
  }
  out.rhs *= 128.0 / (x.degree * static_cast<double>(radius) * radius) + 2.0 * lambda;
  out.pass = out.lhs <= out.rhs + 1e-10;
  return out;
}

Eigen::VectorXd cutoff_function(const Graph& x, int center, int radius) {
  if (radius < 1) throw std::invalid_argument("cutoff_function: R >= 1");
  Eigen::VectorXd u = Eigen::VectorXd::Zero(x.n);
  const uint16_t* row = x.dist_row(center);
  for (int v = 0; v < x.n; ++v) {
    const int d = row[v];
    if (d <= radius)
      u[v] = 1.0;
    else if (d <= 2 * radius)
      u[v] = 1.0 - static_cast<double>(d - radius) / radius;
  }
  return u;
}

}  // namespace lab
