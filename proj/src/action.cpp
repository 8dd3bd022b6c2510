#include "lab/action.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace lab {

Eigen::VectorXd apply_translation(const FiniteGroup& g, int elem, const Eigen::VectorXd& f) {
  Eigen::VectorXd out(f.size());
  const int ginv = g.inv(elem);
  for (int x = 0; x < g.order; ++x) out[x] = f[g.mul(ginv, x)];
  return out;
}

double commutation_residual(const CayleyGraph& x, const Eigen::MatrixXd& laplacian,
                            const std::vector<int>& elements,
                            const std::vector<Eigen::VectorXd>& vectors) {
  double worst = 0.0;
  for (int g : elements) {
    for (const auto& f : vectors) {
      const Eigen::VectorXd lhs = laplacian * apply_translation(x.group, g, f);
      const Eigen::VectorXd rhs = apply_translation(x.group, g, laplacian * f);
      worst = std::max(worst, (lhs - rhs).norm() / std::max(1e-300, f.norm()));
    }
  }
  return worst;
}

ActionRestriction restrict_action(const CayleyGraph& x, const Spectrum& spec, int k,
                                  double invariance_tol) {
  if (k < 1 || k > spec.num_clusters())
    throw std::invalid_argument("restrict_action: no such eigenvalue cluster");
  ActionRestriction act;
  act.cluster = k;
  act.basis = spec.eigenspace(k);
  const int n = x.group.order;
  act.matrices.reserve(n);
  for (int g = 0; g < n; ++g) {
    Eigen::MatrixXd rotated(act.basis.rows(), act.basis.cols());
    const int ginv = x.group.inv(g);
    for (int v = 0; v < n; ++v) rotated.row(v) = act.basis.row(x.group.mul(ginv, v));
    Eigen::MatrixXd m = act.basis.transpose() * rotated;
    const double residual = (rotated - act.basis * m).cwiseAbs().maxCoeff();
    act.max_invariance_residual = std::max(act.max_invariance_residual, residual);
    if (residual > invariance_tol)
      throw std::runtime_error(
          "restrict_action: eigenspace is not invariant (cluster split error)");
    act.matrices.push_back(std::move(m));
  }
  return act;
}

KernelReport kernel(const CayleyGraph& x, const ActionRestriction& action, double epsilon) {
  KernelReport rep;
  rep.epsilon = epsilon;
  const int m = static_cast<int>(action.basis.cols());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  rep.min_nonmember_deviation = std::numeric_limits<double>::infinity();
  for (int g = 0; g < x.group.order; ++g) {
    const double dev = (action.matrices[g] - id).norm();
    if (dev <= epsilon) {
      rep.members.push_back(g);
      rep.max_member_deviation = std::max(rep.max_member_deviation, dev);
    } else {
      rep.min_nonmember_deviation = std::min(rep.min_nonmember_deviation, dev);
    }
  }
  // Exact validation: the numerically detected set must already be closed.
  std::vector<int> closure = subgroup_generated(x.group, rep.members);
  if (closure != rep.members)
    throw std::runtime_error("kernel: detected set is not a subgroup (tolerance issue)");
  if (!is_normal(x.group, rep.members))
    throw std::runtime_error("kernel: detected subgroup is not normal");
  if (rep.members.size() < static_cast<size_t>(x.group.order) &&
      rep.min_nonmember_deviation <= 10.0 * epsilon)
    throw std::runtime_error("kernel: separation gap violated (ill-conditioned eigenspace)");
  rep.index = x.group.order / static_cast<int>(rep.members.size());
  return rep;
}

Graph quotient_cayley_graph(const CayleyGraph& x, const Quotient& q) {
  Graph g;
  g.n = q.group.order;
  g.degree = x.gens.degree();
  g.neighbors.assign(g.n, {});
  for (int c = 0; c < g.n; ++c) {
    const int rep = q.cosets[c][0];
    for (int s : x.gens.elements)
      g.neighbors[c].push_back(q.projection[x.group.mul(rep, s)]);
  }
  finalize_distances(g);
  return g;
}

QuotientAnalysis quotient_pushdown(const CayleyGraph& x, const std::vector<int>& h,
                                   const Eigen::VectorXd& f, double lambda) {
  QuotientAnalysis qa;
  qa.lambda_input = lambda;
  qa.quotient = quotient_group(x.group, h);
  qa.graph = quotient_cayley_graph(x, qa.quotient);
  for (int y : qa.graph.neighbors[0])
    if (y == 0) ++qa.loops_per_vertex;

  const int m = qa.quotient.group.order;
  qa.pushed.resize(m);
  for (int c = 0; c < m; ++c) {
    double sum = 0.0;
    for (int v : qa.quotient.cosets[c]) sum += f[v];
    qa.pushed[c] = sum / qa.quotient.cosets[c].size();
  }
  for (int c = 0; c < m; ++c) {
    for (int v : qa.quotient.cosets[c]) {
      const double d = f[v] - qa.pushed[c];
      qa.coset_variance += d * d;
    }
  }
  if (qa.coset_variance > 1e-8)
    throw std::runtime_error("quotient_pushdown: f is not constant on cosets");

  const Eigen::MatrixXd lap_q = assemble_laplacian(qa.graph);
  qa.pushdown_residual = (lap_q * qa.pushed - lambda * qa.pushed).norm() /
                         std::max(1e-300, qa.pushed.norm());
  Spectrum sq = full_spectrum(lap_q);
  qa.lambda2_quotient = sq.num_clusters() > 1 ? sq.lambda(2) : 0.0;
  return qa;
}

CheegerResult cheeger(const Graph& xq) {
  CheegerResult out;
  if (xq.n > 24 || xq.n < 2) return out;
  out.exact = true;
  out.h = std::numeric_limits<double>::infinity();
  const uint32_t full = 1u << xq.n;
  for (uint32_t mask = 1; mask < full - 1; ++mask) {
    const int size = __builtin_popcount(mask);
    if (2 * size > xq.n) continue;
    int crossing = 0;
    for (int v = 0; v < xq.n; ++v) {
      if (!(mask >> v & 1)) continue;
      for (int y : xq.neighbors[v])
        if (y != v && !(mask >> y & 1)) ++crossing;
    }
    const double ratio = static_cast<double>(crossing) / size;
    if (ratio < out.h) {
      out.h = ratio;
      out.best_cut.clear();
      for (int v = 0; v < xq.n; ++v)
        if (mask >> v & 1) out.best_cut.push_back(v);
    }
  }
  return out;
}

RepresentationReport representation_report(const CayleyGraph& x, const Spectrum& spec,
                                           double k_const) {
  RepresentationReport rep;
  const DoublingProfile prof = doubling_profile(x.graph);
  rep.c_real = prof.c_real;
  rep.diam = prof.diam;
  if (spec.num_clusters() < 2) return rep;  // trivial group: no lambda_2
  rep.lambda2 = spec.lambda(2);
  rep.dim_w2 = spec.multiplicity(2);

  ActionRestriction act = restrict_action(x, spec, 2);
  KernelReport ker = kernel(x, act);
  rep.kernel_size = static_cast<int>(ker.members.size());
  rep.image_size = ker.index;

  Eigen::VectorXd f = act.basis.col(0);
  QuotientAnalysis qa = quotient_pushdown(x, ker.members, f, rep.lambda2);
  rep.lambda2_quotient = qa.lambda2_quotient;
  CheegerResult ch = cheeger(qa.graph);
  rep.cheeger_h = ch.h;
  rep.cheeger_exact = ch.exact;

  const double d = x.gens.degree();
  rep.image_lower_bound = std::sqrt(2.0 / (d * d * rep.lambda2));
  const int nq = qa.graph.n;
  // lambda2(G) >= lambda2(G/H) >= h^2/(2d^2) >= (2/nq)^2/(2d^2), each link checked.
  rep.chain_holds = rep.lambda2 >= rep.lambda2_quotient - 1e-8;
  if (ch.exact) {
    rep.chain_holds = rep.chain_holds &&
                      rep.lambda2_quotient >= ch.h * ch.h / (2.0 * d * d) - 1e-10 &&
                      ch.h >= 2.0 / nq - 1e-12;
  }
  const double lc = std::log(rep.c_real);
  rep.dim_bound_report = std::exp(k_const * lc * lc);
  rep.image_target_report = rep.diam / std::pow(rep.c_real, k_const);
  rep.measured_growth_exponent =
      x.group.order > 1 ? std::log(static_cast<double>(rep.image_size)) /
                              std::log(static_cast<double>(x.group.order))
                        : 0.0;
  return rep;
}

ZmCertificate zm_certificate(const CayleyGraph& x, const std::vector<int>& h, int dim_w,
                             int max_enum) {
  ZmCertificate cert;
  Quotient q = quotient_group(x.group, h);
  const int nq = q.group.order;
  cert.jordan_comparison = std::pow(4.0 * dim_w, static_cast<double>(dim_w) * dim_w);
  if (nq > max_enum) return cert;
  cert.attempted = true;

  std::set<std::vector<int>> seen;
  int best_m = 1;
  std::vector<int> best_a = {0};
  for (int a = 0; a < nq; ++a) {
    for (int b = a; b < nq; ++b) {
      std::vector<int> sub = subgroup_generated(q.group, {a, b});
      if (!seen.insert(sub).second) continue;
      if (!is_normal(q.group, sub)) continue;
      // Restrict the ambient multiplication to the subgroup to test it alone.
      FiniteGroup s;
      s.order = static_cast<int>(sub.size());
      std::vector<int> pos(nq, -1);
      for (int i = 0; i < s.order; ++i) pos[sub[i]] = i;
      s.mul_table.resize(static_cast<size_t>(s.order) * s.order);
      s.inv_table.resize(s.order);
      for (int i = 0; i < s.order; ++i) {
        for (int j = 0; j < s.order; ++j)
          s.mul_table[static_cast<size_t>(i) * s.order + j] =
              static_cast<uint16_t>(pos[q.group.mul(sub[i], sub[j])]);
        s.inv_table[i] = pos[q.group.inv(sub[i])];
      }
      if (!is_abelian(s)) continue;
      std::vector<int> factors = abelian_invariant_factors(s);
      const int m = factors.empty() ? 1 : factors.back();
      if (m > best_m || (m == best_m && sub.size() > best_a.size())) {
        best_m = m;
        best_a = sub;
      }
    }
  }
  cert.m = best_m;
  cert.abelian_subgroup_of_quotient = best_a;
  cert.index = nq / static_cast<int>(best_a.size());
  std::set<int> a_set(best_a.begin(), best_a.end());
  for (int g = 0; g < x.group.order; ++g)
    if (a_set.count(q.projection[g])) cert.normal_subgroup.push_back(g);
  if (!is_normal(x.group, cert.normal_subgroup))
    throw std::logic_error("zm_certificate: preimage is not normal");
  return cert;
}

}  // namespace lab
