// Acceptance gate: one line per criterion, exit 0 only if every line passes.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "lab/action.hpp"
#include "lab/partitions.hpp"
#include "lab/poincare.hpp"
#include "lab/prng.hpp"
#include "lab/report.hpp"
#include "lab/spectral.hpp"
#include "lab/zoo.hpp"

using namespace lab;
using nlohmann::json;

namespace {

struct Gate {
  int failures = 0;
  void line(int idx, const std::string& what, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
};

struct ZooGraph {
  std::string name;
  CayleyGraph x;
  DoublingProfile prof;
  Spectrum sp;
};

std::vector<ZooGraph> load_zoo() {
  std::vector<ZooGraph> out;
  for (const auto& [name, doc] : builtin_zoo()) {
    ZooGraph z;
    z.name = name;
    BuiltGroup bg = build_group(parse_group_spec(doc));
    z.x = build_cayley(bg.group, bg.gens);
    z.prof = doubling_profile(z.x.graph);
    z.sp = full_spectrum(assemble_laplacian(z.x.graph));
    out.push_back(std::move(z));
  }
  return out;
}

const ZooGraph& named(const std::vector<ZooGraph>& zoo, const std::string& n) {
  for (const auto& z : zoo)
    if (z.name == n) return z;
  throw std::runtime_error("missing zoo graph " + n);
}

bool closed_form_spectra(const std::vector<ZooGraph>& zoo, std::string& detail) {
  double worst = 0.0;
  for (int n : {12, 64, 256}) {
    const ZooGraph& z = named(zoo, "c" + std::to_string(n));
    // Sorted closed-form eigenvalues 1 - cos(2 pi j / n).
    std::vector<double> expect;
    for (int j = 0; j < n; ++j) expect.push_back(1.0 - std::cos(2.0 * M_PI * j / n));
    std::sort(expect.begin(), expect.end());
    for (int i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(z.sp.eigenvalues[i] - expect[i]));
  }
  bool mult_ok = true;
  for (int k : {4, 6}) {
    const ZooGraph& z = named(zoo, "z2_" + std::to_string(k));
    if (z.sp.num_clusters() != k + 1) mult_ok = false;
    double binom = 1.0;
    for (int j = 0; j <= k && mult_ok; ++j) {
      mult_ok = z.sp.multiplicity(j + 1) == static_cast<int>(binom + 0.5) &&
                std::abs(z.sp.lambda(j + 1) - 2.0 * j / k) <= 1e-9;
      binom = binom * (k - j) / (j + 1);
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max cycle eigenvalue error %.2e", worst);
  detail = buf;
  return worst <= 1e-9 && mult_ok;
}

bool stokes_all(const std::vector<ZooGraph>& zoo, std::string& detail) {
  double worst = 0.0;
  for (const auto& z : zoo)
    for (int i = 0; i < z.x.graph.n; ++i)
      worst = std::max(
          worst, stokes_residual(z.x.graph, z.sp.eigenvectors.col(i), z.sp.eigenvalues[i]));
  char buf[64];
  std::snprintf(buf, sizeof buf, "max residual %.2e", worst);
  detail = buf;
  return worst <= 1e-8;
}

bool reverse_poincare_all(const std::vector<ZooGraph>& zoo, std::string& detail) {
  long cases = 0, violations = 0;
  for (const auto& z : zoo) {
    Rng rng(2026, 5);
    std::vector<int> centers;
    for (int i = 0; i < 3; ++i)
      centers.push_back(static_cast<int>(rng.next_below(z.x.graph.n)));
    for (int i = 0; i < z.x.graph.n; ++i)
      for (int r = 1; r <= std::max(1, z.x.graph.diameter / 2); ++r)
        for (int c : centers) {
          ++cases;
          if (!reverse_poincare_check(z.x.graph, z.sp.eigenvectors.col(i),
                                      z.sp.eigenvalues[i], c, r)
                   .pass)
            ++violations;
        }
  }
  detail = std::to_string(cases) + " cases, " + std::to_string(violations) + " violations";
  return violations == 0;
}

bool minmax_all(const std::vector<ZooGraph>& zoo, std::string& detail) {
  bool ok = true;
  int bounds = 0;
  double worst_ratio = 0.0;
  for (const auto& z : zoo) {
    for (int k = 1; k <= 4; ++k) {
      LambdaKBound lb;
      try {
        lb = lambda_k_upper_bound(z.x.graph, k, 1, z.prof.c_real);
      } catch (const InfeasibleError&) {
        continue;
      }
      ++bounds;
      if (lb.k_effective > z.sp.num_clusters()) continue;
      const double truth = z.sp.lambda(lb.k_effective);
      if (lb.bound < truth) ok = false;
      const double ratio =
          lb.bound * z.x.graph.diameter * z.x.graph.diameter /
          (lb.k_effective * lb.k_effective * std::pow(1.0 + std::log(z.prof.c_real), 2));
      worst_ratio = std::max(worst_ratio, ratio);
      if (ratio > 1e4) ok = false;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d bounds, worst symmetric ratio %.1f (target 200, trip 1e4)",
                bounds, worst_ratio);
  detail = buf;
  return ok && bounds > 0;
}

bool padding_all(const std::vector<ZooGraph>& zoo, std::string& detail) {
  bool ok = true;
  int graphs = 0;
  double worst = 1.0;
  for (const auto& z : zoo) {
    if (z.x.graph.diameter < 8) continue;
    ++graphs;
    PaddingReport rep = padding_probability_test(z.x.graph, z.x.graph.diameter / 2.0, 16.0,
                                                 400, 1, z.prof.c_real);
    worst = std::min(worst, rep.min_point_frequency);
    if (!rep.pass) ok = false;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d graphs, worst frequency %.3f vs threshold %.3f", graphs,
                worst, 0.5 - 3.0 * std::sqrt(0.25 / 400));
  detail = buf;
  return ok && graphs > 0;
}

bool certificates_all(const std::vector<ZooGraph>& zoo, std::string& detail) {
  bool ok = true;
  double min_delta = 1.0;
  for (const auto& z : zoo) {
    if (z.sp.num_clusters() < 2) {
      ok = false;
      continue;
    }
    PoincareEstimate pest = global_poincare(z.x.graph, default_radius_grid(z.x.graph), {0});
    MultiplicityCertificate cert =
        certificate_search(z.x.graph, z.sp, 2, pest.p_hat, z.prof.c_real);
    min_delta = std::min(min_delta, cert.delta);
    if (!cert.certified || cert.rank != cert.multiplicity) ok = false;
    // Reported comparison bound exp(K ln c (ln c + ln 2)), K = 4.
    const double lc = std::log(std::max(2.0, z.prof.c_real));
    if (!(std::exp(4.0 * lc * (lc + std::log(2.0))) > 0)) ok = false;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "all certified, smallest delta0 %.4f", min_delta);
  detail = buf;
  return ok;
}

bool measure_all(const std::vector<ZooGraph>& zoo, std::string& detail) {
  bool ok = true;
  long entries = 0;
  for (const auto& z : zoo) {
    MeasureLemmaReport rep = measure_lemma_checks(z.x.graph, z.prof.c_real, 8.0);
    entries += static_cast<long>(rep.entries.size());
    if (!rep.all_pass) ok = false;
  }
  detail = std::to_string(entries) + " inequalities";
  return ok && entries > 0;
}

bool ksc_all(const std::vector<ZooGraph>& zoo, std::string& detail) {
  bool ok = true;
  double worst = 0.0;
  for (const auto& z : zoo) {
    KscCheck chk = ksc_bound_check(z.x.graph, z.prof.c_real, 16.0);
    worst = std::max(worst, chk.ratio);
    if (!chk.pass) ok = false;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst P_hat / c^3 ratio %.3f (bound 16)", worst);
  detail = buf;
  return ok;
}

bool action_pipeline(const std::vector<ZooGraph>& zoo, std::string& detail) {
  bool ok = true;
  {
    const ZooGraph& z = named(zoo, "c12");
    ActionRestriction act = restrict_action(z.x, z.sp, 2);
    KernelReport ker = kernel(z.x, act);
    ok = ok && ker.members == std::vector<int>{0} && ker.index == 12;
  }
  {
    const ZooGraph& z = named(zoo, "z6x2");
    ActionRestriction act = restrict_action(z.x, z.sp, 2);
    KernelReport ker = kernel(z.x, act);
    ok = ok && ker.members.size() == 2 && ker.index == 6;
    QuotientAnalysis qa = quotient_pushdown(z.x, ker.members, act.basis.col(0), z.sp.lambda(2));
    ok = ok && qa.graph.n == 6 && qa.loops_per_vertex == 1 &&
         qa.pushdown_residual <= 1e-8;
    CheegerResult ch = cheeger(qa.graph);
    ok = ok && ch.exact && std::abs(ch.h - 2.0 / 3.0) <= 1e-12;
    RepresentationReport rep = representation_report(z.x, z.sp);
    ok = ok && rep.chain_holds && rep.image_size == 6 &&
         rep.image_size >= rep.image_lower_bound;
  }
  detail = "C12 kernel trivial; Z6xZ2 quotient is looped C6 with h = 2/3";
  return ok;
}

bool zm_pipeline(const std::vector<ZooGraph>& zoo, std::string& detail) {
  bool ok = true;
  {
    const ZooGraph& z = named(zoo, "z6x2");
    ActionRestriction act = restrict_action(z.x, z.sp, 2);
    KernelReport ker = kernel(z.x, act);
    ZmCertificate c = zm_certificate(z.x, ker.members, z.sp.multiplicity(2));
    ok = ok && c.attempted && c.index == 1 && c.m == 6;
  }
  {
    const ZooGraph& z = named(zoo, "s4");
    // Engineered H = V4: the double transpositions are the order-2 conjugacy
    // class of size 3.
    std::vector<int> seeds;
    for (int a = 1; a < z.x.group.order; ++a) {
      if (element_order(z.x.group, a) != 2) continue;
      std::set<int> cls;
      for (int t = 0; t < z.x.group.order; ++t)
        cls.insert(z.x.group.mul(z.x.group.mul(t, a), z.x.group.inv(t)));
      if (cls.size() == 3) seeds.push_back(a);
    }
    std::vector<int> v4 = subgroup_generated(z.x.group, seeds);
    ok = ok && v4.size() == 4 && is_normal(z.x.group, v4);
    ZmCertificate c = zm_certificate(z.x, v4, 3);
    ok = ok && c.attempted && c.m == 3 && c.index == 2 &&
         c.abelian_subgroup_of_quotient.size() == 3;
  }
  detail = "Z6xZ2 -> (index 1, M = 6); S4 / V4 -> (A3, M = 3, index 2)";
  return ok;
}

bool determinism(std::string& detail) {
  GroupSpec spec;
  for (const auto& [name, doc] : builtin_zoo())
    if (name == "z16x4") spec = parse_group_spec(doc);
  AnalyzeOptions opt;
  opt.seed = 42;
  const std::string a = strip_timing(analyze_group(spec, opt)).dump();
  const std::string b = strip_timing(analyze_group(spec, opt)).dump();
  detail = "two z16x4 reports, " + std::to_string(a.size()) + " bytes each";
  return a == b && !a.empty();
}

}  // namespace

int main() {
  Gate gate;
  std::vector<ZooGraph> zoo = load_zoo();
  std::string d;

  gate.line(1, "closed-form spectra (cycles exact, hypercube multiplicities)",
            closed_form_spectra(zoo, d), d);
  gate.line(2, "summation identity residual <= 1e-8 on every eigenpair", stokes_all(zoo, d), d);
  gate.line(3, "reverse Poincare (128, 2) with zero violations", reverse_poincare_all(zoo, d), d);
  gate.line(4, "min-max upper bounds valid, symmetric ratio under tripwire", minmax_all(zoo, d), d);
  gate.line(5, "padded-partition frequency beats Monte Carlo threshold", padding_all(zoo, d), d);
  gate.line(6, "lambda_2 multiplicity certified on every zoo graph", certificates_all(zoo, d), d);
  gate.line(7, "ball-mass inequalities on annuli and dyadic scales", measure_all(zoo, d), d);
  gate.line(8, "Poincare constant <= 16 c^3 on every zoo graph", ksc_all(zoo, d), d);
  gate.line(9, "translation-action pipeline on C12 and Z6xZ2", action_pipeline(zoo, d), d);
  gate.line(10, "Z_M certificates through small quotients", zm_pipeline(zoo, d), d);
  gate.line(11, "byte-identical reports modulo timing", determinism(d), d);

  std::printf("%d/11 criteria passed\n", 11 - gate.failures);
  return gate.failures == 0 ? 0 : 1;
}
