// Serial vs OpenMP kernel comparison: distance table, padding Monte Carlo,
// Poincare grid.  Results are checked for equality, then timed.

#include <chrono>
#include <cstdio>

#include <json.hpp>

#include "lab/partitions.hpp"
#include "lab/poincare.hpp"
#include "lab/zoo.hpp"

using namespace lab;

namespace {

double seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

CayleyGraph build_named(const std::string& name) {
  for (const auto& [n, doc] : builtin_zoo())
    if (n == name) {
      BuiltGroup bg = build_group(parse_group_spec(doc));
      return build_cayley(bg.group, bg.gens);
    }
  throw std::runtime_error("no zoo entry " + name);
}

}  // namespace

int main() {
  CayleyGraph x = build_named("c256");
  DoublingProfile prof = doubling_profile(x.graph);
  bool ok = true;

  std::vector<uint16_t> ds, dp;
  const double t_dist_s = seconds([&] { ds = all_pairs_distances_serial(x.graph.neighbors); });
  const double t_dist_p = seconds([&] { dp = all_pairs_distances(x.graph.neighbors); });
  ok = ok && ds == dp;
  std::printf("distance table    serial %.4fs  parallel %.4fs  speedup %.2fx  %s\n",
              t_dist_s, t_dist_p, t_dist_s / t_dist_p, ds == dp ? "match" : "MISMATCH");

  PaddingReport ps, pp;
  const double t_pad_s = seconds([&] {
    ps = padding_probability_test_serial(x.graph, x.graph.diameter / 2.0, 16.0, 400, 1,
                                         prof.c_real);
  });
  const double t_pad_p = seconds([&] {
    pp = padding_probability_test(x.graph, x.graph.diameter / 2.0, 16.0, 400, 1, prof.c_real);
  });
  const bool pad_match = ps.per_point_frequency == pp.per_point_frequency;
  ok = ok && pad_match;
  std::printf("padding sampler   serial %.4fs  parallel %.4fs  speedup %.2fx  %s\n",
              t_pad_s, t_pad_p, t_pad_s / t_pad_p, pad_match ? "match" : "MISMATCH");

  std::vector<int> radii = default_radius_grid(x.graph);
  std::vector<int> centers = {0};
  PoincareEstimate es, ep;
  const double t_poi_s = seconds([&] { es = global_poincare_serial(x.graph, radii, centers); });
  const double t_poi_p = seconds([&] { ep = global_poincare(x.graph, radii, centers); });
  const bool poi_match = es.p_hat == ep.p_hat && es.argmax_radius == ep.argmax_radius;
  ok = ok && poi_match;
  std::printf("poincare grid     serial %.4fs  parallel %.4fs  speedup %.2fx  %s\n",
              t_poi_s, t_poi_p, t_poi_s / t_poi_p, poi_match ? "match" : "MISMATCH");

  return ok ? 0 : 1;
}
