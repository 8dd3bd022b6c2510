#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lab/group.hpp"

namespace lab {

// Connected d-regular multigraph with its full word-distance table.
// Self-loops are allowed (they appear in quotient graphs) and count toward
// the degree but are ignored by BFS.
struct Graph {
  int n = 0;
  int degree = 0;
  std::vector<std::vector<int>> neighbors;  // length-d list per vertex, generator order
  std::vector<uint16_t> dist_table;         // row-major n x n
  int diameter = 0;

  int dist(int x, int y) const { return dist_table[static_cast<size_t>(x) * n + y]; }
  const uint16_t* dist_row(int x) const { return &dist_table[static_cast<size_t>(x) * n]; }
};

struct CayleyGraph {
  FiniteGroup group;
  GeneratingSet gens;
  Graph graph;
};

// Ball-size profile from a basepoint plus both doubling constants.
// c_real is the exact supremum of |B(2R)|/|B(R)| over real R > 0 (integer
// floors make it max over r of |B(2r)|/|B(r)| and |B(2r+1)|/|B(r)|);
// c_int restricts to integer radii r >= 1.
struct DoublingProfile {
  std::vector<int> ball_sizes;  // |B(e, r)| for r = 0..diam
  double c_real = 1.0;
  double c_int = 1.0;
  double argmax_real = 0.0;
  int argmax_int = 1;
  int diam = 0;
};

CayleyGraph build_cayley(const FiniteGroup& g, const GeneratingSet& s);

// Distance table via per-source BFS; the omp version parallelizes over
// sources and must agree bit-for-bit with the serial reference.
std::vector<uint16_t> all_pairs_distances_serial(const std::vector<std::vector<int>>& neighbors);
std::vector<uint16_t> all_pairs_distances(const std::vector<std::vector<int>>& neighbors);
void finalize_distances(Graph& graph);

std::vector<int> ball_profile(const Graph& x, int center);
DoublingProfile doubling_profile(const Graph& x);

// Greedy maximal separated set in vertex-index order.  Convention for the
// integer word metric: pairwise distance >= floor(tau)+1, covering radius
// <= floor(tau).
std::vector<int> greedy_net(const Graph& x, double tau);
std::vector<int> greedy_net_within(const Graph& x, const std::vector<int>& domain, double tau);

struct CoverCheck {
  int count = 0;
  double bound = 0.0;
  bool pass = false;
  std::vector<int> centers;
};

// Greedy cover of B(e,R) by radius-(eps*R) balls, checked against
// c_real^(K*log2(1/eps)).
CoverCheck cover_count_check(const Graph& x, double radius, double eps, double k_const = 4.0);

// Max over vertices of the number of radius-r balls containing it; the input
// balls of radius r/3 must be pairwise disjoint.
int intersection_multiplicity(const Graph& x, const std::vector<int>& centers, double r);

struct MeasureCheckEntry {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct MeasureLemmaReport {
  std::vector<MeasureCheckEntry> entries;
  bool all_pass = true;
};

// Ball-mass inequalities: (1 - 1/(2c)) |B(R)| >= |B(R/10)| for 10 <= R <= diam,
// and |B(eps*diam)| <= meassym_const * (1 + eps*n) on a dyadic eps grid.
MeasureLemmaReport measure_lemma_checks(const Graph& x, double c_real,
                                        double meassym_const = 8.0);

// Distance from x to the nearest vertex outside `inside` (0 if x is outside);
// `inside` is an indicator vector.
std::vector<int> dist_to_complement(const Graph& x, const std::vector<char>& inside);

}  // namespace lab
