#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "lab/cayley.hpp"

namespace lab {

// Random low-diameter partition: blocks are balls of radius alpha*tau around
// a permuted tau/4-net, minus everything claimed earlier.  Fully replayable
// from (tau, seed).
struct RandomPartition {
  double tau = 0.0;
  double alpha = 0.0;
  std::vector<int> net;
  std::vector<int> pi;                    // permutation of net indices
  std::vector<std::vector<int>> blocks;   // nonempty blocks, claim order
  std::vector<int> block_of;              // vertex -> block index
  uint64_t seed = 0;
};

RandomPartition random_padded_partition(const Graph& x, double tau, uint64_t seed);

// Distance from each vertex to the complement of its own block.
std::vector<int> padding_radii(const Graph& x, const RandomPartition& p);

struct PaddingReport {
  double tau = 0.0;
  double t = 0.0;                 // tau / (A (1 + ln c_real))
  double a_const = 0.0;
  int samples = 0;
  double min_point_frequency = 1.0;
  double mean_point_frequency = 1.0;
  double mean_padded_mass_fraction = 1.0;
  double threshold = 0.0;         // 0.5 - 3 sqrt(0.25/samples)
  bool pass = false;
  std::vector<double> per_point_frequency;
};

// Monte Carlo estimate of the per-point padding probability; samples are
// drawn on independent seed streams and aggregated order-independently.
PaddingReport padding_probability_test(const Graph& x, double tau, double a_const,
                                       int samples, uint64_t seed, double c_real);
PaddingReport padding_probability_test_serial(const Graph& x, double tau, double a_const,
                                              int samples, uint64_t seed, double c_real);

struct GoodSetFamily {
  int k = 0;
  double tau = 0.0;
  double t = 0.0;
  std::vector<std::vector<int>> sets;
  std::vector<double> padded_fraction;    // per set, at radius t
  std::vector<int> masses;
  uint64_t seed = 0;
  int attempts_used = 0;
};

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// k >= 2: tau by direct search on max_x |B(x,2tau)| <= n/(8k), then padded
// partitions are resampled until good blocks carry >= 1/4 of the mass and
// first-fit-decreasing packs them into k bins in [n/(8k), n/(4k)].
// k = 1: a single BFS-prefix set of half the vertices, sized per the ball-mass
// lemma window [n/(2c), (1-1/(2c)) n].
GoodSetFamily build_good_family(const Graph& x, int k, uint64_t seed, double c_real,
                                double a_const = 16.0);

struct LambdaKBound {
  double bound = 0.0;
  int k_effective = 2;            // the bound certifies lambda_max(2,k)
  GoodSetFamily family;
  std::vector<double> rayleigh_values;
};

// Disjoint tent functions f_i = dist(., X \ S_i) fed through the min-max bound.
LambdaKBound lambda_k_upper_bound(const Graph& x, int k, uint64_t seed, double c_real);

}  // namespace lab
