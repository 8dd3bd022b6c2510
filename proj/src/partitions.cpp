#include "lab/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lab/prng.hpp"
#include "lab/spectral.hpp"

namespace lab {

RandomPartition random_padded_partition(const Graph& x, double tau, uint64_t seed) {
  if (tau < 1.0) throw std::invalid_argument("random_padded_partition: tau >= 1");
  RandomPartition p;
  p.tau = tau;
  p.seed = seed;
  p.net = greedy_net(x, tau / 4.0);
  Rng rng(seed);
  p.alpha = 0.25 + 0.25 * rng.next_double();
  p.pi = rng.permutation(static_cast<int>(p.net.size()));
  const int radius = static_cast<int>(std::floor(p.alpha * tau));
  p.block_of.assign(x.n, -1);
  for (int i : p.pi) {
    const int center = p.net[i];
    const uint16_t* row = x.dist_row(center);
    std::vector<int> block;
    for (int v = 0; v < x.n; ++v)
      if (p.block_of[v] < 0 && row[v] <= radius) block.push_back(v);
    if (block.empty()) continue;
    const int idx = static_cast<int>(p.blocks.size());
    for (int v : block) p.block_of[v] = idx;
    p.blocks.push_back(std::move(block));
  }
  for (int v = 0; v < x.n; ++v)
    if (p.block_of[v] < 0) throw std::logic_error("partition failed to cover a vertex");
  return p;
}

std::vector<int> padding_radii(const Graph& x, const RandomPartition& p) {
  std::vector<int> pad(x.n, 0);
  for (const auto& block : p.blocks) {
    std::vector<char> inside(x.n, 0);
    for (int v : block) inside[v] = 1;
    std::vector<int> d = dist_to_complement(x, inside);
    for (int v : block) pad[v] = d[v];
  }
  return pad;
}

namespace {

PaddingReport padding_report_common(const Graph& x, double tau, double a_const,
                                    int samples, uint64_t seed, double c_real,
                                    bool parallel) {
  if (samples < 1) throw std::invalid_argument("padding test needs samples >= 1");
  PaddingReport rep;
  rep.tau = tau;
  rep.a_const = a_const;
  rep.samples = samples;
  rep.t = tau / (a_const * (1.0 + std::log(c_real)));
  std::vector<long> counts(x.n, 0);
  double padded_mass = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(+ : padded_mass) if (parallel)
  for (int s = 0; s < samples; ++s) {
    // One deterministic stream per sample index.
    uint64_t stream_seed;
    {
      uint64_t st = seed;
      (void)splitmix64(st);
      stream_seed = st + static_cast<uint64_t>(s);
    }
    RandomPartition p = random_padded_partition(x, tau, stream_seed);
    std::vector<int> pad = padding_radii(x, p);
    for (int v = 0; v < x.n; ++v) {
      if (pad[v] >= rep.t) {
#pragma omp atomic
        counts[v]++;
        padded_mass += 1.0;
      }
    }
  }
  rep.per_point_frequency.resize(x.n);
  double min_f = 1.0, sum_f = 0.0;
  for (int v = 0; v < x.n; ++v) {
    const double f = static_cast<double>(counts[v]) / samples;
    rep.per_point_frequency[v] = f;
    min_f = std::min(min_f, f);
    sum_f += f;
  }
  rep.min_point_frequency = min_f;
  rep.mean_point_frequency = sum_f / x.n;
  rep.mean_padded_mass_fraction = padded_mass / (static_cast<double>(samples) * x.n);
  rep.threshold = 0.5 - 3.0 * std::sqrt(0.25 / samples);
  rep.pass = rep.min_point_frequency >= rep.threshold;
  return rep;
}

}  // namespace

PaddingReport padding_probability_test(const Graph& x, double tau, double a_const,
                                       int samples, uint64_t seed, double c_real) {
  return padding_report_common(x, tau, a_const, samples, seed, c_real, true);
}

PaddingReport padding_probability_test_serial(const Graph& x, double tau, double a_const,
                                              int samples, uint64_t seed, double c_real) {
  return padding_report_common(x, tau, a_const, samples, seed, c_real, false);
}

namespace {

double padded_fraction_at(const Graph& x, const std::vector<int>& set, double t) {
  if (set.empty()) return 0.0;
  std::vector<char> inside(x.n, 0);
  for (int v : set) inside[v] = 1;
  std::vector<int> d = dist_to_complement(x, inside);
  int padded = 0;
  for (int v : set)
    if (d[v] >= t) ++padded;
  return static_cast<double>(padded) / set.size();
}

}  // namespace

GoodSetFamily build_good_family(const Graph& x, int k, uint64_t seed, double c_real,
                                double a_const) {
  GoodSetFamily fam;
  fam.k = k;
  fam.seed = seed;
  if (k < 1) throw std::invalid_argument("build_good_family: k >= 1");

  if (k == 1) {
    // Single-set route via the ball-mass lemma window: a BFS-prefix of half
    // the vertices always lands in [n/(2c), (1-1/(2c)) n] for c >= 1.
    const int half = x.n / 2;
    if (half < 1) throw InfeasibleError("graph too small for a test set");
    std::vector<int> set(half);
    std::iota(set.begin(), set.end(), 0);
    fam.tau = x.diameter / 20.0;
    fam.t = 1.0;
    fam.padded_fraction.push_back(padded_fraction_at(x, set, fam.t));
    fam.masses.push_back(half);
    fam.sets.push_back(std::move(set));
    const double lo = x.n / (2.0 * c_real);
    const double hi = (1.0 - 1.0 / (2.0 * c_real)) * x.n;
    if (half < lo || half > hi)
      throw std::logic_error("k=1 set violates the ball-mass sizing window");
    return fam;
  }

  // Direct search for the largest integer tau with max_x |B(x, 2 tau)| <= n/(8k).
  const double cap = static_cast<double>(x.n) / (8.0 * k);
  int tau = 0;
  for (int cand = 1; 2 * cand <= x.diameter + 1; ++cand) {
    int max_ball = 0;
    for (int v = 0; v < x.n; ++v) {
      const uint16_t* row = x.dist_row(v);
      int count = 0;
      for (int u = 0; u < x.n; ++u)
        if (row[u] <= 2 * cand) ++count;
      max_ball = std::max(max_ball, count);
    }
    if (max_ball <= cap)
      tau = cand;
    else
      break;
  }
  if (tau < 1)
    throw InfeasibleError("build_good_family: no integer tau satisfies |B(2tau)| <= n/(8k)");
  fam.tau = tau;
  fam.t = tau / (a_const * (1.0 + std::log(c_real)));

  const double lo = x.n / (8.0 * k);
  const double hi = x.n / (4.0 * k);
  std::string last_error = "no attempts made";
  for (int attempt = 0; attempt < 50; ++attempt) {
    fam.attempts_used = attempt + 1;
    uint64_t st = seed;
    (void)splitmix64(st);
    RandomPartition p = random_padded_partition(x, tau, st + 1000u + attempt);
    std::vector<int> pad = padding_radii(x, p);

    std::vector<int> good_blocks;
    long good_mass = 0;
    for (size_t b = 0; b < p.blocks.size(); ++b) {
      int padded = 0;
      for (int v : p.blocks[b])
        if (pad[v] >= fam.t) ++padded;
      if (padded * 4 >= static_cast<int>(p.blocks[b].size())) {
        good_blocks.push_back(static_cast<int>(b));
        good_mass += p.blocks[b].size();
      }
    }
    if (good_mass * 4 < x.n) {
      last_error = "good blocks carry less than 1/4 of the mass";
      continue;
    }

    // First-fit decreasing by block mass into k bins targeting [n/8k, n/4k].
    std::sort(good_blocks.begin(), good_blocks.end(), [&](int a, int b) {
      return p.blocks[a].size() != p.blocks[b].size()
                 ? p.blocks[a].size() > p.blocks[b].size()
                 : a < b;
    });
    std::vector<std::vector<int>> bins(k);
    std::vector<long> bin_mass(k, 0);
    for (int b : good_blocks) {
      for (int i = 0; i < k; ++i) {
        if (bin_mass[i] < lo) {
          bins[i].insert(bins[i].end(), p.blocks[b].begin(), p.blocks[b].end());
          bin_mass[i] += p.blocks[b].size();
          break;
        }
      }
    }
    bool ok = true;
    for (int i = 0; i < k; ++i)
      ok = ok && bin_mass[i] >= lo && bin_mass[i] <= hi;
    if (!ok) {
      last_error = "bin packing missed the mass window";
      continue;
    }
    for (int i = 0; i < k; ++i) {
      std::sort(bins[i].begin(), bins[i].end());
      const double frac = padded_fraction_at(x, bins[i], fam.t);
      // Padding distances only grow under disjoint union, so each bin stays good.
      if (frac < 0.25) throw std::logic_error("union of good blocks is not good");
      fam.padded_fraction.push_back(frac);
      fam.masses.push_back(static_cast<int>(bin_mass[i]));
      fam.sets.push_back(std::move(bins[i]));
    }
    return fam;
  }
  throw InfeasibleError("build_good_family: packing failed after 50 seeds (" +
                        last_error + ")");
}

LambdaKBound lambda_k_upper_bound(const Graph& x, int k, uint64_t seed, double c_real) {
  LambdaKBound out;
  out.family = build_good_family(x, k, seed, c_real);
  out.k_effective = std::max(2, k);
  std::vector<Eigen::VectorXd> fs;
  for (const auto& set : out.family.sets) {
    std::vector<char> inside(x.n, 0);
    for (int v : set) inside[v] = 1;
    std::vector<int> d = dist_to_complement(x, inside);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(x.n);
    for (int v : set) f[v] = d[v];
    fs.push_back(std::move(f));
  }
  for (const auto& f : fs) {
    const double mean = f.sum() / x.n;
    out.rayleigh_values.push_back(dirichlet_energy(x, f) /
                                  (f.array() - mean).matrix().squaredNorm());
  }
  out.bound = rayleigh_upper_bound(x, fs);
  return out;
}

}  // namespace lab
