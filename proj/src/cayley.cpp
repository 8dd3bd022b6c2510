#include "lab/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lab {

namespace {

constexpr uint16_t kUnreached = std::numeric_limits<uint16_t>::max();

void bfs_row(const std::vector<std::vector<int>>& neighbors, int source, uint16_t* row) {
  const int n = static_cast<int>(neighbors.size());
  std::fill(row, row + n, kUnreached);
  std::vector<int> queue;
  queue.reserve(n);
  row[source] = 0;
  queue.push_back(source);
  for (size_t head = 0; head < queue.size(); ++head) {
    const int cur = queue[head];
    for (int nxt : neighbors[cur]) {
      if (row[nxt] == kUnreached) {
        row[nxt] = static_cast<uint16_t>(row[cur] + 1);
        queue.push_back(nxt);
      }
    }
  }
}

}  // namespace

std::vector<uint16_t> all_pairs_distances_serial(const std::vector<std::vector<int>>& neighbors) {
  const int n = static_cast<int>(neighbors.size());
  std::vector<uint16_t> table(static_cast<size_t>(n) * n);
  for (int src = 0; src < n; ++src) bfs_row(neighbors, src, &table[static_cast<size_t>(src) * n]);
  return table;
}

std::vector<uint16_t> all_pairs_distances(const std::vector<std::vector<int>>& neighbors) {
  const int n = static_cast<int>(neighbors.size());
  std::vector<uint16_t> table(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(dynamic, 16)
  for (int src = 0; src < n; ++src) bfs_row(neighbors, src, &table[static_cast<size_t>(src) * n]);
  return table;
}

void finalize_distances(Graph& graph) {
  graph.dist_table = all_pairs_distances(graph.neighbors);
  int diam = 0;
  for (uint16_t d : graph.dist_table) {
    if (d == kUnreached) throw std::invalid_argument("graph is not connected");
    diam = std::max(diam, static_cast<int>(d));
  }
  graph.diameter = diam;
}

CayleyGraph build_cayley(const FiniteGroup& g, const GeneratingSet& s) {
  CayleyGraph x;
  x.group = g;
  x.gens = s;
  x.graph.n = g.order;
  x.graph.degree = s.degree();
  x.graph.neighbors.assign(g.order, {});
  for (int v = 0; v < g.order; ++v) {
    x.graph.neighbors[v].reserve(s.degree());
    for (int gen : s.elements) x.graph.neighbors[v].push_back(g.mul(v, gen));
  }
  finalize_distances(x.graph);
  return x;
}

std::vector<int> ball_profile(const Graph& x, int center) {
  std::vector<int> sizes(x.diameter + 1, 0);
  const uint16_t* row = x.dist_row(center);
  for (int v = 0; v < x.n; ++v) sizes[row[v]]++;
  for (int r = 1; r <= x.diameter; ++r) sizes[r] += sizes[r - 1];
  return sizes;
}

DoublingProfile doubling_profile(const Graph& x) {
  DoublingProfile p;
  p.diam = x.diameter;
  p.ball_sizes = ball_profile(x, 0);
  auto ball = [&](int r) { return p.ball_sizes[std::min(r, x.diameter)]; };
  for (int r = 0; r <= x.diameter; ++r) {
    const double base = ball(r);
    const double at_2r = ball(2 * r) / base;
    const double at_2r1 = ball(2 * r + 1) / base;
    // |B(2R)|/|B(R)| is at_2r for R = r and approaches at_2r1 as R -> r+1/2.
    if (at_2r > p.c_real) {
      p.c_real = at_2r;
      p.argmax_real = r;
    }
    if (at_2r1 > p.c_real) {
      p.c_real = at_2r1;
      p.argmax_real = r + 0.5;
    }
    if (r >= 1 && at_2r > p.c_int) {
      p.c_int = at_2r;
      p.argmax_int = r;
    }
  }
  return p;
}

std::vector<int> greedy_net(const Graph& x, double tau) {
  std::vector<int> all(x.n);
  for (int v = 0; v < x.n; ++v) all[v] = v;
  return greedy_net_within(x, all, tau);
}

std::vector<int> greedy_net_within(const Graph& x, const std::vector<int>& domain, double tau) {
  const int sep = static_cast<int>(std::floor(std::max(0.0, tau)));
  std::vector<int> net;
  for (int v : domain) {
    bool far = true;
    for (int c : net) {
      if (x.dist(v, c) <= sep) {
        far = false;
        break;
      }
    }
    if (far) net.push_back(v);
  }
  return net;
}

CoverCheck cover_count_check(const Graph& x, double radius, double eps, double k_const) {
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("cover_count_check: eps in (0,1)");
  const int big = static_cast<int>(std::floor(radius));
  const int small = static_cast<int>(std::floor(eps * radius));
  std::vector<int> ball;
  const uint16_t* row = x.dist_row(0);
  for (int v = 0; v < x.n; ++v)
    if (row[v] <= big) ball.push_back(v);

  std::vector<int> net = greedy_net_within(x, ball, eps * radius);
  std::vector<char> covered(x.n, 0);
  CoverCheck out;
  for (int c : net) {
    bool useful = false;
    for (int v : ball)
      if (!covered[v] && x.dist(c, v) <= small) useful = true;
    if (!useful) continue;
    for (int v : ball)
      if (x.dist(c, v) <= small) covered[v] = 1;
    out.centers.push_back(c);
  }
  for (int v : ball)
    if (!covered[v]) throw std::logic_error("greedy net failed to cover its ball");
  out.count = static_cast<int>(out.centers.size());
  const double c_real = doubling_profile(x).c_real;
  out.bound = std::pow(c_real, k_const * std::log2(1.0 / eps));
  out.pass = out.count <= out.bound;
  return out;
}

int intersection_multiplicity(const Graph& x, const std::vector<int>& centers, double r) {
  const int small = static_cast<int>(std::floor(r / 3.0));
  for (size_t i = 0; i < centers.size(); ++i)
    for (size_t j = i + 1; j < centers.size(); ++j)
      if (x.dist(centers[i], centers[j]) <= 2 * small)
        throw std::invalid_argument("intersection_multiplicity: r/3 balls are not disjoint");
  const int big = static_cast<int>(std::floor(r));
  int mult = 0;
  for (int v = 0; v < x.n; ++v) {
    int hits = 0;
    for (int c : centers)
      if (x.dist(c, v) <= big) ++hits;
    mult = std::max(mult, hits);
  }
  return mult;
}

MeasureLemmaReport measure_lemma_checks(const Graph& x, double c_real, double meassym_const) {
  MeasureLemmaReport rep;
  auto add = [&rep](const std::string& name, double lhs, double rhs) {
    const bool ok = lhs <= rhs;
    rep.entries.push_back({name, lhs, rhs, ok});
    rep.all_pass = rep.all_pass && ok;
  };
  // Vertex-transitive inputs make every basepoint equivalent; three fixed
  // basepoints are checked anyway.
  const int centers[3] = {0, x.n / 2, x.n - 1};
  for (int c : centers) {
    std::vector<int> sizes = ball_profile(x, c);
    auto ball = [&](int r) { return sizes[std::min(std::max(r, 0), x.diameter)]; };
    for (int r = 10; r <= x.diameter; ++r)
      add("measlem c=" + std::to_string(c) + " R=" + std::to_string(r),
          ball(r / 10), (1.0 - 1.0 / (2.0 * c_real)) * ball(r));
    for (int j = 1; j <= 6; ++j) {
      const double eps = std::pow(2.0, -j);
      const int r = static_cast<int>(std::floor(eps * x.diameter));
      add("meassym c=" + std::to_string(c) + " eps=2^-" + std::to_string(j),
          ball(r), meassym_const * (1.0 + eps * x.n));
      add("smallmeas c=" + std::to_string(c) + " eps=2^-" + std::to_string(j),
          ball(r), 1.0 + x.n * std::pow(1.0 - 1.0 / (2.0 * c_real), j));
    }
  }
  return rep;
}

std::vector<int> dist_to_complement(const Graph& x, const std::vector<char>& inside) {
  std::vector<int> dist(x.n, -1);
  std::vector<int> queue;
  for (int v = 0; v < x.n; ++v) {
    if (!inside[v]) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  if (queue.empty()) {
    // No complement: every distance is effectively infinite; report diameter+1.
    return std::vector<int>(x.n, x.diameter + 1);
  }
  for (size_t head = 0; head < queue.size(); ++head) {
    const int cur = queue[head];
    for (int nxt : x.neighbors[cur]) {
      if (dist[nxt] < 0) {
        dist[nxt] = dist[cur] + 1;
        queue.push_back(nxt);
      }
    }
  }
  return dist;
}

}  // namespace lab
