#include <doctest.h>

#include <json.hpp>

#include "lab/partitions.hpp"
#include "lab/spectral.hpp"
#include "lab/zoo.hpp"

using namespace lab;
using nlohmann::json;

namespace {

CayleyGraph build_named(const std::string& name) {
  for (const auto& [n, doc] : builtin_zoo())
    if (n == name) {
      BuiltGroup bg = build_group(parse_group_spec(doc));
      return build_cayley(bg.group, bg.gens);
    }
  throw std::runtime_error("no zoo entry " + name);
}

}  // namespace

TEST_CASE("random partition invariants") {
  CayleyGraph x = build_named("c64");
  for (uint64_t seed : {1ull, 2ull, 99ull}) {
    CAPTURE(seed);
    const double tau = 16.0;
    RandomPartition p = random_padded_partition(x.graph, tau, seed);
    CHECK(p.alpha >= 0.25);
    CHECK(p.alpha <= 0.5);
    // Exact cover.
    std::vector<int> owner(64, -1);
    for (size_t b = 0; b < p.blocks.size(); ++b)
      for (int v : p.blocks[b]) {
        CHECK(owner[v] == -1);
        owner[v] = static_cast<int>(b);
      }
    for (int v = 0; v < 64; ++v) {
      CHECK(owner[v] >= 0);
      CHECK(p.block_of[v] == owner[v]);
    }
    // Diameter bound: each block sits inside a ball of radius floor(alpha tau).
    for (const auto& block : p.blocks)
      for (int a : block)
        for (int b : block) CHECK(x.graph.dist(a, b) <= tau);
  }
}

TEST_CASE("partition replay is exact") {
  CayleyGraph x = build_named("z16x4");
  RandomPartition a = random_padded_partition(x.graph, 8.0, 7);
  RandomPartition b = random_padded_partition(x.graph, 8.0, 7);
  CHECK(a.alpha == b.alpha);
  CHECK(a.pi == b.pi);
  CHECK(a.blocks == b.blocks);
  RandomPartition c = random_padded_partition(x.graph, 8.0, 8);
  CHECK(a.blocks != c.blocks);  // different seed actually changes the draw
}

TEST_CASE("padding radii are consistent with blocks") {
  CayleyGraph x = build_named("c64");
  RandomPartition p = random_padded_partition(x.graph, 12.0, 3);
  std::vector<int> rad = padding_radii(x.graph, p);
  for (int v = 0; v < 64; ++v) {
    // B(v, rad[v]-1) stays inside the block of v.
    if (rad[v] > 0)
      for (int w = 0; w < 64; ++w)
        if (x.graph.dist(v, w) < rad[v]) CHECK(p.block_of[w] == p.block_of[v]);
  }
}

TEST_CASE("padding probability beats the Monte Carlo threshold") {
  CayleyGraph x = build_named("c64");
  const double c_real = 3.0;
  PaddingReport rep = padding_probability_test(x.graph, 16.0, 16.0, 400, 1, c_real);
  CHECK(rep.pass);
  CHECK(rep.min_point_frequency >= rep.threshold);
  CHECK(rep.threshold == doctest::Approx(0.5 - 3.0 * std::sqrt(0.25 / 400)));
  PaddingReport serial = padding_probability_test_serial(x.graph, 16.0, 16.0, 400, 1, c_real);
  CHECK(rep.per_point_frequency == serial.per_point_frequency);
  CHECK(rep.min_point_frequency == serial.min_point_frequency);
}

TEST_CASE("good family k=1 reproduces the C12 half-cycle bound") {
  CayleyGraph x = build_named("c12");
  GoodSetFamily fam = build_good_family(x.graph, 1, 1, 3.0);
  CHECK(fam.sets.size() == 1);
  CHECK(fam.sets[0].size() == 6);
  LambdaKBound lb = lambda_k_upper_bound(x.graph, 1, 1, 3.0);
  CHECK(lb.k_effective == 2);
  CHECK(lb.bound == doctest::Approx(3.0 / 16.0));
}

TEST_CASE("good family k>=2 respects the mass window") {
  CayleyGraph x = build_named("c256");
  const double c_real = 3.0;
  for (int k : {2, 3, 4}) {
    CAPTURE(k);
    GoodSetFamily fam = build_good_family(x.graph, k, 1, c_real);
    REQUIRE(static_cast<int>(fam.sets.size()) == k);
    const double lo = 256.0 / (8 * k), hi = 256.0 / (4 * k);
    std::vector<char> seen(256, 0);
    for (const auto& s : fam.sets) {
      CHECK(s.size() >= lo);
      CHECK(s.size() <= hi);
      for (int v : s) {
        CHECK(!seen[v]);
        seen[v] = 1;
      }
    }
  }
}

TEST_CASE("min-max bounds are valid on C256") {
  CayleyGraph x = build_named("c256");
  Spectrum sp = full_spectrum(assemble_laplacian(x.graph));
  for (int k : {1, 2, 3, 4}) {
    CAPTURE(k);
    LambdaKBound lb = lambda_k_upper_bound(x.graph, k, 1, 3.0);
    CHECK(lb.bound >= sp.lambda(lb.k_effective));
  }
}

TEST_CASE("infeasible k throws InfeasibleError") {
  CayleyGraph x = build_named("c12");
  // n/(8k) < 1 admissible mass window is empty long before k = 12.
  CHECK_THROWS_AS(build_good_family(x.graph, 12, 1, 3.0), InfeasibleError);
}
