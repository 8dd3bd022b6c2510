#include <doctest.h>

#include <json.hpp>

#include "lab/poincare.hpp"
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

CayleyGraph make_cycle(int n) {
  BuiltGroup bg = build_group(parse_group_spec(
      json{{"kind", "cyclic"}, {"name", "c"}, {"params", {{"n", n}}}, {"generators", {1}}}));
  return build_cayley(bg.group, bg.gens);
}

}  // namespace

TEST_CASE("C4 local constant at R=1 is exactly 1") {
  // B(x,1) is a path of 3 vertices; B(x,3) is the whole 4-cycle.  The extremal
  // f is odd across the center, giving variance = R^2 * energy.
  CayleyGraph x = make_cycle(4);
  PoincareCell cell = local_poincare(x.graph, 0, 1);
  CHECK_FALSE(cell.infinite);
  CHECK(cell.value == doctest::Approx(1.0));
}

TEST_CASE("whole-graph cell equals 1 / (R^2 lambda_2)") {
  CayleyGraph x = build_named("c12");
  Spectrum sp = full_spectrum(assemble_laplacian(x.graph));
  const int R = x.graph.diameter;
  PoincareCell cell = local_poincare(x.graph, 0, R);
  CHECK(cell.value == doctest::Approx(1.0 / (R * R * sp.lambda(2))).epsilon(1e-9));
}

TEST_CASE("vertex transitivity: local constant is center independent") {
  CayleyGraph x = build_named("c64");
  for (int R : {2, 5}) {
    PoincareCell a = local_poincare(x.graph, 0, R);
    PoincareCell b = local_poincare(x.graph, 17, R);
    PoincareCell c = local_poincare(x.graph, 63, R);
    CAPTURE(R);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
    CHECK(a.value == doctest::Approx(c.value).epsilon(1e-9));
  }
}

TEST_CASE("parallel grid sweep matches serial") {
  CayleyGraph x = build_named("z16x4");
  std::vector<int> radii = default_radius_grid(x.graph);
  PoincareEstimate par = global_poincare(x.graph, radii, {0, 5});
  PoincareEstimate ser = global_poincare_serial(x.graph, radii, {0, 5});
  REQUIRE(par.cells.size() == ser.cells.size());
  for (size_t i = 0; i < par.cells.size(); ++i) {
    CHECK(par.cells[i].value == ser.cells[i].value);
    CHECK(par.cells[i].infinite == ser.cells[i].infinite);
  }
  CHECK(par.p_hat == ser.p_hat);
  CHECK(par.argmax_center == ser.argmax_center);
  CHECK(par.argmax_radius == ser.argmax_radius);
}

TEST_CASE("radius grid covers small and whole-graph scales") {
  CayleyGraph x = build_named("c64");
  std::vector<int> grid = default_radius_grid(x.graph);
  CHECK(grid.front() == 1);
  CHECK(grid.back() == x.graph.diameter);
}

TEST_CASE("KSC comparison on doubling graphs") {
  for (const char* name : {"c12", "c64", "z16x4", "d16"}) {
    CAPTURE(name);
    CayleyGraph x = build_named(name);
    DoublingProfile prof = doubling_profile(x.graph);
    KscCheck chk = ksc_bound_check(x.graph, prof.c_real);
    CHECK(chk.pass);
    CHECK(chk.bound == doctest::Approx(16.0 * std::pow(prof.c_real, 3.0)));
  }
}
