#include <doctest.h>

#include <json.hpp>

#include "lab/action.hpp"
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

TEST_CASE("translation action is isometric and multiplicative") {
  CayleyGraph x = build_named("d16");
  Eigen::MatrixXd lap = assemble_laplacian(x.graph);
  Spectrum sp = full_spectrum(lap);
  Eigen::VectorXd f = sp.eigenvectors.col(5);
  for (int g : {1, 7, 20}) {
    Eigen::VectorXd rf = apply_translation(x.group, g, f);
    CHECK(rf.norm() == doctest::Approx(f.norm()));
    for (int h : {2, 13}) {
      Eigen::VectorXd a = apply_translation(x.group, g, apply_translation(x.group, h, f));
      Eigen::VectorXd b = apply_translation(x.group, x.group.mul(g, h), f);
      CHECK((a - b).norm() == doctest::Approx(0.0));
    }
  }
  CHECK(commutation_residual(x, lap, {0, 1, 9, 31}, {f, sp.eigenvectors.col(1)}) <= 1e-10);
}

TEST_CASE("C12 restriction acts by 2x2 rotations") {
  CayleyGraph x = build_named("c12");
  Spectrum sp = full_spectrum(assemble_laplacian(x.graph));
  ActionRestriction act = restrict_action(x, sp, 2);
  REQUIRE(act.basis.cols() == 2);
  for (int g = 0; g < 12; ++g) {
    const Eigen::MatrixXd& m = act.matrices[g];
    // Orthogonal with determinant 1: a plane rotation.
    CHECK((m * m.transpose() - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-9);
    CHECK(m.determinant() == doctest::Approx(1.0));
  }
  KernelReport ker = kernel(x, act);
  CHECK(ker.members == std::vector<int>{0});
  CHECK(ker.index == 12);
}

TEST_CASE("Z6 x Z2 kernel is the Z2 factor and the quotient is a looped C6") {
  CayleyGraph x = build_named("z6x2");
  Spectrum sp = full_spectrum(assemble_laplacian(x.graph));
  CHECK(sp.lambda(2) == doctest::Approx(1.0 / 3.0));
  ActionRestriction act = restrict_action(x, sp, 2);
  KernelReport ker = kernel(x, act);
  REQUIRE(ker.members.size() == 2);
  CHECK(ker.index == 6);
  CHECK(element_order(x.group, ker.members[1]) == 2);

  Eigen::VectorXd f = act.basis.col(0);
  QuotientAnalysis qa = quotient_pushdown(x, ker.members, f, sp.lambda(2));
  CHECK(qa.graph.n == 6);
  CHECK(qa.graph.degree == 3);
  CHECK(qa.loops_per_vertex == 1);      // the Z2 generator lands in the kernel
  CHECK(qa.coset_variance <= 1e-12);
  CHECK(qa.pushdown_residual <= 1e-8);  // eigen-equation survives the pushdown
  CHECK(qa.lambda2_quotient == doctest::Approx(sp.lambda(2)));
}

TEST_CASE("pushdown rejects functions that vary on cosets") {
  CayleyGraph x = build_named("z6x2");
  Spectrum sp = full_spectrum(assemble_laplacian(x.graph));
  ActionRestriction act = restrict_action(x, sp, 2);
  KernelReport ker = kernel(x, act);
  Eigen::VectorXd bad = Eigen::VectorXd::Zero(12);
  bad[ker.members[1]] = 1.0;  // supported on one point of a 2-element coset
  CHECK_THROWS(quotient_pushdown(x, ker.members, bad, sp.lambda(2)));
}

TEST_CASE("exact Cheeger constants") {
  BuiltGroup c6 = build_group(parse_group_spec(
      json{{"kind", "cyclic"}, {"name", "c6"}, {"params", {{"n", 6}}}, {"generators", {1}}}));
  BuiltGroup k4 = build_group(parse_group_spec(
      json{{"kind", "product_of_cyclics"}, {"name", "k4"},
           {"params", {{"moduli", {2, 2}}}},
           {"generators", {{1, 0}, {0, 1}, {1, 1}}}}));
  auto cay6 = build_cayley(c6.group, c6.gens);
  CheegerResult h6 = cheeger(cay6.graph);
  CHECK(h6.exact);
  CHECK(h6.h == doctest::Approx(2.0 / 3.0));  // arc of three vertices
  auto cayk4 = build_cayley(k4.group, k4.gens);
  CheegerResult hk = cheeger(cayk4.graph);
  CHECK(hk.exact);
  CHECK(hk.h == doctest::Approx(2.0));
}

TEST_CASE("representation report chain on the zoo") {
  for (const char* name : {"c12", "z6x2", "z2_4", "heis3"}) {
    CAPTURE(name);
    CayleyGraph x = build_named(name);
    Spectrum sp = full_spectrum(assemble_laplacian(x.graph));
    RepresentationReport rep = representation_report(x, sp);
    CHECK(rep.chain_holds);
    CHECK(rep.image_size * rep.kernel_size == x.group.order);
    CHECK(rep.image_size >= rep.image_lower_bound);
  }
}

TEST_CASE("Zm certificate: Z6 x Z2 and the engineered S4 quotient") {
  CayleyGraph z = build_named("z6x2");
  Spectrum spz = full_spectrum(assemble_laplacian(z.graph));
  ActionRestriction act = restrict_action(z, spz, 2);
  KernelReport ker = kernel(z, act);
  ZmCertificate cz = zm_certificate(z, ker.members, spz.multiplicity(2));
  CHECK(cz.attempted);
  CHECK(cz.index == 1);
  CHECK(cz.m == 6);

  CayleyGraph s4 = build_named("s4");
  // Engineer H = V4: the double transpositions form the order-2 conjugacy
  // class of size 3.
  std::vector<int> seeds;
  for (int a = 1; a < 24; ++a) {
    if (element_order(s4.group, a) != 2) continue;
    std::set<int> cls;
    for (int t = 0; t < 24; ++t)
      cls.insert(s4.group.mul(s4.group.mul(t, a), s4.group.inv(t)));
    if (cls.size() == 3) seeds.push_back(a);
  }
  std::vector<int> v4 = subgroup_generated(s4.group, seeds);
  REQUIRE(v4.size() == 4);
  ZmCertificate cs = zm_certificate(s4, v4, 3);
  CHECK(cs.attempted);
  CHECK(cs.m == 3);      // A = A3 inside S3
  CHECK(cs.index == 2);
  CHECK(is_normal(s4.group, cs.normal_subgroup));
  CHECK(cs.normal_subgroup.size() == 12);  // preimage is A4
}
