#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "grw/metric_field.hpp"
#include "grw/snapshot.hpp"
#include "grw/tensor_ops.hpp"
#include "grw/warped_product.hpp"
#include "support/checks.hpp"

using grw::CurvatureSnapshot;
using grw::DenseTensor;
using grw::MetricField;
using grw::MetricJet;

namespace {

// Snapshot-level sanity battery shared by every fixture below: curvature
// symmetries, Ricci/scalar consistency under re-contraction, Weyl trace.
void check_snapshot_invariants(const CurvatureSnapshot& s) {
  const double rscale = std::max(s.R.norm(), 1e-300);
  CHECK(s.R.symmetry_violation(grw::Symmetry::GeneralizedCurvature) <= 1e-9);

  // S_ij = g^{hk} R_{hijk}
  DenseTensor S = DenseTensor::zeros(s.dim, 2, grw::Symmetry::None);
  for (int i = 0; i < s.dim; ++i)
    for (int j = 0; j < s.dim; ++j) {
      double acc = 0.0;
      for (int h = 0; h < s.dim; ++h)
        for (int k = 0; k < s.dim; ++k) acc += s.g_inv(h, k) * s.R(h, i, j, k);
      S(i, j) = acc;
    }
  CHECK((S -= s.S, S.norm()) / std::max(s.S.norm(), rscale) <= 1e-10);

  double kappa = 0.0;
  for (int i = 0; i < s.dim; ++i)
    for (int j = 0; j < s.dim; ++j) kappa += s.g_inv(i, j) * s.S(i, j);
  CHECK(std::abs(kappa - s.kappa) <=
        1e-10 * std::max({std::abs(s.kappa), s.S.norm(), 1.0}));

  // G = (1/2) g wedge g
  DenseTensor G = grw::kulkarni_nomizu(s.g, s.g).scaled(0.5);
  CHECK(grw::relative_difference(G, s.G) <= 1e-12);

  // all metric traces of the Weyl tensor vanish
  double trace = 0.0;
  for (int i = 0; i < s.dim; ++i)
    for (int j = 0; j < s.dim; ++j) {
      double acc = 0.0;
      for (int h = 0; h < s.dim; ++h)
        for (int k = 0; k < s.dim; ++k) acc += s.g_inv(h, k) * s.C(h, i, j, k);
      trace = std::max(trace, std::abs(acc));
    }
  CHECK(trace / rscale <= 1e-9);
}

}  // namespace

TEST_CASE("two-jet of the flat field vanishes identically") {
  MetricField f = grw::flat_field(4, 1);
  MetricJet jet = f.two_jet({0.3, -1.2, 0.0, 2.0});
  CHECK(jet.g[0][0] == -1.0);
  CHECK(jet.g[3][3] == 1.0);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        CHECK(jet.dg[k][i][j] == 0.0);
        for (int l = 0; l < 4; ++l) CHECK(jet.ddg[k][l][i][j] == 0.0);
      }
}

TEST_CASE("sphere field jet at the equator") {
  MetricField f = grw::sphere_field(2);
  const double t = std::acos(-1.0) / 2.0;
  MetricJet jet = f.two_jet({t, 0.4});
  CHECK(jet.g[0][0] == doctest::Approx(1.0));
  CHECK(jet.g[1][1] == doctest::Approx(1.0));
  // d/dtheta sin^2(theta) = sin(2 theta) = 0 at the equator
  CHECK(std::abs(jet.dg[0][1][1]) <= 1e-14);
  CHECK(jet.ddg[0][0][1][1] == doctest::Approx(-2.0));
}

TEST_CASE("conformal field first derivatives at the origin") {
  MetricField f = grw::conformal_field(4, 0, {0.1, 0.0, 0.0, 0.0});
  MetricJet jet = f.two_jet({0.0, 0.0, 0.0, 0.0});
  for (int i = 0; i < 4; ++i) {
    CHECK(jet.dg[0][i][i] == doctest::Approx(0.2));
    CHECK(jet.dg[1][i][i] == doctest::Approx(0.0));
  }
}

TEST_CASE("analytic jets agree with a finite-difference probe") {
  struct Case {
    MetricField field;
    std::vector<double> x;
  };
  std::vector<Case> cases;
  cases.push_back({grw::sphere_field(3), {0.9, 1.1, 0.3}});
  cases.push_back({grw::s2xs2_field(), {0.8, 0.2, 1.3, -0.4}});
  cases.push_back({grw::conformal_field(4, 1, {0.1, -0.05, 0.2, 0.0}),
                   {0.2, 0.1, -0.3, 0.5}});
  cases.push_back({grw::random_metric_field(4, 0, 17, 0.25), {0.4, -0.2, 0.1, 0.6}});
  cases.push_back({grw::random_metric_field(5, 1, 3, 0.25),
                   {0.1, 0.2, -0.1, 0.05, -0.3}});
  for (const Case& c : cases) {
    CHECK(testkit::dg_fd_deviation(c.field, c.x) <= 1e-8);
    CHECK(testkit::ddg_fd_deviation(c.field, c.x) <= 1e-5);
  }
}

TEST_CASE("jet-arithmetic catalog variants match the closed-form jets") {
  const std::vector<double> xs{1.1, 0.7, 0.4};
  MetricJet a = grw::sphere_field(3).two_jet(xs);
  MetricJet b = grw::sphere_field_ad(3).two_jet(xs);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        worst = std::max(worst, std::abs(a.dg[k][i][j] - b.dg[k][i][j]));
        for (int l = 0; l < 3; ++l)
          worst = std::max(worst, std::abs(a.ddg[k][l][i][j] - b.ddg[k][l][i][j]));
      }
  CHECK(worst <= 1e-12);

  const std::vector<double> x4{0.9, 0.3, 1.2, -0.1};
  MetricJet c = grw::s2xs2_field().two_jet(x4);
  MetricJet d = grw::s2xs2_field_ad().two_jet(x4);
  worst = 0.0;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        worst = std::max(worst, std::abs(c.dg[k][i][j] - d.dg[k][i][j]));
  CHECK(worst <= 1e-12);
}

TEST_CASE("christoffel symbols vanish on the flat field") {
  MetricJet jet = grw::flat_field(4, 1).two_jet({1.0, 2.0, 3.0, 4.0});
  grw::Christoffels ch = grw::christoffel(jet);
  double worst = 0.0;
  for (int h = 0; h < 4; ++h)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(ch.G(h, i, j)));
  CHECK(worst == 0.0);
}

TEST_CASE("christoffel symbols reproduce the metric derivative") {
  // d_k g_ij = g_lj G^l_ki + g_il G^l_kj, checked on a random field
  MetricField f = grw::random_metric_field(4, 0, 5, 0.25);
  const std::vector<double> x{0.3, -0.1, 0.2, 0.5};
  MetricJet jet = f.two_jet(x);
  grw::Christoffels ch = grw::christoffel(jet);
  double worst = 0.0;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double acc = 0.0;
        for (int l = 0; l < 4; ++l)
          acc += jet.g[l][j] * ch.G(l, k, i) + jet.g[i][l] * ch.G(l, k, j);
        worst = std::max(worst, std::abs(acc - jet.dg[k][i][j]));
      }
  CHECK(worst <= 1e-12);
}

TEST_CASE("warped-product christoffel blocks at x1 = 1") {
  // F = (2 x1 + 3)^2 over a flat 3-dimensional fiber; the base-fiber blocks
  // carry F'/(2F) and -(eps/2) F' on the fiber diagonal.
  for (int eps : {1, -1}) {
    MetricField f = grw::warped_metric_field(
        eps, grw::WarpingFunction::quadratic(2.0, 3.0), grw::flat_field(3, 0));
    MetricJet jet = f.two_jet({1.0, 0.2, -0.4, 0.7});
    grw::Christoffels ch = grw::christoffel(jet);
    for (int a = 1; a < 4; ++a) {
      CHECK(ch.G(0, a, a) == doctest::Approx(-0.5 * eps * 20.0));
      CHECK(ch.G(a, 0, a) == doctest::Approx(0.4));
      CHECK(ch.G(a, a, 0) == doctest::Approx(0.4));
    }
    CHECK(std::abs(ch.G(0, 0, 0)) <= 1e-14);
    CHECK(std::abs(ch.G(1, 2, 3)) <= 1e-14);
  }
}

TEST_CASE("snapshot of the flat field is flat") {
  CurvatureSnapshot s = grw::snapshot_from_field(grw::flat_field(4, 1),
                                                 {0.1, 0.2, 0.3, 0.4});
  CHECK(s.R.norm() <= 1e-14);
  CHECK(s.S.norm() <= 1e-14);
  CHECK(std::abs(s.kappa) <= 1e-14);
  CHECK(s.C.norm() <= 1e-14);
  CHECK(s.signature.first == 1);
}

TEST_CASE("unit three-sphere snapshot has constant curvature 6") {
  CurvatureSnapshot s =
      grw::snapshot_from_field(grw::sphere_field(3), {1.1, 0.8, 0.3});
  CHECK(s.kappa == doctest::Approx(6.0).epsilon(1e-10));
  CHECK(s.C.norm() <= 1e-9 * s.R.norm());
  // R = kappa / ((n-1) n) G on a space form
  CHECK(grw::relative_difference(s.R, s.G.scaled(1.0)) <= 1e-9);
  check_snapshot_invariants(s);
}

TEST_CASE("product of two unit spheres is Einstein but not a space form") {
  CurvatureSnapshot s =
      grw::snapshot_from_field(grw::s2xs2_field(), {0.9, 0.1, 1.2, 0.5});
  CHECK(s.kappa == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(grw::relative_difference(s.S, s.g) <= 1e-10);
  CHECK(s.C.norm() > 0.1 * s.R.norm());  // genuinely non-conformally-flat
  check_snapshot_invariants(s);
}

TEST_CASE("field snapshots agree with the synthetic catalog") {
  // chart route and constant-curvature oracle, compared through invariants
  CurvatureSnapshot field = grw::snapshot_from_field(grw::sphere_field(4),
                                                     {1.0, 0.9, 1.2, 0.4});
  grw::CurvatureSnapshot oracle = grw::space_form_snapshot(4, 0, 12.0);
  CHECK(std::abs(field.kappa - oracle.kappa) <= 1e-7);
  CHECK(grw::relative_difference(field.R, field.G.scaled(field.kappa / 12.0)) <=
        1e-7);

  // product route in the same chart as the product field: blocks must match
  CurvatureSnapshot a =
      grw::snapshot_from_field(grw::sphere_field(2), {0.9, 0.1});
  CurvatureSnapshot b =
      grw::snapshot_from_field(grw::sphere_field(2), {1.2, 0.5});
  CurvatureSnapshot prod = grw::product_snapshot(a, b);
  CurvatureSnapshot direct =
      grw::snapshot_from_field(grw::s2xs2_field(), {0.9, 0.1, 1.2, 0.5});
  CHECK(grw::snapshot_difference(prod, direct) <= 1e-7);
}

TEST_CASE("three-dimensional snapshots have no Weyl part") {
  CurvatureSnapshot s = grw::snapshot_from_field(
      grw::random_metric_field(3, 0, 9, 0.25), {0.2, -0.3, 0.1});
  CHECK(s.C.norm() <= 1e-9 * s.R.norm());
  check_snapshot_invariants(s);
}

TEST_CASE("space form snapshots") {
  grw::CurvatureSnapshot s = grw::space_form_snapshot(3, 0, 6.0);
  CHECK(grw::relative_difference(s.S, s.g.scaled(2.0)) <= 1e-12);
  CHECK(s.C.norm() <= 1e-12);

  grw::CurvatureSnapshot flat = grw::space_form_snapshot(4, 1, 0.0);
  CHECK(flat.R.norm() == 0.0);
  CHECK(flat.signature.first == 1);

  grw::CurvatureSnapshot hyp = grw::space_form_snapshot(4, 0, -12.0);
  CHECK(grw::relative_difference(hyp.R, hyp.G.scaled(-1.0)) <= 1e-12);
  check_snapshot_invariants(hyp);
}

TEST_CASE("product snapshots block-combine the factors") {
  grw::CurvatureSnapshot s2 = grw::space_form_snapshot(2, 0, 2.0);
  grw::CurvatureSnapshot r2 = grw::space_form_snapshot(2, 0, 0.0);
  grw::CurvatureSnapshot p = grw::product_snapshot(s2, r2);
  CHECK(p.dim == 4);
  CHECK(p.kappa == doctest::Approx(2.0));
  // Ricci eigenvalues 1,1,0,0: Einstein fails
  CHECK(p.S(0, 0) == doctest::Approx(1.0));
  CHECK(p.S(2, 2) == doctest::Approx(0.0));
  // no curvature couples the factors
  double cross = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          cross = std::max(cross, std::abs(p.R(i, j, k, l)));
  CHECK(cross == 0.0);
  check_snapshot_invariants(p);

  grw::CurvatureSnapshot ff =
      grw::product_snapshot(grw::space_form_snapshot(2, 0, 0.0), r2);
  CHECK(ff.R.norm() == 0.0);
}

TEST_CASE("synthetic snapshots recontract whatever curvature they are given") {
  grw::CurvatureSnapshot base = grw::space_form_snapshot(4, 0, 12.0);
  grw::CurvatureSnapshot s = grw::synthetic_snapshot(base.g, base.G);
  // S_ij = g^{hk} G_hijk = (n-1) g_ij, kappa = (n-1) n
  CHECK(grw::relative_difference(s.S, s.g.scaled(3.0)) <= 1e-12);
  CHECK(s.kappa == doctest::Approx(12.0));

  DenseTensor bad = base.G;
  bad(0, 1, 0, 1) += 0.3;  // violates pair antisymmetry
  CHECK_THROWS(grw::synthetic_snapshot(base.g, bad));
}

TEST_CASE("random metric fields are seed-deterministic") {
  MetricField a = grw::random_metric_field(4, 1, 42, 0.25);
  MetricField b = grw::random_metric_field(4, 1, 42, 0.25);
  MetricField c = grw::random_metric_field(4, 1, 43, 0.25);
  const std::vector<double> x{0.1, 0.2, 0.3, 0.4};
  MetricJet ja = a.two_jet(x), jb = b.two_jet(x), jc = c.two_jet(x);
  bool identical = true, distinct = false;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        identical = identical && ja.dg[k][i][j] == jb.dg[k][i][j];
        distinct = distinct || ja.dg[k][i][j] != jc.dg[k][i][j];
      }
  CHECK(identical);
  CHECK(distinct);

  MetricField z = grw::random_metric_field(4, 0, 7, 0.0);
  CurvatureSnapshot s = grw::snapshot_from_field(z, x);
  CHECK(s.R.norm() <= 1e-14);
}

TEST_CASE("snapshot invariants hold across the random-field family") {
  for (int dim = 4; dim <= 6; ++dim)
    for (int neg : {0, 1})
      for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        std::vector<double> x(static_cast<std::size_t>(dim), 0.15);
        CurvatureSnapshot s = grw::snapshot_from_field(
            grw::random_metric_field(dim, neg, seed, 0.25), x);
        check_snapshot_invariants(s);
      }
}
