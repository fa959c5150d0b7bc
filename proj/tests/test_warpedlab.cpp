#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "grw/conditions.hpp"
#include "grw/metric_field.hpp"
#include "grw/snapshot.hpp"
#include "grw/suites.hpp"
#include "grw/tensor_ops.hpp"
#include "grw/warped_product.hpp"
#include "grw/warping.hpp"

using grw::CurvatureSnapshot;
using grw::DenseTensor;
using grw::WarpedSpec;
using grw::WarpingFunction;
using grw::WarpingJet;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("quadratic warping jets") {
  WarpingFunction w = WarpingFunction::quadratic(2.0, 3.0);
  WarpingJet j = w.jet(1.0);
  CHECK(j.F == doctest::Approx(25.0));
  CHECK(j.dF == doctest::Approx(20.0));
  CHECK(j.ddF == doctest::Approx(8.0));

  WarpingFunction one = WarpingFunction::quadratic(0.0, 1.0);
  WarpingJet j1 = one.jet(5.0);
  CHECK(j1.F == 1.0);
  CHECK(j1.dF == 0.0);
  CHECK(j1.ddF == 0.0);

  // F = 0 at the root of the square is rejected
  CHECK_THROWS_AS(w.jet(-1.5), std::domain_error);
}

TEST_CASE("sinusoidal warping jets and positivity") {
  // amplitude 2 eps C1 / c^2 = 2/3 with eps = +1, C1 = 1/3, c = -1, b = 0
  WarpingFunction w = WarpingFunction::sinusoidal(0.0, -1.0, 1.0 / 3.0, 1);
  WarpingJet j = w.jet(0.0);
  CHECK(j.F == doctest::Approx(2.0 / 3.0));
  // F touches zero where sin(c x + b) = -1
  CHECK_THROWS_AS(w.jet(kPi / 2.0), std::domain_error);

  // eps C1 < 0 would make the amplitude negative, so F could never be positive
  CHECK_THROWS_AS(WarpingFunction::sinusoidal(0.0, -1.0, 1.0 / 3.0, -1),
                  std::invalid_argument);

  // the c-normalized variant differs from the c^2-normalized one when c != 1
  WarpingFunction printed =
      WarpingFunction::sinusoidal(0.0, 2.0, 1.0 / 3.0, 1, true);
  WarpingFunction solved = WarpingFunction::sinusoidal(0.0, 2.0, 1.0 / 3.0, 1);
  CHECK(printed.jet(0.1).F != doctest::Approx(solved.jet(0.1).F));
}

TEST_CASE("exponential warping parameter validation") {
  CHECK_THROWS_AS(WarpingFunction::exponential(0.0, 1.0, 1.0, -1),
                  std::invalid_argument);
  CHECK_THROWS_AS(WarpingFunction::exponential(2.0, -1.0, 1.0, -1),
                  std::invalid_argument);
  WarpingFunction w = WarpingFunction::exponential(2.0, 1.0, 1.0 / 3.0, -1);
  CHECK(w.jet(0.0).F > 0.0);
  CHECK(w.eps_c1() == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("default-constructed and custom warpings") {
  WarpingFunction none;
  CHECK_THROWS_AS(none.jet(0.0), std::logic_error);

  WarpingFunction c = WarpingFunction::custom(
      "cosh", [](double x) { return WarpingJet{std::cosh(x), std::sinh(x),
                                               std::cosh(x)}; });
  CHECK(c.label() == "cosh");
  CHECK(c.jet(0.3).F == doctest::Approx(std::cosh(0.3)));
}

TEST_CASE("warp scalars of a quadratic warp") {
  // T11 = F'' - (F')^2/(2F) vanishes identically for F = (a x + b)^2,
  // and Delta1F/(4F) = eps a^2.
  for (int eps : {1, -1})
    for (double x : {0.2, 1.0, 2.7}) {
      WarpingJet j = WarpingFunction::quadratic(1.5, 0.5).jet(x);
      grw::WarpScalars ws = grw::warp_scalars(j, eps);
      CHECK(std::abs(ws.T11) <= 1e-12);
      CHECK(std::abs(ws.trT) <= 1e-12);
      CHECK(ws.Delta1F_over_4F == doctest::Approx(eps * 2.25).epsilon(1e-12));
    }

  grw::WarpScalars flat = grw::warp_scalars(WarpingJet{1.0, 0.0, 0.0}, -1);
  CHECK(flat.T11 == 0.0);
  CHECK(flat.Delta1F == 0.0);
}

TEST_CASE("exponential warp balances an Einstein fiber of curvature 4") {
  // trT stays away from zero while Delta1F/4F - trT/2 locks to
  // kappa_fib/((n-1)(n-2)) = 4/12 = 1/3
  WarpingFunction w = WarpingFunction::exponential(2.0, 1.0, 1.0 / 3.0, -1);
  WarpingJet j = w.jet(0.0);
  grw::WarpScalars ws = grw::warp_scalars(j, -1);
  CHECK(std::abs(ws.trT) > 1e-3);
  CHECK(ws.Delta1F_over_4F - 0.5 * ws.trT == doctest::Approx(1.0 / 3.0));
  CHECK(grw::fiber_balance_residual(j, -1, 4.0, 5) <= 1e-12);
}

TEST_CASE("warp ODE residuals across the catalog") {
  // exponential and sinusoidal families are exact solutions
  WarpingFunction e = WarpingFunction::exponential(2.0, 1.0, 1.0 / 3.0, -1);
  WarpingFunction s = WarpingFunction::sinusoidal(0.2, 1.3, 1.0 / 3.0, 1);
  for (int i = 0; i < 50; ++i) {
    const double x = -1.0 + 0.05 * i;
    CHECK(grw::warp_ode_residual(e, x, 1.0 / 3.0, -1) <= 1e-12);
    CHECK(grw::warp_ode_residual(s, x, 1.0 / 3.0, 1) <= 1e-12);
  }

  // quadratic F = eps C1 (x + eps c / C1)^2 solves it when eps C1 > 0
  WarpingFunction q = WarpingFunction::quadratic(1.0, 0.7);
  for (double x : {0.1, 0.9, 2.0})
    CHECK(grw::warp_ode_residual(q, x, 1.0, 1) <= 1e-12);

  // a constant warp does not: residual is the C1 term alone
  WarpingFunction c = WarpingFunction::quadratic(0.0, 1.0);
  CHECK(grw::warp_ode_residual(c, 0.4, 1.0, 1) == doctest::Approx(1.0));
}

TEST_CASE("fiber balance residual for quadratic warps") {
  WarpingJet j = WarpingFunction::quadratic(0.5, 1.0).jet(0.8);
  // matched fiber curvature (n-1)(n-2) eps a^2
  CHECK(grw::fiber_balance_residual(j, 1, 12.0 * 0.25, 5) <= 1e-12);
  // flat fiber with a != 0 misses by a^2
  CHECK(grw::fiber_balance_residual(j, 1, 0.0, 5) == doctest::Approx(0.25));
  CHECK_THROWS_AS(grw::fiber_balance_residual(j, 1, 0.0, 3),
                  std::invalid_argument);
}

TEST_CASE("warped snapshot blocks carry the closed-form pieces") {
  WarpedSpec spec;
  spec.eps = -1;
  spec.warping = WarpingFunction::exponential(2.0, 1.0, 1.0 / 3.0, -1);
  spec.fiber = grw::s2xs2_snapshot();
  const double x1 = 0.7;
  CurvatureSnapshot s = grw::warped_snapshot(spec, x1);
  CHECK(s.dim == 5);
  CHECK(s.signature.first == 1);

  WarpingJet wj = spec.warping.jet(x1);
  grw::WarpScalars ws = grw::warp_scalars(wj, spec.eps);

  // metric blocks: eps on the base, F gfib on the fiber
  CHECK(s.g(0, 0) == doctest::Approx(-1.0));
  CHECK(s.g(1, 1) == doctest::Approx(wj.F * spec.fiber.g(0, 0)));
  CHECK(s.g(0, 1) == 0.0);

  // mixed curvature block R_{a00b} = -(T11/2) gfib_ab
  for (int a = 1; a < 5; ++a)
    CHECK(s.R(a, 0, 0, a) ==
          doctest::Approx(-0.5 * ws.T11 * spec.fiber.g(a - 1, a - 1)));

  // base Ricci entry S_00 = -((n-1)/(2F)) T11 with n = 5
  CHECK(s.S(0, 0) == doctest::Approx(-2.0 * ws.T11 / wj.F).epsilon(1e-9));

  // scalar curvature assembles from the fiber value and the warp scalars
  const double expect_kappa =
      (spec.fiber.kappa - 4.0 * (ws.trT + 3.0 * ws.Delta1F_over_4F)) / wj.F;
  CHECK(s.kappa == doctest::Approx(expect_kappa).epsilon(1e-10));
}

TEST_CASE("constant warp over a flat fiber is flat") {
  WarpedSpec spec;
  spec.eps = -1;
  spec.warping = WarpingFunction::quadratic(0.0, 1.0);
  spec.fiber = grw::flat_snapshot(3, 0);
  CurvatureSnapshot s = grw::warped_snapshot(spec, 1.3);
  CHECK(s.R.norm() <= 1e-13);
  CHECK(std::abs(s.kappa) <= 1e-13);
}

TEST_CASE("warped snapshot rejects undersized fibers") {
  WarpedSpec spec;
  spec.eps = -1;
  spec.warping = WarpingFunction::quadratic(1.0, 1.0);
  spec.fiber = grw::flat_snapshot(2, 0);
  CHECK_THROWS_AS(grw::warped_snapshot(spec, 1.0), std::invalid_argument);
}

TEST_CASE("spherical-fiber warped metrics are conformally flat quasi-Einstein") {
  WarpedSpec spec;
  spec.eps = -1;
  spec.warping = WarpingFunction::quadratic(1.0, 1.0);
  spec.fiber = grw::unit_sphere_snapshot(3);
  for (double x1 : {0.5, 1.0, 2.0}) {
    CurvatureSnapshot s = grw::warped_snapshot(spec, x1);
    CHECK(s.C.norm() <= 1e-9 * s.R.norm());
    grw::QuasiEinsteinResult qe = grw::quasi_einstein(s);
    CHECK(qe.decided);
    CHECK(qe.is_quasi_einstein);
  }
}

TEST_CASE("closed-form warped snapshot matches the chart route") {
  WarpedSpec spec;
  spec.eps = -1;
  spec.warping = WarpingFunction::quadratic(1.0, 2.0);

  grw::MetricField fiber_field = grw::sphere_field(3);
  grw::MetricField total =
      grw::warped_metric_field(-1, spec.warping, fiber_field);

  for (double x1 : {0.6, 1.4}) {
    const std::vector<double> fiber_pt{1.0, 0.8, 0.4};
    spec.fiber = grw::snapshot_from_field(fiber_field, fiber_pt);
    CurvatureSnapshot closed = grw::warped_snapshot(spec, x1);
    CurvatureSnapshot chart =
        grw::snapshot_from_field(total, {x1, 1.0, 0.8, 0.4});
    CHECK(grw::snapshot_difference(closed, chart) <= 1e-7);
  }
}

TEST_CASE("tachibana and auxiliary blocks reassemble to the generic tensors") {
  std::vector<WarpedSpec> specs;
  std::vector<double> xs;
  {
    WarpedSpec a;
    a.eps = -1;
    a.warping = WarpingFunction::exponential(2.0, 1.0, 1.0 / 3.0, -1);
    a.fiber = grw::s2xs2_snapshot();
    specs.push_back(a);
    xs.push_back(0.7);
  }
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    grw::RandomWarpedCase rc = grw::random_grw_dim4(seed);
    specs.push_back(rc.spec);
    xs.push_back(rc.x1);
  }

  for (std::size_t i = 0; i < specs.size(); ++i) {
    CurvatureSnapshot s = grw::warped_snapshot(specs[i], xs[i]);
    grw::WarpedBlocks blocks = grw::warped_blocks(specs[i], xs[i]);

    DenseTensor qgr = grw::tachibana(s.g, s.R);
    DenseTensor qsr = grw::tachibana(s.S, s.R);
    DenseTensor v = grw::s_compose_r(s);
    DenseTensor p = grw::p_tensor(s);

    CHECK(grw::relative_difference(grw::reassemble_qgr(blocks), qgr) <= 1e-10);
    CHECK(grw::relative_difference(grw::reassemble_qsr(blocks), qsr) <= 1e-10);
    CHECK(grw::relative_difference(grw::reassemble_v(blocks), v) <= 1e-10);
    CHECK(grw::relative_difference(grw::reassemble_p(blocks), p) <= 1e-10);
  }
}

TEST_CASE("structural zeroes of the warped blocks") {
  // Einstein fiber: the base-pair slices of Q(S,R) and P drop out
  WarpedSpec e;
  e.eps = -1;
  e.warping = WarpingFunction::exponential(2.0, 1.0, 1.0 / 3.0, -1);
  e.fiber = grw::s2xs2_snapshot();
  grw::WarpedBlocks be = grw::warped_blocks(e, 0.7);
  CHECK(be.qsr_base_pair.max_abs() <= 1e-12);
  CHECK(be.p_base_pair.max_abs() <= 1e-12);

  // quadratic warp: T11 = 0 kills the mixed Q(S,R) slice
  WarpedSpec q;
  q.eps = -1;
  q.warping = WarpingFunction::quadratic(1.0, 1.0);
  q.fiber = grw::product_snapshot(grw::space_form_snapshot(2, 0, 2.0),
                                  grw::flat_snapshot(2, 0));
  grw::WarpedBlocks bq = grw::warped_blocks(q, 0.9);
  CHECK(bq.qsr_mixed.max_abs() <= 1e-12);

  // constant warp over a flat fiber: every block carries zero curvature
  WarpedSpec f;
  f.eps = -1;
  f.warping = WarpingFunction::quadratic(0.0, 1.0);
  f.fiber = grw::flat_snapshot(3, 0);
  grw::WarpedBlocks bf = grw::warped_blocks(f, 1.0);
  CHECK(grw::reassemble_qsr(bf).norm() <= 1e-13);
  CHECK(grw::reassemble_p(bf).norm() <= 1e-13);
}

TEST_CASE("fiber slice of V symmetrizes to the fiber curvature action") {
  // V_(ab)cd = (Rfib . Sfib)_abcd - (Delta1F/4F) Q(gfib, Sfib)_abcd on the
  // all-fiber slice; this ties the V bookkeeping to fiber-level data.
  grw::RandomWarpedCase rc = grw::random_grw_dim4(11);
  const CurvatureSnapshot& fib = rc.spec.fiber;
  grw::WarpedBlocks b = grw::warped_blocks(rc.spec, rc.x1);
  grw::WarpScalars ws =
      grw::warp_scalars(rc.spec.warping.jet(rc.x1), rc.spec.eps);

  DenseTensor rs = grw::curvature_action(fib.R, fib.g_inv, fib.S);
  DenseTensor qgs = grw::tachibana(fib.g, fib.S);
  const int m = b.fiber_dim;
  double worst = 0.0;
  double scale = std::max({rs.norm(), qgs.norm(), 1e-300});
  for (int a = 0; a < m; ++a)
    for (int c = 0; c < m; ++c)
      for (int d = 0; d < m; ++d)
        for (int e = 0; e < m; ++e) {
          const double lhs = b.v_fiber(a, c, d, e) + b.v_fiber(c, a, d, e);
          const double rhs =
              rs(a, c, d, e) - ws.Delta1F_over_4F * qgs(a, c, d, e);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  CHECK(worst / scale <= 1e-10);
}
