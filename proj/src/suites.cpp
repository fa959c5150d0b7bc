#include "grw/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "grw/metric_field.hpp"
#include "grw/tensor_ops.hpp"
#include "grw/warping.hpp"

namespace grw {

namespace {

struct LineSink {
  std::vector<SuiteLine> lines;

  void value(std::string label, double observed, double expected, double tol) {
    lines.push_back({std::move(label), "value",
                     std::abs(observed - expected) <= tol, observed, expected, tol});
  }
  void residual(std::string label, double observed, double tol) {
    lines.push_back({std::move(label), "residual", observed <= tol, observed, 0.0, tol});
  }
  void flag(std::string label, bool ok) {
    lines.push_back({std::move(label), "flag", ok, ok ? 1.0 : 0.0, 1.0, 0.0});
  }
  void count(std::string label, int observed, int expected) {
    lines.push_back({std::move(label), "count", observed == expected,
                     static_cast<double>(observed), static_cast<double>(expected), 0.0});
  }

  SuiteReport report(std::string name) const {
    SuiteReport r;
    r.name = std::move(name);
    r.lines = lines;
    for (const SuiteLine& l : r.lines) r.pass = r.pass && l.pass;
    return r;
  }
};

std::vector<double> grid(double lo, double hi, int count) {
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i)
    xs[i] = lo + (hi - lo) * (count == 1 ? 0.0 : static_cast<double>(i) / (count - 1));
  return xs;
}

std::vector<double> canonical_point(int dim) {
  std::vector<double> p(dim);
  for (int i = 0; i < dim; ++i) p[i] = 0.1 + 0.03 * i;
  return p;
}

// NaN when the fit is degenerate, so value lines fail instead of throwing.
double fitted_l(const FitResult& fit) {
  return fit.status == FitStatus::Fitted && !fit.coefficients.empty()
             ? fit.coefficients.front()
             : std::numeric_limits<double>::quiet_NaN();
}

// max that propagates NaN instead of discarding it (std::max keeps the
// accumulator when the candidate is NaN).
void acc_max(double& acc, double v) {
  if (!(v <= acc)) acc = v;
}

// -------------------------------------------------------------- ge-random --

SuiteReport suite_ge_random(int jobs) {
  LineSink sink;
  constexpr int kCases = 100;
  std::vector<double> res(kCases);
  parallel_for(kCases, jobs, [&](int seed) {
    const int dim = 4 + seed % 3;
    const int neg = seed % 2;
    res[seed] = ge_residual(random_field_snapshot(dim, neg, seed));
  });
  int ok = 0;
  double worst = 0.0;
  for (double r : res) {
    worst = std::max(worst, r);
    if (r <= 1e-8) ++ok;
  }
  sink.count("random fields dims 4-6, seeds 0-99: ge within 1e-8", ok, kCases);
  sink.residual("random fields: worst ge residual", worst, 1e-8);

  const struct {
    const char* label;
    CurvatureSnapshot snap;
  } fixtures[] = {
      {"s2 x s2 product", s2xs2_snapshot()},
      {"unit sphere dim 4", unit_sphere_snapshot(4)},
      {"unit sphere dim 5", unit_sphere_snapshot(5)},
      {"flat dim 4", flat_snapshot(4)},
      {"ricci-flat non-flat synthetic", ricci_flat_snapshot()},
      {"quadratic warp over s2 x s2", warped_snapshot(cor42_spec(), 1.0)},
      {"exponential warp over s2 x s2", warped_snapshot(thm51_exponential_spec(), 0.7)},
      {"sinusoidal warp over s2 x s2", warped_snapshot(thm51_sinusoidal_spec(), 0.9)},
      {"jordan fiber dim 4", gauss_snapshot(thm42_jordan_data(4))},
      {"warped jordan fiber dim 3", warped_snapshot(thm42_jordan_spec(3), 1.1)},
      {"warped jordan fiber dim 4", warped_snapshot(thm42_jordan_spec(4), 1.1)},
      {"square-zero einstein fiber", gauss_snapshot(square_zero_fixture(4, 20.0, 1))},
      {"nilpotent fiber with zero scalar", h1_gauss_snapshot(4)},
      {"roter snapshot", roter_snapshot(roter_plant_for_seed(3))},
      {"random warped dim 4", [] {
         const RandomWarpedCase c = random_grw_dim4(7);
         return warped_snapshot(c.spec, c.x1);
       }()},
  };
  for (const auto& f : fixtures)
    sink.residual(std::string("ge residual: ") + f.label, ge_residual(f.snap), 1e-8);
  return sink.report("ge-random");
}

// ------------------------------------------------------- einstein-genein1 --

SuiteReport suite_einstein_genein1(int) {
  LineSink sink;
  const CurvatureSnapshot prod = s2xs2_snapshot();
  sink.flag("s2 x s2 is Einstein", !classify_sets(prod).in_US);
  sink.value("s2 x s2 coefficient kappa/((n-1)n)",
             prod.kappa / ((prod.dim - 1.0) * prod.dim), 1.0 / 3.0, 1e-12);
  const auto [r1, r2] = check_genein1(prod);
  sink.residual("s2 x s2: commutator = (1/3) Q(g,R)", r1, 1e-9);
  sink.residual("s2 x s2: commutator = (1/3) Q(g,C)", r2, 1e-9);
  const FitResult l1 = fit_condition(prod, ConditionId::GENEINTSU);
  sink.flag("s2 x s2: Q(g,R) fit defined", l1.status == FitStatus::Fitted);
  sink.value("s2 x s2: fitted L1", fitted_l(l1), 1.0 / 3.0, 1e-8);
  sink.residual("s2 x s2: Q(g,R) fit residual", l1.residual, 1e-9);

  const CurvatureSnapshot sphere = unit_sphere_snapshot(4);
  const auto [s1, s2] = check_genein1(sphere);
  sink.residual("unit sphere dim 4: both sides vanish (Q(g,R))", s1, 1e-12);
  sink.residual("unit sphere dim 4: both sides vanish (Q(g,C))", s2, 1e-12);

  const CurvatureSnapshot nil = gauss_snapshot(square_zero_fixture(4, 20.0, 1));
  sink.flag("square-zero gauss fiber is Einstein", !classify_sets(nil).in_US);
  sink.flag("square-zero gauss fiber is not a space form", classify_sets(nil).in_UR);
  const auto [n1, n2] = check_genein1(nil);
  sink.residual("square-zero fiber: commutator vs Q(g,R)", n1, 1e-9);
  sink.residual("square-zero fiber: commutator vs Q(g,C)", n2, 1e-9);

  const CurvatureSnapshot lorentz = space_form_snapshot(5, 1, -20.0);
  const auto [h1r, h2r] = check_genein1(lorentz);
  sink.residual("lorentzian space form dim 5 (Q(g,R))", h1r, 1e-12);
  sink.residual("lorentzian space form dim 5 (Q(g,C))", h2r, 1e-12);
  return sink.report("einstein-genein1");
}

// ------------------------------------------------------------------ cor42 --

SuiteReport suite_cor42(int) {
  LineSink sink;
  const WarpedSpec spec = cor42_spec();
  const std::vector<double> xs = {0.5, 1.0, 1.5, 2.0, 2.5};
  double worst_l = 0.0, worst_ge = 0.0, worst_res = 0.0;
  int in_curly = 0, fitted = 0;
  for (double x : xs) {
    const CurvatureSnapshot snap = warped_snapshot(spec, x);
    const FitResult fit = fit_condition(snap, ConditionId::A1);
    if (fit.status == FitStatus::Fitted) {
      ++fitted;
      worst_l = std::max(worst_l, std::abs(fit.coefficients[0] - 1.0 / 3.0));
      worst_res = std::max(worst_res, fit.residual);
    }
    if (classify_sets(snap).in_curlyU) ++in_curly;
    worst_ge = std::max(worst_ge, ge_residual(snap));
  }
  sink.count("five sample points: fit defined", fitted, static_cast<int>(xs.size()));
  sink.value("worst fitted L against 1/(n-2) = 1/3", worst_l + 1.0 / 3.0, 1.0 / 3.0, 1e-8);
  sink.residual("worst fit residual", worst_res, 1e-8);
  sink.count("membership in U cap U_S cap U_C", in_curly, static_cast<int>(xs.size()));
  sink.residual("worst ge residual", worst_ge, 1e-8);
  return sink.report("cor42");
}

// ------------------------------------------------------------------ thm51 --

void thm51_family(LineSink& sink, const WarpedSpec& spec, const char* label,
                  double C1) {
  const std::vector<double> xs = grid(0.05, 2.5, 50);
  double worst_ode = 0.0, worst_balance = 0.0, worst_l = 0.0, worst_res = 0.0;
  double min_trt = std::numeric_limits<double>::infinity();
  for (double x : xs) {
    worst_ode = std::max(worst_ode, warp_ode_residual(spec.warping, x, C1, spec.eps));
    const WarpingJet wj = spec.warping.jet(x);
    worst_balance = std::max(
        worst_balance, fiber_balance_residual(wj, spec.eps, spec.fiber.kappa,
                                              spec.fiber.dim + 1));
    min_trt = std::min(min_trt, std::abs(warp_scalars(wj, spec.eps).trT));
    const FitResult fit = fit_condition(warped_snapshot(spec, x), ConditionId::A1);
    acc_max(worst_l, std::abs(fitted_l(fit) - 0.25));
    acc_max(worst_res, fit.residual);
  }
  const std::string tag(label);
  sink.residual(tag + ": worst warp ODE residual over 50 points", worst_ode, 1e-12);
  sink.residual(tag + ": worst fiber balance residual", worst_balance, 1e-9);
  sink.flag(tag + ": trT stays away from zero", min_trt > 1e-6);
  sink.value(tag + ": worst fitted L against 1/(n-1) = 1/4", worst_l + 0.25, 0.25, 1e-6);
  sink.residual(tag + ": worst fit residual", worst_res, 1e-6);
}

SuiteReport suite_thm51(int) {
  LineSink sink;
  thm51_family(sink, thm51_exponential_spec(), "exponential", 1.0 / 3.0);
  thm51_family(sink, thm51_sinusoidal_spec(), "sinusoidal", 1.0 / 3.0);

  // quadratic branch: trT = 0 and the coefficient drops to 1/(n-2)
  for (double a : {1.0, 2.0}) {
    WarpedSpec spec = cor42_spec();
    spec.warping = WarpingFunction::quadratic(a, 3.0);
    double worst_l = 0.0, worst_trt = 0.0;
    for (double x : grid(0.2, 2.0, 10)) {
      worst_trt = std::max(
          worst_trt, std::abs(warp_scalars(spec.warping.jet(x), spec.eps).trT));
      const FitResult fit = fit_condition(warped_snapshot(spec, x), ConditionId::A1);
      acc_max(worst_l, std::abs(fitted_l(fit) - 1.0 / 3.0));
    }
    const std::string tag = "quadratic slope " + std::to_string(static_cast<int>(a));
    sink.residual(tag + ": |trT|", worst_trt, 1e-12);
    sink.value(tag + ": worst fitted L against 1/3", worst_l + 1.0 / 3.0, 1.0 / 3.0,
               1e-8);
  }
  return sink.report("thm51");
}

// ----------------------------------------------------------- thm42-jordan --

// The warped totals over these fibers land in the rank-1-Ricci, kappa = 0
// class: Q(S,R) vanishes identically, so the one-coefficient fit has nothing
// to fit against.  The quadratic-warp statement still has content: the
// commutator equation holds exactly at L = 1/(n-2) (both sides zero), and
// with S != 0 the vanishing of Q(S,R) forces semisymmetry.  The suite checks
// the equation form at the pinned L at every point, accepts a genuine fit if
// one ever appears, and verifies the structural facts of the vacuous branch.
void thm42_case(LineSink& sink, int fiber_dim, double ea2, double expected_l) {
  HypersurfaceData data = thm42_jordan_data(fiber_dim);
  const CurvatureSnapshot fiber = gauss_snapshot(data);
  const std::string tag = "fiber dim " + std::to_string(fiber_dim);

  sink.flag(tag + ": non-Einstein", classify_sets(fiber).in_US);
  const QuasiEinsteinResult qe = quasi_einstein(fiber);
  sink.flag(tag + ": quasi-Einstein", qe.decided && qe.is_quasi_einstein);
  sink.residual(tag + ": SR2 residual at ea2", check_sr2(fiber, ea2), 1e-10);
  const D1D3Result d = check_d1_d3(fiber, ea2);
  sink.residual(tag + ": D1 residual", d.d1, 1e-9);
  if (d.d3) sink.residual(tag + ": D3 residual", *d.d3, 1e-9);

  const WarpedSpec spec = thm42_jordan_spec(fiber_dim);
  const std::vector<double> xs = {0.5, 1.0, 1.5, 2.0, 2.5};
  const int points = static_cast<int>(xs.size());
  double worst_eq = 0.0, worst_rr = 0.0, worst_cs = 0.0, worst_qdiff = 0.0;
  double worst_kappa = 0.0, worst_fit_dev = 0.0;
  int vacuous = 0, ricci_rank_one = 0, ricci_nonzero = 0;
  for (double x : xs) {
    const CurvatureSnapshot snap = warped_snapshot(spec, x);
    const double scale = std::max(snap.R.norm() * snap.R.norm(), 1e-300);

    const FitResult fit = fit_condition(snap, ConditionId::A1);
    if (fit.status == FitStatus::Fitted) {
      acc_max(worst_fit_dev, std::abs(fitted_l(fit) - expected_l));
      acc_max(worst_fit_dev, fit.residual);
    } else {
      ++vacuous;
    }

    DenseTensor dev = curvature_commutator(snap);
    const DenseTensor qsr = tachibana(snap.S, snap.R);
    for (std::size_t i = 0; i < dev.components().size(); ++i)
      dev.components()[i] -= expected_l * qsr.components()[i];
    acc_max(worst_eq, dev.norm() / scale);

    acc_max(worst_rr, curvature_action(snap.R, snap.g_inv, snap.R).norm() / scale);
    acc_max(worst_cs, curvature_action(snap.C, snap.g_inv, snap.S).norm() / scale);
    DenseTensor qdiff = tachibana(snap.S, snap.C);
    for (std::size_t i = 0; i < qdiff.components().size(); ++i)
      qdiff.components()[i] -= qsr.components()[i];
    acc_max(worst_qdiff, qdiff.norm() / scale);
    acc_max(worst_kappa, std::abs(snap.kappa));

    if (snap.S.norm() > 1e-6) ++ricci_nonzero;
    const QuasiEinsteinResult wqe = quasi_einstein(snap);
    if (wqe.decided && wqe.is_quasi_einstein) ++ricci_rank_one;
  }
  sink.residual(tag + ": warped A1 equation at L = 1/(n-2)", worst_eq, 1e-8);
  sink.residual(tag + ": fitted points stay at L = 1/(n-2)", worst_fit_dev, 1e-8);
  sink.count(tag + ": A1 basis Q(S,R) vanishes at every point", vacuous, points);
  sink.count(tag + ": warped Ricci tensor nonzero", ricci_nonzero, points);
  sink.count(tag + ": warped Ricci has rank 1", ricci_rank_one, points);
  sink.residual(tag + ": warped scalar curvature", worst_kappa, 1e-10);
  sink.residual(tag + ": semisymmetry R.R on the warped total", worst_rr, 1e-10);
  sink.residual(tag + ": C.S on the warped total", worst_cs, 1e-10);
  sink.residual(tag + ": Q(S,C) matches Q(S,R)", worst_qdiff, 1e-10);
}

SuiteReport suite_thm42_jordan(int) {
  LineSink sink;
  thm42_case(sink, 3, -1.0, 0.5);        // base eps -1, tau -12, n = 4
  thm42_case(sink, 4, 1.0, 1.0 / 3.0);   // base eps +1, tau 20, n = 5
  return sink.report("thm42-jordan");
}

// -------------------------------------------------------------- r877-dim4 --

SuiteReport suite_r877_dim4(int jobs) {
  LineSink sink;
  constexpr int kCases = 200;
  std::vector<double> res(kCases);
  std::vector<char> defined(kCases, 0);
  parallel_for(kCases, jobs, [&](int seed) {
    const RandomWarpedCase c = random_grw_dim4(seed);
    const FitResult fit =
        fit_condition(warped_snapshot(c.spec, c.x1), ConditionId::R877);
    defined[seed] = fit.status == FitStatus::Fitted;
    res[seed] = defined[seed] ? fit.residual : 1.0;
  });
  int ok = 0;
  double worst = 0.0;
  for (int i = 0; i < kCases; ++i) {
    worst = std::max(worst, res[i]);
    if (defined[i] && res[i] <= 1e-6) ++ok;
  }
  sink.count("random 4-dim warped snapshots fitting (R877)", ok, kCases);
  sink.residual("worst (R877) fit residual", worst, 1e-6);
  return sink.report("r877-dim4");
}

// ------------------------------------------------------------- crosscheck --

double christoffel_block_dev(const WarpedSpec& spec, const MetricField& fiber_field,
                             double x1, const std::vector<double>& fiber_point) {
  const MetricField total = warped_metric_field(spec.eps, spec.warping, fiber_field);
  std::vector<double> point = {x1};
  point.insert(point.end(), fiber_point.begin(), fiber_point.end());
  const Christoffels got = christoffel(total.two_jet(point));
  const Christoffels fib = christoffel(fiber_field.two_jet(fiber_point));
  const MetricJet fj = fiber_field.two_jet(fiber_point);
  const WarpingJet wj = spec.warping.jet(x1);
  const int m = fiber_field.dim;

  double dev = 0.0;
  auto track = [&](double got_v, double want_v) {
    dev = std::max(dev, std::abs(got_v - want_v));
  };
  track(got.G(0, 0, 0), 0.0);
  for (int a = 0; a < m; ++a) {
    track(got.G(0, 0, a + 1), 0.0);
    track(got.G(0, a + 1, 0), 0.0);
    track(got.G(a + 1, 0, 0), 0.0);
    for (int b = 0; b < m; ++b) {
      track(got.G(0, a + 1, b + 1), -0.5 * spec.eps * wj.dF * fj.g[a][b]);
      track(got.G(a + 1, 0, b + 1), (a == b) ? wj.dF / (2.0 * wj.F) : 0.0);
      track(got.G(a + 1, b + 1, 0), (a == b) ? wj.dF / (2.0 * wj.F) : 0.0);
      for (int c = 0; c < m; ++c)
        track(got.G(a + 1, b + 1, c + 1), fib.G(a, b, c));
    }
  }
  return dev;
}

SuiteReport suite_crosscheck(int) {
  LineSink sink;
  {
    // closed-form route on hand-written fiber jets against the generic chart
    // route on jet-arithmetic fiber jets: crosses both implementations
    const MetricField fiber = sphere_field(3);
    const MetricField fiber_ad = sphere_field_ad(3);
    WarpedSpec spec;
    spec.eps = -1;
    spec.warping = WarpingFunction::quadratic(1.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double x1 = 0.4 + 0.2 * i;
      const std::vector<double> fp = {0.5 + 0.15 * i, 0.7 + 0.1 * i, 0.3 + 0.05 * i};
      spec.fiber = snapshot_from_field(fiber, fp);
      const CurvatureSnapshot closed = warped_snapshot(spec, x1);
      std::vector<double> point = {x1};
      point.insert(point.end(), fp.begin(), fp.end());
      const CurvatureSnapshot ad = snapshot_from_field(
          warped_metric_field(spec.eps, spec.warping, fiber_ad), point);
      worst = std::max(worst, snapshot_difference(closed, ad));
    }
    sink.residual("sphere fiber: closed form vs jet route, 10 points", worst, 1e-7);
    sink.residual("sphere fiber: connection blocks vs closed form",
                  christoffel_block_dev(spec, fiber_ad, 0.8, {0.6, 0.9, 0.5}), 1e-10);
  }
  {
    const MetricField fiber = s2xs2_field();
    const MetricField fiber_ad = s2xs2_field_ad();
    WarpedSpec spec;
    spec.eps = -1;
    spec.warping = WarpingFunction::exponential(2.0, 0.5, 1.0 / 3.0, -1);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double x1 = 0.3 + 0.2 * i;
      const std::vector<double> fp = {0.5 + 0.1 * i, 0.8, 0.6 + 0.12 * i, 1.1};
      spec.fiber = snapshot_from_field(fiber, fp);
      const CurvatureSnapshot closed = warped_snapshot(spec, x1);
      std::vector<double> point = {x1};
      point.insert(point.end(), fp.begin(), fp.end());
      const CurvatureSnapshot ad = snapshot_from_field(
          warped_metric_field(spec.eps, spec.warping, fiber_ad), point);
      worst = std::max(worst, snapshot_difference(closed, ad));
    }
    sink.residual("s2 x s2 fiber: closed form vs jet route, 10 points", worst, 1e-7);
    sink.residual("s2 x s2 fiber: connection blocks vs closed form",
                  christoffel_block_dev(spec, fiber_ad, 1.2, {0.7, 0.8, 0.9, 1.1}), 1e-10);
  }
  return sink.report("crosscheck");
}

// ------------------------------------------------------------- gauss-e123 --

SuiteReport suite_gauss_e123(int) {
  LineSink sink;
  {
    HypersurfaceData data = diag_fixture({1.0, 2.0, 0.0, 0.0}, 20.0, 1);
    const E1Result e1 = e1_lambda(data);
    sink.flag("diag(1,2,0,0): cubic relation holds", e1.ok);
    sink.value("diag(1,2,0,0): lambda", e1.lambda, -2.0, 1e-9);
    const E2Result e2 = e2_check(data);
    sink.residual("diag(1,2,0,0): composed-tensor identity", e2.residual, 1e-10);
    sink.residual("diag(1,2,0,0): R.S corollary", e2.ricci_residual, 1e-10);
    sink.residual("diag(1,2,0,0): commutator identity", e3_check(data).value(), 1e-9);
    sink.flag("diag(1,2,0,0): lambda != 0 detected", !e4_check(data).lambda_zero);
    const CurvatureSnapshot snap = gauss_snapshot(data);
    const QuasiEinsteinResult qe = quasi_einstein(snap);
    sink.flag("diag(1,2,0,0): not quasi-Einstein", qe.decided && !qe.is_quasi_einstein);
    sink.flag("diag(1,2,0,0): lies in U1", classify_sets(snap).in_U1);
  }
  {
    HypersurfaceData data = diag_fixture({1.0, 1.0, 1.0, 1.0}, 12.0, 1);
    const E1Result e1 = e1_lambda(data);
    sink.value("identity shape operator dim 4: lambda = 1 - m", e1.lambda, -3.0, 1e-10);
  }
  {
    HypersurfaceData data = diag_fixture({0.0, 0.0, 0.0, 0.0}, 20.0, 1);
    const E1Result e1 = e1_lambda(data);
    sink.flag("vanishing shape operator: umbilic flag", e1.ok && e1.umbilic);
    const CurvatureSnapshot snap = gauss_snapshot(data);
    const double scale = snap.kappa / ((snap.dim - 1.0) * snap.dim);
    sink.residual("vanishing shape operator: constant curvature",
                  (snap.R - snap.G.scaled(scale)).norm() /
                      std::max(snap.R.norm(), 1.0),
                  1e-12);
  }
  for (int fd : {3, 4}) {
    HypersurfaceData data = thm42_jordan_data(fd);
    const std::string tag = "jordan fiber dim " + std::to_string(fd);
    const E1Result e1 = e1_lambda(data);
    sink.flag(tag + ": cubic relation with lambda = 0", e1.ok);
    sink.value(tag + ": lambda", e1.lambda, 0.0, 1e-12);
    const E4Result e4 = e4_check(data);
    sink.flag(tag + ": lambda vanishes", e4.lambda_zero);
    sink.flag(tag + ": (n-2) tau = n kappa", e4.trace_match);
    sink.residual(tag + ": shape trace cross-check", e4.shape_trace_dev, 1e-12);
    const double n = fd + 1;
    const double ea2 = data.tau / ((n - 1.0) * n);
    sink.residual(tag + ": SR2 at ea2 = tau/((n-1)n)",
                  check_sr2(gauss_snapshot(data), ea2), 1e-10);
    if (fd >= 4)
      sink.residual(tag + ": commutator identity", e3_check(data).value(), 1e-9);
  }
  {
    HypersurfaceData data = square_zero_fixture(4, 20.0, 1);
    const E4Result e4 = e4_check(data);
    sink.flag("square-zero fiber: both scalar conditions", e4.lambda_zero && e4.trace_match);
    sink.residual("square-zero fiber: SR2 at the matching ea2",
                  check_sr2(gauss_snapshot(data), 1.0), 1e-10);
  }
  return sink.report("gauss-e123");
}

}  // namespace

// ------------------------------------------------------------- public API --

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "ge-random",  "einstein-genein1", "cor42",      "thm51",
      "thm42-jordan", "r877-dim4",      "crosscheck", "gauss-e123",
  };
  return names;
}

SuiteReport run_suite(const std::string& name, int jobs) {
  if (name == "ge-random") return suite_ge_random(jobs);
  if (name == "einstein-genein1") return suite_einstein_genein1(jobs);
  if (name == "cor42") return suite_cor42(jobs);
  if (name == "thm51") return suite_thm51(jobs);
  if (name == "thm42-jordan") return suite_thm42_jordan(jobs);
  if (name == "r877-dim4") return suite_r877_dim4(jobs);
  if (name == "crosscheck") return suite_crosscheck(jobs);
  if (name == "gauss-e123") return suite_gauss_e123(jobs);
  throw std::invalid_argument("unknown suite: " + name);
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (int i = w; i < count; i += jobs) fn(i);
    });
  }
  for (std::thread& t : workers) t.join();
}

CurvatureSnapshot s2xs2_snapshot() {
  const CurvatureSnapshot two_sphere = space_form_snapshot(2, 0, 2.0);
  return product_snapshot(two_sphere, two_sphere);
}

CurvatureSnapshot unit_sphere_snapshot(int dim) {
  return space_form_snapshot(dim, 0, (dim - 1.0) * dim);
}

CurvatureSnapshot flat_snapshot(int dim, int neg) {
  return space_form_snapshot(dim, neg, 0.0);
}

CurvatureSnapshot ricci_flat_snapshot() {
  const CurvatureSnapshot prod = s2xs2_snapshot();
  return synthetic_snapshot(prod.g, prod.C);
}

CurvatureSnapshot random_field_snapshot(int dim, int neg, std::uint64_t seed,
                                        double amplitude) {
  return snapshot_from_field(random_metric_field(dim, neg, seed, amplitude),
                             canonical_point(dim));
}

WarpedSpec cor42_spec() {
  WarpedSpec spec;
  spec.eps = -1;
  spec.warping = WarpingFunction::quadratic(2.0, 3.0);
  spec.fiber = s2xs2_snapshot();
  return spec;
}

WarpedSpec thm51_exponential_spec() {
  WarpedSpec spec;
  spec.eps = -1;
  spec.warping = WarpingFunction::exponential(2.0, 0.5, 1.0 / 3.0, spec.eps);
  spec.fiber = s2xs2_snapshot();
  return spec;
}

WarpedSpec thm51_sinusoidal_spec() {
  WarpedSpec spec;
  spec.eps = 1;  // the sinusoidal amplitude needs eps * C1 > 0 over this fiber
  spec.warping = WarpingFunction::sinusoidal(0.0, 1.0, 1.0 / 3.0, spec.eps);
  spec.fiber = s2xs2_snapshot();
  return spec;
}

HypersurfaceData thm42_jordan_data(int fiber_dim) {
  // tau = eps a^2 (n-1) n with unit slope: pairs the fiber with the base sign
  const double n = fiber_dim + 1;
  const int base_eps = fiber_dim == 3 ? -1 : 1;
  return jordan3_fixture(fiber_dim, base_eps * (n - 1.0) * n, 1);
}

WarpedSpec thm42_jordan_spec(int fiber_dim) {
  WarpedSpec spec;
  spec.eps = fiber_dim == 3 ? -1 : 1;
  spec.warping = WarpingFunction::quadratic(1.0, 2.0);
  spec.fiber = gauss_snapshot(thm42_jordan_data(fiber_dim));
  return spec;
}

CurvatureSnapshot h1_gauss_snapshot(int fiber_dim) {
  return gauss_snapshot(jordan3_fixture(fiber_dim, 0.0, 1));
}

std::optional<RoterPlant> solve_roter_plant(double phi, double mu, double eta,
                                            int dim, int k) {
  if (phi == 0.0 || k < 2 || dim - k < 2) return std::nullopt;
  const double n = dim;
  // consistency of the contracted ansatz with a two-eigenvalue Ricci tensor:
  //   phi (T - x - y) + mu (n-2) = 1,   phi x y + mu T + eta (n-1) = 0,
  // T = k x + (n-k) y
  const double excess = (1.0 - mu * (n - 2.0)) / phi;  // T - x - y
  const double qa = -phi * (k - 1.0);
  const double qb = phi * excess + mu * (n - 2.0 * k);
  const double qc = mu * (n - k) * excess + eta * (n - 1.0) * (n - k - 1.0);
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc <= 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  for (double x : {(-qb + root) / (2.0 * qa), (-qb - root) / (2.0 * qa)}) {
    const double y = (excess - (k - 1.0) * x) / (n - k - 1.0);
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    if (std::abs(x - y) <= 1e-6 * std::max({1.0, std::abs(x), std::abs(y)})) continue;
    RoterPlant plant;
    plant.phi = phi;
    plant.mu = mu;
    plant.eta = eta;
    plant.dim = dim;
    plant.k = k;
    plant.x = x;
    plant.y = y;
    return plant;
  }
  return std::nullopt;
}

RoterPlant roter_plant_for_seed(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (;;) {
    const double phi = 0.5 + 0.4 * unit_real(rng());
    const double mu = -0.4 + 0.25 * unit_real(rng());
    const double eta = 0.1 + 0.25 * unit_real(rng());
    const int dim = 4 + static_cast<int>(rng() % 2);
    if (const auto plant = solve_roter_plant(phi, mu, eta, dim, 2)) return *plant;
  }
}

CurvatureSnapshot roter_snapshot(const RoterPlant& plant) {
  const int n = plant.dim;
  DenseTensor g = DenseTensor::zeros(n, 2, Symmetry::SymmetricPair);
  DenseTensor S = DenseTensor::zeros(n, 2, Symmetry::SymmetricPair);
  for (int i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    S(i, i) = i < plant.k ? plant.x : plant.y;
  }
  DenseTensor R = kulkarni_nomizu(S, S).scaled(0.5 * plant.phi);
  R += kulkarni_nomizu(g, S).scaled(plant.mu);
  R += kulkarni_nomizu(g, g).scaled(0.5 * plant.eta);
  return synthetic_snapshot(g, R);
}

RandomWarpedCase random_grw_dim4(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL);
  auto u = [&] { return unit_real(rng()); };

  RandomWarpedCase out;
  out.spec.eps = -1;
  std::vector<double> fp = {0.05 + 0.2 * u(), 0.05 + 0.2 * u(), 0.05 + 0.2 * u()};
  out.spec.fiber = snapshot_from_field(
      random_metric_field(3, 0, seed * 3 + 1, 0.15 + 0.1 * u()), fp);

  switch (seed % 3) {
    case 0:
      out.spec.warping = WarpingFunction::quadratic(0.5 + 1.5 * u(), 1.0 + 2.0 * u());
      out.x1 = 0.2 + 1.5 * u();
      break;
    case 1:
      // eps C1 < 0 keeps the exponential combination strictly positive
      out.spec.warping = WarpingFunction::exponential(
          0.8 + 1.2 * u(), 0.3 + 0.7 * u(), 0.1 + 0.9 * u(), out.spec.eps);
      out.x1 = 0.1 + 1.5 * u();
      break;
    default:
      // eps C1 > 0 keeps the sinusoidal amplitude positive
      out.spec.warping = WarpingFunction::sinusoidal(
          0.0, 0.4 + 0.6 * u(), -(0.1 + 0.9 * u()), out.spec.eps);
      out.x1 = 0.2 + 1.8 * u();
      break;
  }
  return out;
}

}  // namespace grw
