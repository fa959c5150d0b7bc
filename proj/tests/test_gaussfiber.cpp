#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "grw/conditions.hpp"
#include "grw/gauss_fiber.hpp"
#include "grw/snapshot.hpp"
#include "grw/tensor_ops.hpp"

using grw::CurvatureSnapshot;
using grw::DenseTensor;
using grw::HypersurfaceData;

namespace {

// worst asymmetry of g(A x, y), i.e. of H with one index raised and lowered
// back; a shape operator must be self-adjoint against the fiber metric
double self_adjoint_dev(const HypersurfaceData& data) {
  const std::vector<double> A = grw::shape_operator(data);
  const int m = data.gt.dim();
  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double lhs = 0.0, rhs = 0.0;
      for (int k = 0; k < m; ++k) {
        lhs += data.gt(i, k) * A[static_cast<std::size_t>(k) * m + j];
        rhs += data.gt(j, k) * A[static_cast<std::size_t>(k) * m + i];
      }
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  return worst;
}

}  // namespace

TEST_CASE("shape operators of the stock fixtures are self-adjoint") {
  CHECK(self_adjoint_dev(grw::jordan3_fixture(3, -12.0, 1)) <= 1e-12);
  CHECK(self_adjoint_dev(grw::jordan3_fixture(4, 20.0, 1)) <= 1e-12);
  CHECK(self_adjoint_dev(grw::square_zero_fixture(4, 20.0, 1)) <= 1e-12);
  CHECK(self_adjoint_dev(grw::diag_fixture({1.0, 2.0, 0.0, 0.0}, 20.0, 1)) <=
        1e-12);
}

TEST_CASE("cubic shape relation on a diagonal operator") {
  HypersurfaceData data = grw::diag_fixture({1.0, 2.0, 0.0, 0.0}, 20.0, 1);
  grw::E1Result e1 = grw::e1_lambda(data);
  REQUIRE(e1.ok);
  CHECK(e1.lambda == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK_FALSE(e1.umbilic);
  REQUIRE(data.lambda.has_value());

  // identity operator in dimension m: lambda = 1 - m
  HypersurfaceData id = grw::diag_fixture({1.0, 1.0, 1.0, 1.0}, 12.0, 1);
  grw::E1Result e1id = grw::e1_lambda(id);
  REQUIRE(e1id.ok);
  CHECK(e1id.lambda == doctest::Approx(-3.0));

  // three distinct nonzero eigenvalues cannot satisfy one cubic
  HypersurfaceData bad = grw::diag_fixture({1.0, 2.0, 3.0, 0.0}, 20.0, 1);
  grw::E1Result e1bad = grw::e1_lambda(bad);
  CHECK_FALSE(e1bad.ok);
  CHECK(e1bad.residual > 1e-6);
}

TEST_CASE("umbilic-degenerate fixture gives constant curvature") {
  HypersurfaceData data = grw::diag_fixture({0.0, 0.0, 0.0, 0.0}, 20.0, 1);
  grw::E1Result e1 = grw::e1_lambda(data);
  REQUIRE(e1.ok);
  CHECK(e1.umbilic);
  CHECK(e1.lambda == doctest::Approx(0.0));

  CurvatureSnapshot snap = grw::gauss_snapshot(data);
  const double c = snap.kappa / ((snap.dim - 1.0) * snap.dim);
  CHECK((snap.R - snap.G.scaled(c)).norm() <= 1e-12 * std::max(1.0, snap.R.norm()));
  CHECK(grw::quasi_einstein(snap).is_einstein);
}

TEST_CASE("gauss snapshot assembles wedge plus constant-curvature parts") {
  HypersurfaceData data = grw::jordan3_fixture(3, -12.0, 1);
  CurvatureSnapshot snap = grw::gauss_snapshot(data);
  // ambient constant-curvature coefficient: n = fiber dim + 1
  const double n = snap.dim + 1.0;
  DenseTensor expected =
      grw::kulkarni_nomizu(data.H, data.H).scaled(0.5 * data.gauss_sign);
  expected += snap.G.scaled(data.tau / ((n - 1.0) * n));
  CHECK(grw::relative_difference(expected, snap.R) <= 1e-12);
  // tr A = tr A^2 = 0, so kappa carries the ambient part only:
  // tau (m-1) m / ((n-1) n) = tau (n-2)/n
  CHECK(snap.kappa == doctest::Approx(data.tau * (n - 2.0) / n).epsilon(1e-10));
}

TEST_CASE("gauss fixtures reject undersized fibers") {
  CHECK_THROWS_AS(grw::jordan3_fixture(2, -12.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(grw::square_zero_fixture(3, 20.0, 1), std::invalid_argument);
}

TEST_CASE("composed-tensor identity for realizable shape operators") {
  HypersurfaceData data = grw::diag_fixture({1.0, 2.0, 0.0, 0.0}, 20.0, 1);
  REQUIRE(grw::e1_lambda(data).ok);
  grw::E2Result e2 = grw::e2_check(data);
  CHECK(e2.residual <= 1e-10);
  CHECK(e2.ricci_residual <= 1e-10);

  // a missing lambda is resolved on the fly; an unsatisfiable cubic relation
  // is the real error
  HypersurfaceData fresh = grw::diag_fixture({1.0, 2.0, 0.0, 0.0}, 20.0, 1);
  CHECK(grw::e2_check(fresh).residual <= 1e-10);
  HypersurfaceData bad = grw::diag_fixture({1.0, 2.0, 3.0, 0.0}, 20.0, 1);
  CHECK_THROWS_AS(grw::e2_check(bad), std::invalid_argument);
}

TEST_CASE("commutator identity for four-dimensional fibers only") {
  HypersurfaceData data = grw::diag_fixture({1.0, 2.0, 0.0, 0.0}, 20.0, 1);
  REQUIRE(grw::e1_lambda(data).ok);
  auto e3 = grw::e3_check(data);
  REQUIRE(e3.has_value());
  CHECK(*e3 <= 1e-9);

  HypersurfaceData three = grw::jordan3_fixture(3, -12.0, 1);
  REQUIRE(grw::e1_lambda(three).ok);
  CHECK_FALSE(grw::e3_check(three).has_value());
}

TEST_CASE("nilpotent fixtures satisfy the two scalar conditions") {
  for (int fd : {3, 4, 5}) {
    HypersurfaceData data = grw::jordan3_fixture(fd, fd == 3 ? -12.0 : 20.0, 1);
    grw::E1Result e1 = grw::e1_lambda(data);
    REQUIRE(e1.ok);
    CHECK(std::abs(e1.lambda) <= 1e-12);
    grw::E4Result e4 = grw::e4_check(data);
    CHECK(e4.lambda_zero);
    CHECK(e4.trace_match);
    CHECK(e4.shape_trace_dev <= 1e-12);
  }

  HypersurfaceData sq = grw::square_zero_fixture(4, 20.0, 1);
  REQUIRE(grw::e1_lambda(sq).ok);
  grw::E4Result e4 = grw::e4_check(sq);
  CHECK(e4.lambda_zero);
  CHECK(e4.trace_match);

  // a diagonal operator with lambda != 0 fails the first scalar condition
  HypersurfaceData diag = grw::diag_fixture({1.0, 2.0, 0.0, 0.0}, 20.0, 1);
  REQUIRE(grw::e1_lambda(diag).ok);
  CHECK_FALSE(grw::e4_check(diag).lambda_zero);
}

TEST_CASE("scalar conditions feed the fiber Ricci composition") {
  // lambda = 0 and (n-2) tau = n kappa together put the fiber on the
  // Ricci-composition locus at ea2 = tau/((n-1)n)
  for (int fd : {3, 4}) {
    const double tau = fd == 3 ? -12.0 : 20.0;
    HypersurfaceData data = grw::jordan3_fixture(fd, tau, 1);
    CurvatureSnapshot snap = grw::gauss_snapshot(data);
    const double n = fd + 1.0;
    const double ea2 = tau / ((n - 1.0) * n);
    CHECK(grw::check_sr2(snap, ea2) <= 1e-9);
  }
  HypersurfaceData sq = grw::square_zero_fixture(4, 20.0, 1);
  CHECK(grw::check_sr2(grw::gauss_snapshot(sq), 1.0) <= 1e-9);
}

TEST_CASE("jordan fixtures are quasi-Einstein but not Einstein") {
  for (int fd : {3, 4}) {
    HypersurfaceData data = grw::jordan3_fixture(fd, fd == 3 ? -12.0 : 20.0, 1);
    CurvatureSnapshot snap = grw::gauss_snapshot(data);
    grw::QuasiEinsteinResult qe = grw::quasi_einstein(snap);
    REQUIRE(qe.decided);
    CHECK_FALSE(qe.is_einstein);
    CHECK(qe.is_quasi_einstein);
    CHECK(qe.rank_defect == fd - 1);  // the Ricci deviation has rank 1
  }
}

TEST_CASE("square-zero fixture is Einstein without constant curvature") {
  CurvatureSnapshot snap =
      grw::gauss_snapshot(grw::square_zero_fixture(4, 20.0, 1));
  grw::QuasiEinsteinResult qe = grw::quasi_einstein(snap);
  CHECK(qe.is_einstein);
  grw::SetMembership m = grw::classify_sets(snap);
  CHECK(m.in_UR);
  CHECK_FALSE(m.in_US);

  auto [r1, r2] = grw::check_genein1(snap);
  CHECK(r1 <= 1e-9);
  CHECK(r2 <= 1e-9);
}

TEST_CASE("diagonalizable operators meeting both scalar conditions are Einstein") {
  // eigenvalues (t, 0, 0, 0): lambda = 0 and the trace condition hold, and
  // the Ricci deviation tr(A) A - A^2 collapses to zero
  HypersurfaceData data = grw::diag_fixture({1.7, 0.0, 0.0, 0.0}, 20.0, 1);
  grw::E1Result e1 = grw::e1_lambda(data);
  REQUIRE(e1.ok);
  grw::E4Result e4 = grw::e4_check(data);
  CHECK(e4.lambda_zero);
  CHECK(e4.trace_match);
  CHECK(grw::quasi_einstein(grw::gauss_snapshot(data)).is_einstein);
}
