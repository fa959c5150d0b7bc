#pragma once

#include <optional>
#include <vector>

#include "grw/snapshot.hpp"

namespace grw {

/// Pointwise hypersurface data in an ambient space form of scalar curvature
/// tau: fiber metric, second fundamental tensor, and the sign of the Gauss
/// equation.  The induced curvature is
///   R = (gauss_sign/2) H ^ H + tau/((n-1)n) G,    n = fiber dim + 1.
struct HypersurfaceData {
  DenseTensor gt;      // fiber metric, symmetric, any signature
  DenseTensor H;       // second fundamental tensor, symmetric
  double tau = 0.0;    // ambient scalar curvature
  int gauss_sign = 1;  // +1 or -1
  std::optional<double> lambda;  // cubic shape coefficient, set by e1_lambda
};

/// Shape operator A = gt^-1 H as a dense matrix (row-major, dim x dim).
std::vector<double> shape_operator(const HypersurfaceData& data);

struct E1Result {
  bool ok = false;
  bool umbilic = false;  // A = 0, lambda undetermined (reported as 0)
  double lambda = 0.0;
  double residual = 0.0;  // relative residual of A^3 = tr(A) A^2 + lambda A
};

/// Least-squares lambda for the cubic shape relation
///   A^3 = tr(A) A^2 + lambda A;
/// succeeds iff the relative residual is <= 1e-9.  Stores lambda on success.
E1Result e1_lambda(HypersurfaceData& data);

/// Fiber snapshot from the Gauss equation.  Cross-checks the contracted form
///   S = gauss_sign (tr(A) H - H g^-1 H) + (n-2) tau/((n-1)n) g
/// and the scalar contraction to 1e-10 (throws std::logic_error on failure).
CurvatureSnapshot gauss_snapshot(const HypersurfaceData& data);

struct E2Result {
  double residual = 0.0;        // the S o R identity
  double ricci_residual = 0.0;  // corollary R.S = tau/((n-1)n) Q(g,S)
};

/// Identity for the composed tensor S o R on a Gauss fiber:
///   S_m^e R_{ebcd} = mu (R - c G) + c (g_{bc} S_{md} - g_{bd} S_{mc}),
/// mu = (n-2)c - gauss_sign * lambda, c = tau/((n-1)n).
/// Requires a successful e1_lambda (throws std::invalid_argument otherwise).
E2Result e2_check(const HypersurfaceData& data);

/// Commutator identity on a Gauss fiber of dimension >= 4:
///   (n-3)(R.C - C.R) = Q(S,R) + ((n-2)c - gauss_sign*lambda - kappa/(n-2)) Q(g,R).
/// Returns nullopt for fiber dimension 3 (explicit skip).
std::optional<double> e3_check(const HypersurfaceData& data);

struct E4Result {
  bool lambda_zero = false;
  bool trace_match = false;  // (n-2) tau = n kappa
  double lambda_dev = 0.0;
  double trace_dev = 0.0;
  double shape_trace_dev = 0.0;  // cross-check |tr(A)^2 - tr(A^2)|, relative
};

/// The two scalar conditions that single out the quasi-Einstein fiber family.
E4Result e4_check(const HypersurfaceData& data);

/// Nilpotent Jordan-type-3 shape operator on a fiber with one null pair
/// (u, v), g(u,v) = 1, and an orthonormal spacelike complement:
/// A u = 0, A e1 = u, A v = e1, everything else in the kernel.  A^3 = 0,
/// A^2 != 0, tr A = tr A^2 = 0; the fiber is quasi-Einstein, non-Einstein.
HypersurfaceData jordan3_fixture(int fiber_dim, double tau, int gauss_sign);

/// Square-zero shape operator on two null pairs (fiber dim >= 4): the fiber
/// comes out Einstein but not of constant curvature.
HypersurfaceData square_zero_fixture(int fiber_dim, double tau, int gauss_sign);

/// Euclidean fiber metric with a diagonal shape operator.
HypersurfaceData diag_fixture(const std::vector<double>& shape_diag, double tau,
                              int gauss_sign);

}  // namespace grw
