#include "grw/gauss_fiber.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "grw/conditions.hpp"
#include "grw/metric_point.hpp"
#include "grw/tensor_ops.hpp"

namespace grw {

namespace {

Eigen::MatrixXd tensor_matrix(const DenseTensor& t) {
  const int n = t.dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = t(i, j);
  return m;
}

Eigen::MatrixXd shape_matrix(const HypersurfaceData& data) {
  const MetricPoint mp = MetricPoint::from_g(data.gt);
  return tensor_matrix(mp.g_inv) * tensor_matrix(data.H);
}

double resolved_lambda(const HypersurfaceData& data) {
  if (data.lambda) return *data.lambda;
  HypersurfaceData scratch = data;
  const E1Result e1 = e1_lambda(scratch);
  if (!e1.ok)
    throw std::invalid_argument("gauss fiber: cubic shape relation does not hold");
  return e1.lambda;
}

DenseTensor matrix_tensor(const Eigen::MatrixXd& m, Symmetry sym = Symmetry::None) {
  const int n = static_cast<int>(m.rows());
  std::vector<double> c(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(i) * n + j] = m(i, j);
  return DenseTensor::from_components(n, 2, std::move(c), sym);
}

double relative_scalar_dev(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

std::vector<double> shape_operator(const HypersurfaceData& data) {
  const Eigen::MatrixXd A = shape_matrix(data);
  std::vector<double> out(static_cast<std::size_t>(A.rows()) * A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      out[static_cast<std::size_t>(i) * A.cols() + j] = A(i, j);
  return out;
}

E1Result e1_lambda(HypersurfaceData& data) {
  E1Result r;
  const Eigen::MatrixXd A = shape_matrix(data);
  const double na = A.norm();
  if (na == 0.0) {
    r.ok = true;
    r.umbilic = true;
    data.lambda = 0.0;
    return r;
  }
  const Eigen::MatrixXd A2 = A * A;
  const Eigen::MatrixXd A3 = A2 * A;
  const Eigen::MatrixXd D = A3 - A.trace() * A2;
  r.lambda = (D.array() * A.array()).sum() / (na * na);
  const double scale = std::max(
      {A3.norm(), std::abs(A.trace()) * A2.norm(), std::abs(r.lambda) * na, 1e-300});
  r.residual = (D - r.lambda * A).norm() / scale;
  r.ok = r.residual <= 1e-9;
  if (r.ok) data.lambda = r.lambda;
  return r;
}

CurvatureSnapshot gauss_snapshot(const HypersurfaceData& data) {
  const int m = data.gt.dim();
  if (m < 3) throw std::invalid_argument("gauss_snapshot: fiber dimension must be >= 3");
  const double n = m + 1;
  const double c = data.tau / ((n - 1.0) * n);
  DenseTensor R = kulkarni_nomizu(data.H, data.H).scaled(0.5 * data.gauss_sign);
  R += kulkarni_nomizu(data.gt, data.gt).scaled(0.5 * c);
  CurvatureSnapshot snap = synthetic_snapshot(data.gt, R);

  // contracted Gauss equation, used as a construction oracle
  const Eigen::MatrixXd A = shape_matrix(data);
  const Eigen::MatrixXd Hm = tensor_matrix(data.H);
  const Eigen::MatrixXd S_expected =
      data.gauss_sign * (A.trace() * Hm - Hm * tensor_matrix(snap.g_inv) * Hm) +
      (n - 2.0) * c * tensor_matrix(data.gt);
  if (relative_difference(snap.S, matrix_tensor(S_expected)) > 1e-10)
    throw std::logic_error("gauss_snapshot: contracted Gauss equation violated");
  const double kappa_expected = data.gauss_sign * (A.trace() * A.trace() - (A * A).trace()) +
                                (n - 2.0) * data.tau / n;
  if (relative_scalar_dev(snap.kappa, kappa_expected) > 1e-10)
    throw std::logic_error("gauss_snapshot: scalar contraction violated");
  return snap;
}

E2Result e2_check(const HypersurfaceData& data) {
  const double lambda = resolved_lambda(data);
  const CurvatureSnapshot snap = gauss_snapshot(data);
  const int m = snap.dim;
  const double n = m + 1;
  const double c = data.tau / ((n - 1.0) * n);
  const double mu = (n - 2.0) * c - data.gauss_sign * lambda;

  const DenseTensor V = s_compose_r(snap);
  DenseTensor rhs = (snap.R - snap.G.scaled(c)).scaled(mu);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int g = 0; g < m; ++g)
        for (int d = 0; d < m; ++d)
          rhs(a, b, g, d) += c * (snap.g(b, g) * snap.S(a, d) - snap.g(b, d) * snap.S(a, g));
  E2Result out;
  out.residual = relative_difference(V, rhs);

  const DenseTensor rs = curvature_action(snap.R, snap.g_inv, snap.S);
  out.ricci_residual = relative_difference(rs, tachibana(snap.g, snap.S).scaled(c));
  return out;
}

std::optional<double> e3_check(const HypersurfaceData& data) {
  const int m = data.gt.dim();
  if (m < 4) return std::nullopt;
  const double lambda = resolved_lambda(data);
  const CurvatureSnapshot snap = gauss_snapshot(data);
  const double n = m + 1;
  const double c = data.tau / ((n - 1.0) * n);
  const double coeff = (n - 2.0) * c - data.gauss_sign * lambda - snap.kappa / (n - 2.0);

  const DenseTensor lhs = curvature_commutator(snap).scaled(n - 3.0);
  DenseTensor rhs = tachibana(snap.S, snap.R);
  rhs += tachibana(snap.g, snap.R).scaled(coeff);
  return relative_difference(lhs, rhs);
}

E4Result e4_check(const HypersurfaceData& data) {
  const double lambda = resolved_lambda(data);
  const CurvatureSnapshot snap = gauss_snapshot(data);
  const double n = snap.dim + 1;
  const Eigen::MatrixXd A = shape_matrix(data);

  E4Result out;
  out.lambda_dev = std::abs(lambda) / std::max(1.0, A.squaredNorm());
  out.lambda_zero = out.lambda_dev <= 1e-9;
  out.trace_dev = relative_scalar_dev((n - 2.0) * data.tau, n * snap.kappa);
  out.trace_match = out.trace_dev <= 1e-9;
  out.shape_trace_dev = std::abs(A.trace() * A.trace() - (A * A).trace()) /
                        std::max(1.0, A.squaredNorm());
  return out;
}

HypersurfaceData jordan3_fixture(int fiber_dim, double tau, int gauss_sign) {
  if (fiber_dim < 3)
    throw std::invalid_argument("jordan3_fixture: fiber dimension must be >= 3");
  const int m = fiber_dim;
  // basis (u, v, e1, e2, ...): null pair first, then spacelike
  DenseTensor gt = DenseTensor::zeros(m, 2, Symmetry::SymmetricPair);
  gt(0, 1) = gt(1, 0) = 1.0;
  for (int i = 2; i < m; ++i) gt(i, i) = 1.0;
  // A v = e1, A e1 = u, A u = 0: single Jordan block of order 3
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  A(2, 1) = 1.0;
  A(0, 2) = 1.0;
  const Eigen::MatrixXd Hm = tensor_matrix(gt) * A;
  HypersurfaceData data;
  data.gt = std::move(gt);
  data.H = matrix_tensor(Hm, Symmetry::SymmetricPair);
  data.tau = tau;
  data.gauss_sign = gauss_sign;
  return data;
}

HypersurfaceData square_zero_fixture(int fiber_dim, double tau, int gauss_sign) {
  if (fiber_dim < 4)
    throw std::invalid_argument("square_zero_fixture: fiber dimension must be >= 4");
  const int m = fiber_dim;
  // two null pairs (u1, v1), (u2, v2), then spacelike
  DenseTensor gt = DenseTensor::zeros(m, 2, Symmetry::SymmetricPair);
  gt(0, 1) = gt(1, 0) = 1.0;
  gt(2, 3) = gt(3, 2) = 1.0;
  for (int i = 4; i < m; ++i) gt(i, i) = 1.0;
  // A v1 = u1, A v2 = u2, kernel elsewhere: A^2 = 0 with rank 2
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  A(0, 1) = 1.0;
  A(2, 3) = 1.0;
  const Eigen::MatrixXd Hm = tensor_matrix(gt) * A;
  HypersurfaceData data;
  data.gt = std::move(gt);
  data.H = matrix_tensor(Hm, Symmetry::SymmetricPair);
  data.tau = tau;
  data.gauss_sign = gauss_sign;
  return data;
}

HypersurfaceData diag_fixture(const std::vector<double>& shape_diag, double tau,
                              int gauss_sign) {
  const int m = static_cast<int>(shape_diag.size());
  if (m < 3) throw std::invalid_argument("diag_fixture: fiber dimension must be >= 3");
  DenseTensor gt = DenseTensor::zeros(m, 2, Symmetry::SymmetricPair);
  DenseTensor H = DenseTensor::zeros(m, 2, Symmetry::SymmetricPair);
  for (int i = 0; i < m; ++i) {
    gt(i, i) = 1.0;
    H(i, i) = shape_diag[static_cast<std::size_t>(i)];
  }
  HypersurfaceData data;
  data.gt = std::move(gt);
  data.H = std::move(H);
  data.tau = tau;
  data.gauss_sign = gauss_sign;
  return data;
}

}  // namespace grw
