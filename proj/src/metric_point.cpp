#include "grw/metric_point.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace grw {

MetricPoint MetricPoint::from_g(const DenseTensor& g) {
  if (g.rank() != 2) throw std::invalid_argument("MetricPoint: g must have rank 2");
  const int n = g.dim();
  if (g.symmetry_violation(Symmetry::SymmetricPair) > 1e-10)
    throw std::domain_error("MetricPoint: g is not symmetric");

  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(i, j);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("MetricPoint: eigendecomposition failed");
  const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
  int neg = 0, pos = 0;
  for (int i = 0; i < n; ++i) {
    const double ev = es.eigenvalues()(i);
    if (std::fabs(ev) <= 1e-12 * std::max(scale, 1.0))
      throw std::domain_error("MetricPoint: metric is numerically degenerate");
    (ev < 0 ? neg : pos)++;
  }

  const Eigen::MatrixXd inv = m.inverse();
  const double err = (m * inv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (err > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()))
    throw std::domain_error("MetricPoint: inverse check failed");

  MetricPoint p;
  p.dim = n;
  p.g = g;
  p.g.declare_symmetry(Symmetry::SymmetricPair);
  p.g_inv = DenseTensor::zeros(n, 2, Symmetry::SymmetricPair);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.g_inv(i, j) = 0.5 * (inv(i, j) + inv(j, i));
  p.signature = {neg, pos};
  return p;
}

}  // namespace grw
