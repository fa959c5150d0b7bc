#include "grw/tensor_ops.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace grw {

DenseTensor kulkarni_nomizu(const DenseTensor& E, const DenseTensor& T) {
  if (E.rank() != 2) throw std::invalid_argument("kulkarni_nomizu: E must have rank 2");
  if (T.rank() < 2) throw std::invalid_argument("kulkarni_nomizu: T must have rank >= 2");
  if (E.dim() != T.dim()) throw std::invalid_argument("kulkarni_nomizu: dimension mismatch");
  if (E.symmetry_violation(Symmetry::SymmetricPair) > 1e-10)
    throw std::domain_error("kulkarni_nomizu: E is not symmetric");
  const int d = E.dim();
  const int out_rank = T.rank() + 2;
  // Trailing slots of T beyond the first two come along unchanged; they are
  // contiguous in row-major layout, so handle them as a flat block.
  std::size_t block = 1;
  for (int r = 2; r < T.rank(); ++r) block *= static_cast<std::size_t>(d);

  const Symmetry out_sym = (T.rank() == 2 && T.symmetry() == Symmetry::SymmetricPair)
                               ? Symmetry::GeneralizedCurvature
                               : Symmetry::None;
  DenseTensor out = DenseTensor::zeros(d, out_rank, out_sym);
  const auto& tc = T.components();
  auto& oc = out.components();
  const std::size_t dd = static_cast<std::size_t>(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          const double Ead = E(a, e), Ebc = E(b, c), Eac = E(a, c), Ebe = E(b, e);
          const std::size_t o0 = (((static_cast<std::size_t>(a) * dd + b) * dd + c) * dd + e) * block;
          const std::size_t t_bc = (static_cast<std::size_t>(b) * dd + c) * block;
          const std::size_t t_ae = (static_cast<std::size_t>(a) * dd + e) * block;
          const std::size_t t_be = (static_cast<std::size_t>(b) * dd + e) * block;
          const std::size_t t_ac = (static_cast<std::size_t>(a) * dd + c) * block;
          for (std::size_t r = 0; r < block; ++r)
            oc[o0 + r] = Ead * tc[t_bc + r] + Ebc * tc[t_ae + r]
                       - Eac * tc[t_be + r] - Ebe * tc[t_ac + r];
        }
  return out;
}

DenseTensor tachibana(const DenseTensor& A, const DenseTensor& T) {
  if (A.rank() != 2) throw std::invalid_argument("tachibana: A must have rank 2");
  if (A.dim() != T.dim()) throw std::invalid_argument("tachibana: dimension mismatch");
  if (A.symmetry_violation(Symmetry::SymmetricPair) > 1e-10)
    throw std::domain_error("tachibana: A is not symmetric");
  const int d = A.dim();
  if (T.rank() == 2) {
    DenseTensor out = DenseTensor::zeros(d, 4);
    for (int h = 0; h < d; ++h)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          for (int m = 0; m < d; ++m)
            out(h, k, l, m) = A(h, l) * T(m, k) + A(k, l) * T(h, m)
                            - A(h, m) * T(l, k) - A(k, m) * T(h, l);
    return out;
  }
  if (T.rank() == 4) {
    DenseTensor out = DenseTensor::zeros(d, 6);
    for (int h = 0; h < d; ++h)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l)
              for (int m = 0; m < d; ++m)
                out(h, i, j, k, l, m) =
                    A(h, l) * T(m, i, j, k) + A(i, l) * T(h, m, j, k)
                  + A(j, l) * T(h, i, m, k) + A(k, l) * T(h, i, j, m)
                  - A(h, m) * T(l, i, j, k) - A(i, m) * T(h, l, j, k)
                  - A(j, m) * T(h, i, l, k) - A(k, m) * T(h, i, j, l);
    return out;
  }
  throw std::invalid_argument("tachibana: T must have rank 2 or 4");
}

DenseTensor curvature_action(const DenseTensor& B, const DenseTensor& g_inv,
                             const DenseTensor& T) {
  if (B.rank() != 4) throw std::invalid_argument("curvature_action: B must have rank 4");
  if (g_inv.rank() != 2) throw std::invalid_argument("curvature_action: g_inv must have rank 2");
  if (B.dim() != T.dim() || B.dim() != g_inv.dim())
    throw std::invalid_argument("curvature_action: dimension mismatch");
  const int d = B.dim();
  // Bup(p, s, l, m) = g^{pq} B(q, s, l, m)
  DenseTensor Bup = raise_first(g_inv, B);
  if (T.rank() == 2) {
    DenseTensor out = DenseTensor::zeros(d, 4);
    for (int h = 0; h < d; ++h)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          for (int m = 0; m < d; ++m) {
            double s = 0.0;
            for (int p = 0; p < d; ++p)
              s += T(p, k) * Bup(p, h, l, m) + T(h, p) * Bup(p, k, l, m);
            out(h, k, l, m) = s;
          }
    return out;
  }
  if (T.rank() == 4) {
    DenseTensor out = DenseTensor::zeros(d, 6);
    for (int h = 0; h < d; ++h)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l)
              for (int m = 0; m < d; ++m) {
                double s = 0.0;
                for (int p = 0; p < d; ++p)
                  s += T(p, i, j, k) * Bup(p, h, l, m)
                     + T(h, p, j, k) * Bup(p, i, l, m)
                     + T(h, i, p, k) * Bup(p, j, l, m)
                     + T(h, i, j, p) * Bup(p, k, l, m);
                out(h, i, j, k, l, m) = s;
              }
    return out;
  }
  throw std::invalid_argument("curvature_action: T must have rank 2 or 4");
}

double inner_product(const DenseTensor& a, const DenseTensor& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank())
    throw std::invalid_argument("inner_product: shape mismatch");
  const auto& ca = a.components();
  const auto& cb = b.components();
  double s = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) s += ca[i] * cb[i];
  return s;
}

DenseTensor raise_first(const DenseTensor& g_inv, const DenseTensor& T) {
  if (g_inv.rank() != 2) throw std::invalid_argument("raise_first: g_inv must have rank 2");
  if (T.rank() < 1 || g_inv.dim() != T.dim())
    throw std::invalid_argument("raise_first: shape mismatch");
  const int d = T.dim();
  std::size_t block = 1;
  for (int r = 1; r < T.rank(); ++r) block *= static_cast<std::size_t>(d);
  DenseTensor out = DenseTensor::zeros(d, T.rank());
  const auto& tc = T.components();
  auto& oc = out.components();
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      const double w = g_inv(p, q);
      if (w == 0.0) continue;
      const std::size_t src = static_cast<std::size_t>(q) * block;
      const std::size_t dst = static_cast<std::size_t>(p) * block;
      for (std::size_t r = 0; r < block; ++r) oc[dst + r] += w * tc[src + r];
    }
  return out;
}

FitOutcome gram_fit(const DenseTensor& D, const std::vector<const DenseTensor*>& basis) {
  if (basis.empty()) throw std::invalid_argument("gram_fit: empty basis");
  for (const DenseTensor* b : basis)
    if (!b || b->dim() != D.dim() || b->rank() != D.rank())
      throw std::invalid_argument("gram_fit: basis shape mismatch");
  const int k = static_cast<int>(basis.size());
  Eigen::MatrixXd M(k, k);
  Eigen::VectorXd v(k);
  for (int i = 0; i < k; ++i) {
    v(i) = inner_product(*basis[static_cast<std::size_t>(i)], D);
    for (int j = 0; j < k; ++j)
      M(i, j) = inner_product(*basis[static_cast<std::size_t>(i)],
                              *basis[static_cast<std::size_t>(j)]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smax = svd.singularValues()(0);
  svd.setThreshold(1e-13);
  const Eigen::VectorXd c = svd.solve(v);  // minimum-norm solution on the rank-deficient part

  FitOutcome out;
  out.coeffs.assign(c.data(), c.data() + k);
  out.rank_deficient = svd.rank() < k;
  const double smin = svd.singularValues()(k - 1);
  out.gram_condition = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();

  DenseTensor resid = D;
  for (int i = 0; i < k; ++i)
    resid -= basis[static_cast<std::size_t>(i)]->scaled(c(i));
  double bmax = 0.0;
  for (const DenseTensor* b : basis) bmax = std::max(bmax, b->norm());
  out.residual = resid.norm() / std::max({D.norm(), bmax, 1e-300});
  return out;
}

}  // namespace grw
