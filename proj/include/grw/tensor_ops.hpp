#pragma once

#include <vector>

#include "grw/dense_tensor.hpp"

namespace grw {

/// Kulkarni-Nomizu product of a symmetric rank-2 tensor E with a tensor T of
/// rank k >= 2.  The first two slots of T are wedged with E:
///   (E ^ T)(x1,x2,x3,x4, y...) = E(x1,x4) T(x2,x3, y...)
///                              + E(x2,x3) T(x1,x4, y...)
///                              - E(x1,x3) T(x2,x4, y...)
///                              - E(x2,x4) T(x1,x3, y...)
/// For rank-2 symmetric T the result is a generalized curvature tensor.
DenseTensor kulkarni_nomizu(const DenseTensor& E, const DenseTensor& T);

/// Tachibana tensor Q(A,T) of a symmetric rank-2 tensor A with a rank-2 or
/// rank-4 tensor T.  Appends two slots (l,m); each slot s of T contributes
///   + A(i_s, l) T(..., m at s, ...) - A(i_s, m) T(..., l at s, ...).
DenseTensor tachibana(const DenseTensor& A, const DenseTensor& T);

/// Action of a generalized curvature tensor B on T (rank 2 or 4) as a
/// derivation, with the metric contraction made explicit:
///   (B . T)(i..., l, m) = sum_s g^{pq} T(..., p at s, ...) B(q, i_s, l, m).
DenseTensor curvature_action(const DenseTensor& B, const DenseTensor& g_inv,
                             const DenseTensor& T);

/// Raw chart-component Euclidean inner product (sum of componentwise
/// products).  Shapes must match.
double inner_product(const DenseTensor& a, const DenseTensor& b);

/// Contraction of the first slot with the metric inverse:
///   out(h, i2..ik) = g^{hl} T(l, i2..ik)  -- i.e. T with first index raised,
/// stored again as plain components.
DenseTensor raise_first(const DenseTensor& g_inv, const DenseTensor& T);

/// Least-squares fit of D against span{B_1..B_k} in the component inner
/// product.  Solves the Gram system; falls back to the minimum-norm solution
/// when the Gram matrix is rank deficient.
struct FitOutcome {
  std::vector<double> coeffs;
  double residual = 0.0;        ///< ||D - sum c_i B_i|| / max(||D||, max_i ||B_i||, tiny)
  bool rank_deficient = false;
  double gram_condition = 0.0;  ///< singular-value ratio of the Gram matrix
};

FitOutcome gram_fit(const DenseTensor& D, const std::vector<const DenseTensor*>& basis);

}  // namespace grw
