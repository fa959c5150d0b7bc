#pragma once

#include <utility>
#include <vector>

#include "grw/dense_tensor.hpp"
#include "grw/metric_field.hpp"
#include "grw/metric_point.hpp"

namespace grw {

/// Connection coefficients and their coordinate derivatives at a point.
struct Christoffels {
  int dim = 0;
  std::vector<double> gamma;   // gamma[h][i][j], flat h*d*d + i*d + j
  std::vector<double> dgamma;  // dgamma[k][h][i][j], flat ((k*d+h)*d+i)*d+j

  double G(int h, int i, int j) const {
    const std::size_t d = static_cast<std::size_t>(dim);
    return gamma[(static_cast<std::size_t>(h) * d + static_cast<std::size_t>(i)) * d +
                 static_cast<std::size_t>(j)];
  }
  double dG(int k, int h, int i, int j) const {
    const std::size_t d = static_cast<std::size_t>(dim);
    return dgamma[((static_cast<std::size_t>(k) * d + static_cast<std::size_t>(h)) * d +
                   static_cast<std::size_t>(i)) * d + static_cast<std::size_t>(j)];
  }
};

/// Levi-Civita coefficients from a metric two-jet; verifies the
/// metric-compatibility identity d_k g_ij = G^l_ki g_lj + G^l_kj g_il.
Christoffels christoffel(const MetricJet& jet);

/// Pointwise curvature bundle: metric, inverse, Riemann (0,4), Ricci, scalar
/// curvature, Weyl (0,4) and G = (1/2) g ^ g.
///
/// Conventions: R(X1,X2,X3,X4) = g(Riem(X1,X2)X3, X4) with
/// Riem(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]; Ricci is the (1,4)
/// contraction S_ij = g^{hk} R_{hijk}.  With these choices the round unit
/// n-sphere has R = (kappa / ((n-1)n)) G and S = (kappa/n) g with kappa > 0.
struct CurvatureSnapshot {
  int dim = 0;
  std::pair<int, int> signature{0, 0};
  DenseTensor g, g_inv;
  DenseTensor R;  // generalized curvature symmetry, verified
  DenseTensor S;  // symmetric
  double kappa = 0.0;
  DenseTensor C;  // Weyl; identically zero tensor when dim == 2
  DenseTensor G;
};

/// Weyl tensor of (g, R, S, kappa); requires dim >= 3.
DenseTensor weyl_from(const MetricPoint& mp, const DenseTensor& R, const DenseTensor& S,
                      double kappa);

/// Assembles the full bundle from a metric point and a curvature tensor with
/// generalized curvature symmetry (verified to `sym_tol`).
CurvatureSnapshot make_snapshot(const MetricPoint& mp, const DenseTensor& R,
                                double sym_tol = 1e-9);

/// Snapshot of a field at a chart point: two-jet -> Christoffels -> Riemann.
CurvatureSnapshot snapshot_from_field(const MetricField& field,
                                      const std::vector<double>& point);

/// Constant-curvature model: g = diag(-1 x neg, +1 x pos), R = c G with
/// c = kappa / ((n-1) n).
CurvatureSnapshot space_form_snapshot(int dim, int neg, double kappa);

/// Metric and curvature of a direct product; mixed components vanish.
/// Factors of dimension 2 are allowed as building blocks.
CurvatureSnapshot product_snapshot(const CurvatureSnapshot& a, const CurvatureSnapshot& b);

/// Snapshot from explicitly given (g, R); R must carry generalized curvature
/// symmetry within `sym_tol`.
CurvatureSnapshot synthetic_snapshot(const DenseTensor& g, const DenseTensor& R,
                                     double sym_tol = 1e-10);

/// Largest relative deviation between two snapshots over g, R, S, C, kappa.
double snapshot_difference(const CurvatureSnapshot& a, const CurvatureSnapshot& b);

}  // namespace grw
