#include "grw/snapshot.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "grw/tensor_ops.hpp"

namespace grw {

Christoffels christoffel(const MetricJet& jet) {
  const int d = jet.dim;
  const std::size_t dd = static_cast<std::size_t>(d);
  Eigen::MatrixXd gm(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gm(i, j) = jet.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  const Eigen::MatrixXd gi = gm.inverse();
  if (!((gm * gi - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <
        1e-10 * std::max(1.0, gm.cwiseAbs().maxCoeff())))
    throw std::domain_error("christoffel: degenerate metric at sample point");

  Christoffels ch;
  ch.dim = d;
  ch.gamma.assign(dd * dd * dd, 0.0);
  ch.dgamma.assign(dd * dd * dd * dd, 0.0);

  auto dg = [&jet](int k, int i, int j) {
    return jet.dg[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };
  auto ddg = [&jet](int k, int l, int i, int j) {
    return jet.ddg[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };

  // d_k g^{hl} = -g^{hp} (d_k g_pq) g^{ql}
  std::vector<double> dginv(dd * dd * dd, 0.0);
  for (int k = 0; k < d; ++k)
    for (int h = 0; h < d; ++h)
      for (int l = 0; l < d; ++l) {
        double s = 0.0;
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q) s += gi(h, p) * dg(k, p, q) * gi(q, l);
        dginv[(static_cast<std::size_t>(k) * dd + static_cast<std::size_t>(h)) * dd +
              static_cast<std::size_t>(l)] = -s;
      }

  for (int h = 0; h < d; ++h)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int l = 0; l < d; ++l)
          s += gi(h, l) * (dg(i, l, j) + dg(j, i, l) - dg(l, i, j));
        ch.gamma[(static_cast<std::size_t>(h) * dd + static_cast<std::size_t>(i)) * dd +
                 static_cast<std::size_t>(j)] = 0.5 * s;
      }

  for (int k = 0; k < d; ++k)
    for (int h = 0; h < d; ++h)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double s = 0.0;
          for (int l = 0; l < d; ++l) {
            s += dginv[(static_cast<std::size_t>(k) * dd + static_cast<std::size_t>(h)) * dd +
                       static_cast<std::size_t>(l)] *
                 (dg(i, l, j) + dg(j, i, l) - dg(l, i, j));
            s += gi(h, l) * (ddg(k, i, l, j) + ddg(k, j, i, l) - ddg(k, l, i, j));
          }
          ch.dgamma[((static_cast<std::size_t>(k) * dd + static_cast<std::size_t>(h)) * dd +
                     static_cast<std::size_t>(i)) * dd + static_cast<std::size_t>(j)] = 0.5 * s;
        }

  // metric compatibility: d_k g_ij = G^l_ki g_lj + G^l_kj g_il
  double worst = 0.0, scale = std::max(1.0, gm.cwiseAbs().maxCoeff());
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int l = 0; l < d; ++l) s += ch.G(l, k, i) * gm(l, j) + ch.G(l, k, j) * gm(i, l);
        worst = std::max(worst, std::fabs(dg(k, i, j) - s));
        scale = std::max(scale, std::fabs(dg(k, i, j)));
      }
  if (worst > 1e-10 * scale)
    throw std::domain_error("christoffel: metric compatibility check failed");
  return ch;
}

namespace {

DenseTensor riemann_from(const MetricJet& jet, const Christoffels& ch) {
  const int d = jet.dim;
  DenseTensor R = DenseTensor::zeros(d, 4);
  for (int h = 0; h < d; ++h)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double s = 0.0;
          for (int l = 0; l < d; ++l) {
            double r = ch.dG(h, l, i, j) - ch.dG(i, l, h, j);
            for (int p = 0; p < d; ++p)
              r += ch.G(l, h, p) * ch.G(p, i, j) - ch.G(l, i, p) * ch.G(p, h, j);
            s += jet.g[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] * r;
          }
          R(h, i, j, k) = s;
        }
  return R;
}

DenseTensor ricci_from(const MetricPoint& mp, const DenseTensor& R) {
  const int d = mp.dim;
  DenseTensor S = DenseTensor::zeros(d, 2);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int h = 0; h < d; ++h)
        for (int k = 0; k < d; ++k) s += mp.g_inv(h, k) * R(h, i, j, k);
      S(i, j) = s;
    }
  return S;
}

double scalar_from(const MetricPoint& mp, const DenseTensor& S) {
  double kappa = 0.0;
  for (int i = 0; i < mp.dim; ++i)
    for (int j = 0; j < mp.dim; ++j) kappa += mp.g_inv(i, j) * S(i, j);
  return kappa;
}

}  // namespace

DenseTensor weyl_from(const MetricPoint& mp, const DenseTensor& R, const DenseTensor& S,
                      double kappa) {
  const int n = mp.dim;
  if (n < 3) throw std::invalid_argument("weyl_from: requires dim >= 3");
  DenseTensor C = R;
  C -= kulkarni_nomizu(mp.g, S).scaled(1.0 / (n - 2));
  C += kulkarni_nomizu(mp.g, mp.g).scaled(0.5 * kappa / ((n - 1.0) * (n - 2.0)));
  return C;
}

CurvatureSnapshot make_snapshot(const MetricPoint& mp, const DenseTensor& R, double sym_tol) {
  if (R.dim() != mp.dim || R.rank() != 4)
    throw std::invalid_argument("make_snapshot: R shape mismatch");
  CurvatureSnapshot s;
  s.dim = mp.dim;
  s.signature = mp.signature;
  s.g = mp.g;
  s.g_inv = mp.g_inv;
  s.R = R;
  s.R.declare_symmetry(Symmetry::GeneralizedCurvature, sym_tol);
  s.S = ricci_from(mp, s.R);
  s.S.declare_symmetry(Symmetry::SymmetricPair, 1e-9);
  s.kappa = scalar_from(mp, s.S);
  s.G = kulkarni_nomizu(mp.g, mp.g).scaled(0.5);
  s.C = (mp.dim >= 3) ? weyl_from(mp, s.R, s.S, s.kappa) : DenseTensor::zeros(mp.dim, 4);
  return s;
}

CurvatureSnapshot snapshot_from_field(const MetricField& field,
                                      const std::vector<double>& point) {
  const MetricJet jet = field.two_jet(point);
  const int d = jet.dim;
  DenseTensor g = DenseTensor::zeros(d, 2);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = jet.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  const MetricPoint mp = MetricPoint::from_g(g);
  const Christoffels ch = christoffel(jet);
  return make_snapshot(mp, riemann_from(jet, ch));
}

CurvatureSnapshot space_form_snapshot(int dim, int neg, double kappa) {
  if (dim < 2) throw std::invalid_argument("space_form_snapshot: dim must be >= 2");
  DenseTensor g = DenseTensor::zeros(dim, 2, Symmetry::SymmetricPair);
  for (int i = 0; i < dim; ++i) g(i, i) = (i < neg) ? -1.0 : 1.0;
  const MetricPoint mp = MetricPoint::from_g(g);
  const DenseTensor G = kulkarni_nomizu(g, g).scaled(0.5);
  const double c = kappa / ((dim - 1.0) * dim);
  return make_snapshot(mp, G.scaled(c), 1e-12);
}

CurvatureSnapshot product_snapshot(const CurvatureSnapshot& a, const CurvatureSnapshot& b) {
  const int da = a.dim, db = b.dim, d = da + db;
  if (d > 8) throw std::invalid_argument("product_snapshot: combined dimension too large");
  DenseTensor g = DenseTensor::zeros(d, 2);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) g(i, j) = a.g(i, j);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) g(da + i, da + j) = b.g(i, j);
  DenseTensor R = DenseTensor::zeros(d, 4);
  for (int h = 0; h < da; ++h)
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int k = 0; k < da; ++k) R(h, i, j, k) = a.R(h, i, j, k);
  for (int h = 0; h < db; ++h)
    for (int i = 0; i < db; ++i)
      for (int j = 0; j < db; ++j)
        for (int k = 0; k < db; ++k) R(da + h, da + i, da + j, da + k) = b.R(h, i, j, k);
  return synthetic_snapshot(g, R, 1e-10);
}

CurvatureSnapshot synthetic_snapshot(const DenseTensor& g, const DenseTensor& R,
                                     double sym_tol) {
  const MetricPoint mp = MetricPoint::from_g(g);
  return make_snapshot(mp, R, sym_tol);
}

double snapshot_difference(const CurvatureSnapshot& a, const CurvatureSnapshot& b) {
  if (a.dim != b.dim) throw std::invalid_argument("snapshot_difference: dimension mismatch");
  double worst = relative_difference(a.g, b.g);
  worst = std::max(worst, relative_difference(a.R, b.R));
  worst = std::max(worst, relative_difference(a.S, b.S));
  // C is derived from R, S, kappa, g; judging its deviation on the curvature
  // scale avoids dividing noise by noise on conformally flat snapshots.
  worst = std::max(worst, (a.C - b.C).norm() /
                              std::max({a.R.norm(), b.R.norm(), a.C.norm(),
                                        b.C.norm(), 1e-300}));
  worst = std::max(worst, std::fabs(a.kappa - b.kappa) /
                              std::max({std::fabs(a.kappa), std::fabs(b.kappa), 1e-300}));
  return worst;
}

}  // namespace grw
