#include "grw/warped_product.hpp"

#include <cmath>
#include <stdexcept>

#include "grw/tensor_ops.hpp"

namespace grw {

namespace {

void check_fiber(const CurvatureSnapshot& fib) {
  if (fib.dim < 3)
    throw std::invalid_argument("warped product: fiber dimension must be >= 3");
}

// V(h,i,j,k) = A_h^l T(l,i,j,k) with the index raised through g_inv.
DenseTensor compose_first_slot(const DenseTensor& A, const DenseTensor& g_inv,
                               const DenseTensor& T) {
  const int d = A.dim();
  DenseTensor out = DenseTensor::zeros(d, 4);
  for (int h = 0; h < d; ++h)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double s = 0.0;
          for (int l = 0; l < d; ++l)
            for (int p = 0; p < d; ++p) s += g_inv(l, p) * A(h, p) * T(l, i, j, k);
          out(h, i, j, k) = s;
        }
  return out;
}

}  // namespace

CurvatureSnapshot warped_snapshot(const WarpedSpec& spec, double x1) {
  check_fiber(spec.fiber);
  const CurvatureSnapshot& fib = spec.fiber;
  const int m = fib.dim, n = m + 1;
  const WarpingJet wj = spec.warping.jet(x1);
  const WarpScalars ws = warp_scalars(wj, spec.eps);
  const double F = wj.F;
  const double D = ws.Delta1F_over_4F;

  DenseTensor g = DenseTensor::zeros(n, 2);
  g(0, 0) = static_cast<double>(spec.eps);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) g(a + 1, b + 1) = F * fib.g(a, b);

  DenseTensor R = DenseTensor::zeros(n, 4);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const double v = -0.5 * ws.T11 * fib.g(a, b);
      R(a + 1, 0, 0, b + 1) = v;
      R(0, a + 1, 0, b + 1) = -v;
      R(a + 1, 0, b + 1, 0) = -v;
      R(0, a + 1, b + 1, 0) = v;
    }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          R(a + 1, b + 1, c + 1, d + 1) = F * (fib.R(a, b, c, d) - D * fib.G(a, b, c, d));

  CurvatureSnapshot snap = synthetic_snapshot(g, R, 1e-10);

  // scalar curvature balance of the assembled data
  const double kappa_expected =
      (fib.kappa - (n - 1.0) * (ws.trT + (n - 2.0) * D)) / F;
  if (std::fabs(snap.kappa - kappa_expected) >
      1e-10 * std::max({std::fabs(snap.kappa), std::fabs(kappa_expected), 1.0}))
    throw std::logic_error("warped_snapshot: scalar curvature balance violated");
  return snap;
}

WarpedBlocks warped_blocks(const WarpedSpec& spec, double x1) {
  check_fiber(spec.fiber);
  const CurvatureSnapshot& fib = spec.fiber;
  const int m = fib.dim, n = m + 1;
  const double eps = static_cast<double>(spec.eps);
  const WarpingJet wj = spec.warping.jet(x1);
  const WarpScalars ws = warp_scalars(wj, spec.eps);
  const double F = wj.F;
  const double D = ws.Delta1F_over_4F;
  const double X = 0.5 * ws.trT + (n - 2.0) * D;  // trT/2 + (n-2) Delta1F/(4F)
  const double Y = 0.5 * ws.trT - D;              // trT/2 - Delta1F/(4F)

  const DenseTensor q_gR = tachibana(fib.g, fib.R);
  const DenseTensor q_gS = tachibana(fib.g, fib.S);
  const DenseTensor q_SR = tachibana(fib.S, fib.R);
  const DenseTensor q_SG = tachibana(fib.S, fib.G);
  const DenseTensor v_fib = compose_first_slot(fib.S, fib.g_inv, fib.R);
  const DenseTensor rs_fib = curvature_action(fib.R, fib.g_inv, fib.S);

  WarpedBlocks out;
  out.fiber_dim = m;
  out.dim = n;
  out.scalars = ws;
  out.F = F;

  out.qgr_mixed = DenseTensor::zeros(m, 4);
  out.qsr_mixed = DenseTensor::zeros(m, 4);
  out.p_mixed = DenseTensor::zeros(m, 4);
  const double W =
      (n - 2.0) * D * D - 0.25 * ws.trT * ws.trT - (n - 3.0) * 0.5 * ws.trT * D;
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c)
      for (int d = 0; d < m; ++d)
        for (int mu = 0; mu < m; ++mu) {
          const double Gt = fib.G(mu, b, c, d);
          const double Rt = fib.R(mu, b, c, d);
          out.qgr_mixed(b, c, d, mu) = F * eps * (Rt + Y * Gt);
          out.qsr_mixed(b, c, d, mu) =
              -0.5 * ws.trT * eps *
              ((n - 1.0) * Rt - fib.g(b, c) * fib.S(d, mu) + fib.g(b, d) * fib.S(c, mu) +
               Y * Gt);
          out.p_mixed(b, c, d, mu) =
              eps * (v_fib(mu, b, c, d) - X * Rt +
                     Y * (fib.g(b, c) * fib.S(d, mu) - fib.g(b, d) * fib.S(c, mu)) + W * Gt);
        }

  out.qgr_fiber = q_gR.scaled(F * F);
  out.qsr_fiber = q_SR.scaled(F);
  out.qsr_fiber -= q_SG.scaled(0.25 * ws.Delta1F);
  out.qsr_fiber -= q_gR.scaled(F * X);

  out.qsr_base_pair = q_gS.scaled(-0.5 * ws.trT * eps);

  out.p_base_pair = DenseTensor::zeros(m, 4);
  for (int b = 0; b < m; ++b)
    for (int d = 0; d < m; ++d)
      for (int l = 0; l < m; ++l)
        for (int mu = 0; mu < m; ++mu)
          out.p_base_pair(b, d, l, mu) =
              eps * (rs_fib(b, d, l, mu) + Y * q_gS(b, d, l, mu));

  out.v_mixed_bb = DenseTensor::zeros(m, 2);
  out.v_mixed_ff = DenseTensor::zeros(m, 2);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      out.v_mixed_bb(a, b) = (n - 1.0) / (4.0 * F) * ws.trT * ws.T11 * fib.g(a, b);
      out.v_mixed_ff(a, b) =
          -0.5 * ws.trT / F * eps * (fib.S(a, b) - X * fib.g(a, b));
    }

  out.v_fiber = DenseTensor::zeros(m, 4);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          out.v_fiber(a, b, c, d) =
              v_fib(a, b, c, d) - X * fib.R(a, b, c, d) -
              D * (fib.g(b, c) * fib.S(a, d) - fib.g(b, d) * fib.S(a, c)) +
              X * D * fib.G(a, b, c, d);

  out.p_fiber = DenseTensor::zeros(m, 6);
  const DenseTensor& V = out.v_fiber;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          for (int l = 0; l < m; ++l)
            for (int mu = 0; mu < m; ++mu)
              out.p_fiber(a, b, c, d, l, mu) =
                  F * (fib.g(a, l) * V(mu, b, c, d) - fib.g(a, mu) * V(l, b, c, d) -
                       fib.g(b, l) * V(mu, a, c, d) + fib.g(b, mu) * V(l, a, c, d) +
                       fib.g(c, l) * V(mu, d, a, b) - fib.g(c, mu) * V(l, d, a, b) -
                       fib.g(d, l) * V(mu, c, a, b) + fib.g(d, mu) * V(l, c, a, b) -
                       fib.g(b, c) * (V(a, d, l, mu) + V(d, a, l, mu)) -
                       fib.g(a, d) * (V(b, c, l, mu) + V(c, b, l, mu)) +
                       fib.g(b, d) * (V(a, c, l, mu) + V(c, a, l, mu)) +
                       fib.g(a, c) * (V(b, d, l, mu) + V(d, b, l, mu)));
  return out;
}

namespace {

// Fills the eight images of the pattern (0,b,c,d | 0,mu) of a rank-6 tensor
// with generalized-curvature symmetry in slots 1-4 and antisymmetry in (5,6).
void fill_mixed(DenseTensor& T, const DenseTensor& blk) {
  const int m = blk.dim();
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c)
      for (int d = 0; d < m; ++d)
        for (int mu = 0; mu < m; ++mu) {
          const double v = blk(b, c, d, mu);
          T(0, b + 1, c + 1, d + 1, 0, mu + 1) = v;
          T(b + 1, 0, c + 1, d + 1, 0, mu + 1) = -v;
          T(0, b + 1, c + 1, d + 1, mu + 1, 0) = -v;
          T(b + 1, 0, c + 1, d + 1, mu + 1, 0) = v;
          T(c + 1, d + 1, 0, b + 1, 0, mu + 1) = v;
          T(c + 1, d + 1, b + 1, 0, 0, mu + 1) = -v;
          T(c + 1, d + 1, 0, b + 1, mu + 1, 0) = -v;
          T(c + 1, d + 1, b + 1, 0, mu + 1, 0) = v;
        }
}

// Fills the images of the pattern (0,b,0,d | l,mu); the block must be
// symmetric in (b,d), which covers the pair-exchange images.
void fill_base_pair(DenseTensor& T, const DenseTensor& blk) {
  const int m = blk.dim();
  for (int b = 0; b < m; ++b)
    for (int d = 0; d < m; ++d)
      for (int l = 0; l < m; ++l)
        for (int mu = 0; mu < m; ++mu) {
          const double v = blk(b, d, l, mu);
          T(0, b + 1, 0, d + 1, l + 1, mu + 1) = v;
          T(b + 1, 0, 0, d + 1, l + 1, mu + 1) = -v;
          T(0, b + 1, d + 1, 0, l + 1, mu + 1) = -v;
          T(b + 1, 0, d + 1, 0, l + 1, mu + 1) = v;
        }
}

void fill_fiber6(DenseTensor& T, const DenseTensor& blk) {
  const int m = blk.dim();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          for (int l = 0; l < m; ++l)
            for (int mu = 0; mu < m; ++mu)
              T(a + 1, b + 1, c + 1, d + 1, l + 1, mu + 1) = blk(a, b, c, d, l, mu);
}

}  // namespace

DenseTensor reassemble_qgr(const WarpedBlocks& b) {
  DenseTensor T = DenseTensor::zeros(b.dim, 6);
  fill_mixed(T, b.qgr_mixed);
  fill_fiber6(T, b.qgr_fiber);
  return T;
}

DenseTensor reassemble_qsr(const WarpedBlocks& b) {
  DenseTensor T = DenseTensor::zeros(b.dim, 6);
  fill_mixed(T, b.qsr_mixed);
  fill_base_pair(T, b.qsr_base_pair);
  fill_fiber6(T, b.qsr_fiber);
  return T;
}

DenseTensor reassemble_v(const WarpedBlocks& b) {
  DenseTensor T = DenseTensor::zeros(b.dim, 4);
  const int m = b.fiber_dim;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      // pattern (0, b, c, 0): antisymmetric in the last slot pair
      T(0, x + 1, y + 1, 0) = b.v_mixed_bb(x, y);
      T(0, x + 1, 0, y + 1) = -b.v_mixed_bb(x, y);
      // pattern (a, 0, 0, d)
      T(x + 1, 0, 0, y + 1) = b.v_mixed_ff(x, y);
      T(x + 1, 0, y + 1, 0) = -b.v_mixed_ff(x, y);
    }
  for (int a = 0; a < m; ++a)
    for (int bb = 0; bb < m; ++bb)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          T(a + 1, bb + 1, c + 1, d + 1) = b.v_fiber(a, bb, c, d);
  return T;
}

DenseTensor reassemble_p(const WarpedBlocks& b) {
  DenseTensor T = DenseTensor::zeros(b.dim, 6);
  fill_mixed(T, b.p_mixed);
  fill_base_pair(T, b.p_base_pair);
  fill_fiber6(T, b.p_fiber);
  return T;
}

MetricField warped_metric_field(int eps, const WarpingFunction& warping,
                                const MetricField& fiber) {
  if (eps != 1 && eps != -1)
    throw std::invalid_argument("warped_metric_field: eps must be +-1");
  if (fiber.dim < 3)
    throw std::invalid_argument("warped_metric_field: fiber dimension must be >= 3");
  const int m = fiber.dim, n = m + 1;
  MetricField f;
  f.dim = n;
  f.signature = {fiber.signature.first + (eps < 0 ? 1 : 0),
                 fiber.signature.second + (eps > 0 ? 1 : 0)};
  f.provenance = "warped[" + warping.label() + " over " + fiber.provenance + "]";
  f.eval = [eps, warping, fiber, m, n](const std::vector<double>& x) {
    const WarpingJet wj = warping.jet(x[0]);
    const std::vector<double> y(x.begin() + 1, x.end());
    const MetricJet fj = fiber.two_jet(y);
    MetricJet out = MetricJet::zeros(n);
    out.g[0][0] = static_cast<double>(eps);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        const std::size_t A = static_cast<std::size_t>(a) + 1, B = static_cast<std::size_t>(b) + 1;
        out.g[A][B] = wj.F * fj.g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        out.dg[0][A][B] = wj.dF * fj.g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        out.ddg[0][0][A][B] = wj.ddF * fj.g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        for (int k = 0; k < m; ++k) {
          const std::size_t K = static_cast<std::size_t>(k) + 1;
          const double d1 = fj.dg[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
          out.dg[K][A][B] = wj.F * d1;
          out.ddg[0][K][A][B] = out.ddg[K][0][A][B] = wj.dF * d1;
          for (int l = 0; l < m; ++l)
            out.ddg[K][static_cast<std::size_t>(l) + 1][A][B] =
                wj.F * fj.ddg[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        }
      }
    return out;
  };
  return f;
}

}  // namespace grw
