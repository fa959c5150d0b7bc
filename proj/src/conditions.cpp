#include "grw/conditions.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "grw/tensor_ops.hpp"

namespace grw {

namespace {

constexpr double kTiny = 1e-300;

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

/// ||deviation|| relative to the largest participating term.
double combo_residual(const DenseTensor& deviation, std::initializer_list<double> term_norms) {
  double scale = kTiny;
  for (double t : term_norms) scale = std::max(scale, t);
  return deviation.norm() / scale;
}

Eigen::MatrixXd as_matrix(const DenseTensor& t) {
  const int n = t.dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = t(i, j);
  return m;
}

struct RicciSpectrum {
  bool ok = true;
  std::string diagnostic;
  std::vector<double> real_alphas;  // deduplicated
  std::vector<int> ranks;           // rank(g^-1 S - alpha I) per alpha
  int complex_pairs = 0;
};

/// Real generalized eigenvalues of (S, g) with the rank of S - alpha g at
/// each, judged by singular values of the mixed matrix.
RicciSpectrum ricci_spectrum(const CurvatureSnapshot& s, double tol) {
  RicciSpectrum out;
  const int n = s.dim;
  const Eigen::MatrixXd M = as_matrix(s.g_inv) * as_matrix(s.S);
  Eigen::EigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) {
    out.ok = false;
    out.diagnostic = "eigensolver did not converge on g^-1 S";
    return out;
  }
  const double scale = std::max(1.0, M.norm());
  std::vector<double> reals;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) <= 1e-8 * scale) {
      reals.push_back(ev.real());
    } else {
      ++out.complex_pairs;  // counted twice, halved below
    }
  }
  out.complex_pairs /= 2;
  std::sort(reals.begin(), reals.end());
  for (double a : reals) {
    if (!out.real_alphas.empty() && std::abs(a - out.real_alphas.back()) <= 1e-8 * scale)
      continue;
    out.real_alphas.push_back(a);
  }
  for (double a : out.real_alphas) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M - a * Eigen::MatrixXd::Identity(n, n));
    const auto& sv = svd.singularValues();
    const double cut = tol * std::max(sv(0), kTiny);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > cut) ++rank;
    out.ranks.push_back(rank);
  }
  return out;
}

double einstein_deviation(const CurvatureSnapshot& s) {
  DenseTensor dev = s.S - s.g.scaled(s.kappa / s.dim);
  return dev.norm() / std::max(s.S.norm(), 1.0);
}

/// g_{bc} S_{md} - g_{bd} S_{mc} in slot order (m, b, c, d); the skew
/// right-hand block shared by (SR2) and the Einstein-fiber identities.
DenseTensor metric_ricci_skew(const CurvatureSnapshot& s) {
  const int n = s.dim;
  DenseTensor K = DenseTensor::zeros(n, 4);
  for (int m = 0; m < n; ++m)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          K(m, b, c, d) = s.g(b, c) * s.S(m, d) - s.g(b, d) * s.S(m, c);
  return K;
}

struct FitProblem {
  DenseTensor lhs;
  DenseTensor basis;
  double degeneracy_scale = 0.0;  // product of factor norms behind the basis
};

FitProblem fit_problem(const CurvatureSnapshot& s, ConditionId id) {
  const double nR = s.R.norm();
  const double nS = s.S.norm();
  const double nC = s.C.norm();
  const double ng = s.g.norm();
  // A Weyl tensor at roundoff level of R must make the C-factor bases
  // degenerate (the condition is vacuous at a conformally flat point), so
  // their scales reference the curvature norm, not the factor norm.
  const double nCscale = std::max(nC, nR);
  switch (id) {
    case ConditionId::A1:
      return {curvature_commutator(s), tachibana(s.S, s.R), nS * nR};
    case ConditionId::GENEINTSU:
      return {curvature_commutator(s), tachibana(s.g, s.R), ng * nR};
    case ConditionId::QGC:
      return {curvature_commutator(s), tachibana(s.g, s.C), ng * nCscale};
    case ConditionId::QSC:
      return {curvature_commutator(s), tachibana(s.S, s.C), nS * nCscale};
    case ConditionId::R77:
      return {curvature_action(s.C, s.g_inv, s.R), tachibana(s.g, s.R), ng * nR};
    case ConditionId::R777:
      return {curvature_action(s.C, s.g_inv, s.S), tachibana(s.g, s.S), ng * nS};
    case ConditionId::R877:
      return {curvature_action(s.R, s.g_inv, s.R) - tachibana(s.S, s.R),
              tachibana(s.g, s.C), ng * nCscale};
    case ConditionId::PSEUDO:
      return {curvature_action(s.R, s.g_inv, s.R), tachibana(s.g, s.R), ng * nR};
    case ConditionId::RICCIPSEUDO:
      return {curvature_action(s.R, s.g_inv, s.S), tachibana(s.g, s.S), ng * nS};
    default:
      throw std::invalid_argument("fit_condition: not a one-coefficient fit id");
  }
}

}  // namespace

const char* condition_name(ConditionId id) {
  switch (id) {
    case ConditionId::A1: return "A1";
    case ConditionId::GENEINTSU: return "GENEINTSU";
    case ConditionId::QGC: return "QGC";
    case ConditionId::QSC: return "QSC";
    case ConditionId::R77: return "R77";
    case ConditionId::R777: return "R777";
    case ConditionId::R877: return "R877";
    case ConditionId::PSEUDO: return "PSEUDO";
    case ConditionId::RICCIPSEUDO: return "RICCIPSEUDO";
    case ConditionId::H1: return "H1";
    case ConditionId::GENEIN1: return "GENEIN1";
    case ConditionId::SR2: return "SR2";
    case ConditionId::D1: return "D1";
    case ConditionId::D3: return "D3";
    case ConditionId::GE: return "GE";
    case ConditionId::ROTER: return "ROTER";
    case ConditionId::THM21: return "THM21";
  }
  return "?";
}

const std::vector<ConditionId>& all_condition_ids() {
  static const std::vector<ConditionId> ids = {
      ConditionId::A1,     ConditionId::GENEINTSU, ConditionId::QGC,
      ConditionId::QSC,    ConditionId::R77,       ConditionId::R777,
      ConditionId::R877,   ConditionId::PSEUDO,    ConditionId::RICCIPSEUDO,
      ConditionId::H1,     ConditionId::GENEIN1,   ConditionId::SR2,
      ConditionId::D1,     ConditionId::D3,        ConditionId::GE,
      ConditionId::ROTER,  ConditionId::THM21,
  };
  return ids;
}

std::optional<ConditionId> condition_from_name(std::string_view name) {
  for (ConditionId id : all_condition_ids())
    if (name == condition_name(id)) return id;
  return std::nullopt;
}

DenseTensor s_compose_r(const CurvatureSnapshot& s) {
  const int n = s.dim;
  const DenseTensor Rup = raise_first(s.g_inv, s.R);
  DenseTensor V = DenseTensor::zeros(n, 4);
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m) acc += s.S(h, m) * Rup(m, i, j, k);
          V(h, i, j, k) = acc;
        }
  return V;
}

DenseTensor curvature_commutator(const CurvatureSnapshot& s) {
  return curvature_action(s.R, s.g_inv, s.C) - curvature_action(s.C, s.g_inv, s.R);
}

DenseTensor p_tensor(const CurvatureSnapshot& s) {
  const int n = s.dim;
  const DenseTensor V = s_compose_r(s);
  const DenseTensor& g = s.g;
  DenseTensor P = DenseTensor::zeros(n, 6);
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            for (int m = 0; m < n; ++m)
              P(h, i, j, k, l, m) =
                  g(h, l) * V(m, i, j, k) - g(h, m) * V(l, i, j, k)
                  - g(i, l) * V(m, h, j, k) + g(i, m) * V(l, h, j, k)
                  + g(j, l) * V(m, k, h, i) - g(j, m) * V(l, k, h, i)
                  - g(k, l) * V(m, j, h, i) + g(k, m) * V(l, j, h, i)
                  - g(i, j) * (V(h, k, l, m) + V(k, h, l, m))
                  - g(h, k) * (V(i, j, l, m) + V(j, i, l, m))
                  + g(i, k) * (V(h, j, l, m) + V(j, h, l, m))
                  + g(h, j) * (V(i, k, l, m) + V(k, i, l, m));
  return P;
}

double ge_residual(const CurvatureSnapshot& s) {
  if (s.dim < 4)
    throw std::domain_error("ge_residual: identity requires dim >= 4");
  const double n = s.dim;
  const DenseTensor lhs = curvature_commutator(s).scaled(n - 2.0);
  const DenseTensor qsr = tachibana(s.S, s.R);
  const DenseTensor qgr = tachibana(s.g, s.R);
  const DenseTensor P = p_tensor(s);
  const double c = s.kappa / (n - 1.0);
  DenseTensor dev = lhs - qsr;
  dev += qgr.scaled(c);
  dev -= P;
  // Every term is curvature-quadratic, so ||R||^2 floors the scale; without it
  // a snapshot on which all four terms vanish would divide noise by noise.
  return combo_residual(dev, {lhs.norm(), qsr.norm(), std::abs(c) * qgr.norm(),
                              P.norm(), s.R.norm() * s.R.norm()});
}

SetMembership classify_sets(const CurvatureSnapshot& s, double tol) {
  SetMembership m;
  const double n = s.dim;
  m.dev_US = einstein_deviation(s);
  m.in_US = m.dev_US > tol;

  DenseTensor r_dev = s.R - s.G.scaled(s.kappa / ((n - 1.0) * n));
  m.dev_UR = r_dev.norm() / std::max(s.R.norm(), 1.0);
  m.in_UR = m.dev_UR > tol;

  m.dev_UC = s.C.norm() / std::max(s.R.norm(), 1.0);
  m.in_UC = m.dev_UC > tol;

  m.dev_U = tachibana(s.S, s.R).norm() / std::max(s.S.norm() * s.R.norm(), 1.0);
  m.in_U = m.dev_U > tol;

  m.in_curlyU = m.in_U && m.in_US && m.in_UC;

  const RicciSpectrum spec = ricci_spectrum(s, tol);
  m.in_U1 = spec.ok;
  for (std::size_t i = 0; i < spec.real_alphas.size(); ++i)
    if (spec.ranks[i] < 2) m.in_U1 = false;
  return m;
}

QuasiEinsteinResult quasi_einstein(const CurvatureSnapshot& s, double tol) {
  QuasiEinsteinResult out;
  out.is_einstein = einstein_deviation(s) <= tol;
  const RicciSpectrum spec = ricci_spectrum(s, tol);
  if (!spec.ok) {
    out.decided = false;
    out.diagnostic = spec.diagnostic;
    return out;
  }
  out.real_alphas = spec.real_alphas;
  out.complex_pairs = spec.complex_pairs;
  int best_rank = s.dim + 1;
  double best_alpha = 0.0;
  for (std::size_t i = 0; i < spec.real_alphas.size(); ++i) {
    if (spec.ranks[i] < best_rank) {
      best_rank = spec.ranks[i];
      best_alpha = spec.real_alphas[i];
    }
  }
  if (out.is_einstein) {
    // quasi-Einstein is evaluated away from Einstein points only
    out.alpha = s.kappa / s.dim;
    out.rank_defect = s.dim;
    return out;
  }
  if (best_rank <= s.dim) {
    out.alpha = best_alpha;
    out.rank_defect = s.dim - best_rank;
    out.is_quasi_einstein = best_rank <= 1;
  }
  return out;
}

FitResult fit_condition(const CurvatureSnapshot& s, ConditionId id, double tol) {
  FitProblem p = fit_problem(s, id);
  FitResult r;
  r.id = id;
  r.tol = tol;
  r.lhs_norm = p.lhs.norm();
  r.basis_norms = {p.basis.norm()};
  if (p.basis.norm() <= tol * std::max(p.degeneracy_scale, kTiny)) {
    r.status = FitStatus::BasisDegenerate;
    r.residual = quiet_nan();
    return r;
  }
  const FitOutcome fit = gram_fit(p.lhs, {&p.basis});
  r.coefficients = fit.coeffs;
  r.residual = fit.residual;
  r.holds = fit.residual <= tol;
  return r;
}

double check_h1(const CurvatureSnapshot& s) {
  const DenseTensor V = s_compose_r(s);
  const DenseTensor rhs = s.R.scaled(s.kappa / (s.dim - 1.0));
  return relative_difference(V, rhs);
}

std::pair<double, double> check_genein1(const CurvatureSnapshot& s, double membership_tol) {
  if (einstein_deviation(s) > membership_tol)
    throw std::invalid_argument("check_genein1: snapshot is not Einstein");
  const double n = s.dim;
  const double c = s.kappa / ((n - 1.0) * n);
  const DenseTensor D = curvature_commutator(s);
  const double r1 = relative_difference(D, tachibana(s.g, s.R).scaled(c));
  const double r2 = relative_difference(D, tachibana(s.g, s.C).scaled(c));
  return {r1, r2};
}

double check_sr2(const CurvatureSnapshot& fiber, double ea2) {
  const double m = fiber.dim;  // ambient warped dimension is m + 1
  const double coeff = fiber.kappa / m;
  const DenseTensor V = s_compose_r(fiber);
  const DenseTensor K = metric_ricci_skew(fiber);
  DenseTensor dev = V - fiber.R.scaled(coeff);
  dev -= K.scaled(ea2);
  dev += fiber.G.scaled(ea2 * coeff);
  return combo_residual(dev, {V.norm(), coeff * fiber.R.norm(),
                              std::abs(ea2) * K.norm(),
                              std::abs(ea2 * coeff) * fiber.G.norm()});
}

D1D3Result check_d1_d3(const CurvatureSnapshot& fiber, double ea2) {
  D1D3Result out;
  const DenseTensor rs = curvature_action(fiber.R, fiber.g_inv, fiber.S);
  const DenseTensor qgs = tachibana(fiber.g, fiber.S);
  out.d1 = combo_residual(rs - qgs.scaled(ea2), {rs.norm(), std::abs(ea2) * qgs.norm()});
  if (fiber.dim >= 4) {
    const double m = fiber.dim;
    const DenseTensor lhs = curvature_commutator(fiber).scaled(m - 2.0);
    const DenseTensor qsr = tachibana(fiber.S, fiber.R);
    const DenseTensor qgr = tachibana(fiber.g, fiber.R);
    const double c = fiber.kappa / (m * (m - 1.0));
    DenseTensor dev = lhs - qsr;
    dev += qgr.scaled(c);
    out.d3 = combo_residual(dev, {lhs.norm(), qsr.norm(), std::abs(c) * qgr.norm(),
                                  fiber.R.norm() * fiber.R.norm()});
  }
  return out;
}

double roter_lr(int dim, double phi, double mu, double eta) {
  return ((dim - 2.0) * (mu * mu - phi * eta) - mu) / phi;
}

FitResult roter_fit(const CurvatureSnapshot& s, double tol) {
  FitResult r;
  r.id = ConditionId::ROTER;
  r.tol = tol;
  r.lhs_norm = s.R.norm();
  const DenseTensor ss = kulkarni_nomizu(s.S, s.S).scaled(0.5);
  const DenseTensor gs = kulkarni_nomizu(s.g, s.S);
  const DenseTensor& G = s.G;
  r.basis_norms = {ss.norm(), gs.norm(), G.norm()};
  const FitOutcome fit = gram_fit(s.R, {&ss, &gs, &G});
  r.meaningful = classify_sets(s, tol).in_U1;
  if (fit.rank_deficient) {
    r.status = FitStatus::BasisDegenerate;
    r.residual = quiet_nan();
    return r;
  }
  r.coefficients = fit.coeffs;
  r.residual = fit.residual;
  r.holds = fit.residual <= tol;
  const double phi = fit.coeffs[0];
  if (r.holds && std::abs(phi) > 1e-12 * std::max(1.0, s.R.norm()))
    r.coefficients.push_back(roter_lr(s.dim, phi, fit.coeffs[1], fit.coeffs[2]));
  return r;
}

Theorem21Report theorem2_1_check(const CurvatureSnapshot& s, double tol) {
  Theorem21Report rep;
  const SetMembership m = classify_sets(s, tol);
  rep.in_US = m.in_US;
  rep.in_UC = m.in_UC;
  const FitResult hyp = fit_condition(s, ConditionId::QGC, tol);
  rep.hypothesis_holds = hyp.status == FitStatus::Fitted && hyp.holds;
  if (!rep.hypothesis_holds || !m.in_US || !m.in_UC) return rep;

  rep.vacuous = false;
  rep.fitted_L = hyp.coefficients[0];
  const DenseTensor rr = curvature_action(s.R, s.g_inv, s.R);
  const DenseTensor qgr = tachibana(s.g, s.R);
  rep.pseudo_residual = combo_residual(rr - qgr.scaled(rep.fitted_L),
                                       {rr.norm(), std::abs(rep.fitted_L) * qgr.norm()});
  const DenseTensor cr = curvature_action(s.C, s.g_inv, s.R);
  rep.cr_residual = cr.norm() / std::max(s.C.norm() * s.R.norm(), 1.0);
  rep.conclusions_hold = rep.pseudo_residual <= tol && rep.cr_residual <= tol;
  return rep;
}

ConditionOutcome evaluate_condition(const CurvatureSnapshot& s, ConditionId id,
                                    double tol, std::optional<double> ea2) {
  ConditionOutcome out;
  out.id = id;
  switch (id) {
    case ConditionId::A1:
    case ConditionId::GENEINTSU:
    case ConditionId::QGC:
    case ConditionId::QSC:
    case ConditionId::R77:
    case ConditionId::R777:
    case ConditionId::R877:
    case ConditionId::PSEUDO:
    case ConditionId::RICCIPSEUDO: {
      const FitResult fit = fit_condition(s, id, tol);
      if (fit.status == FitStatus::BasisDegenerate) {
        out.status = "basis-degenerate";
        out.note = "right-hand tensor vanishes; condition is vacuous here";
      } else {
        out.status = "fitted";
        out.coefficients = fit.coefficients;
        out.residuals = {fit.residual};
        out.holds = fit.holds;
        out.counts = true;
      }
      return out;
    }
    case ConditionId::H1:
      out.status = "residual";
      out.residuals = {check_h1(s)};
      out.holds = out.residuals[0] <= tol;
      out.counts = true;
      return out;
    case ConditionId::GENEIN1: {
      if (einstein_deviation(s) > tol) {
        out.status = "inapplicable";
        out.note = "snapshot is not Einstein";
        return out;
      }
      const auto [r1, r2] = check_genein1(s, tol);
      out.status = "residual";
      out.coefficients = {s.kappa / ((s.dim - 1.0) * s.dim)};
      out.residuals = {r1, r2};
      out.holds = r1 <= tol && r2 <= tol;
      out.counts = true;
      return out;
    }
    case ConditionId::SR2:
      if (!ea2) throw std::invalid_argument("SR2 requires an ea2 parameter");
      out.status = "residual";
      out.residuals = {check_sr2(s, *ea2)};
      out.holds = out.residuals[0] <= tol;
      out.counts = true;
      return out;
    case ConditionId::D1:
    case ConditionId::D3: {
      if (!ea2) throw std::invalid_argument("D1/D3 require an ea2 parameter");
      const D1D3Result d = check_d1_d3(s, *ea2);
      if (id == ConditionId::D1) {
        out.status = "residual";
        out.residuals = {d.d1};
        out.holds = d.d1 <= tol;
        out.counts = true;
      } else if (d.d3) {
        out.status = "residual";
        out.residuals = {*d.d3};
        out.holds = *d.d3 <= tol;
        out.counts = true;
      } else {
        out.status = "skipped";
        out.note = "needs dim >= 4";
      }
      return out;
    }
    case ConditionId::GE:
      if (s.dim < 4) {
        out.status = "skipped";
        out.note = "needs dim >= 4";
        return out;
      }
      out.status = "residual";
      out.residuals = {ge_residual(s)};
      out.holds = out.residuals[0] <= tol;
      out.counts = true;
      return out;
    case ConditionId::ROTER: {
      const FitResult fit = roter_fit(s, tol);
      if (fit.status == FitStatus::BasisDegenerate) {
        out.status = "basis-degenerate";
        out.note = "S wedge basis is rank deficient";
      } else {
        out.status = "fitted";
        out.coefficients = fit.coefficients;
        out.residuals = {fit.residual};
        out.holds = fit.holds;
        out.counts = true;
        if (!fit.meaningful) out.note = "outside U1: fit reported but not meaningful";
      }
      return out;
    }
    case ConditionId::THM21: {
      const Theorem21Report rep = theorem2_1_check(s, tol);
      if (rep.vacuous) {
        out.status = "vacuous-pass";
        out.note = rep.hypothesis_holds ? "outside U_S or U_C" : "hypothesis fit fails";
        out.holds = true;
      } else {
        out.status = "residual";
        out.coefficients = {rep.fitted_L};
        out.residuals = {rep.pseudo_residual, rep.cr_residual};
        out.holds = rep.conclusions_hold;
        out.counts = true;
      }
      return out;
    }
  }
  throw std::logic_error("evaluate_condition: unhandled id");
}

}  // namespace grw
