#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grw/snapshot.hpp"

namespace grw {

/// Curvature conditions addressable by name.  The first block are
/// one-coefficient fits D = L * B; the rest are residual checks or special
/// procedures.
enum class ConditionId {
  A1,           // R.C - C.R = L Q(S,R)
  GENEINTSU,    // R.C - C.R = L1 Q(g,R)
  QGC,          // R.C - C.R = L Q(g,C)
  QSC,          // R.C - C.R = L Q(S,C)
  R77,          // C.R = L Q(g,R)
  R777,         // C.S = L Q(g,S)
  R877,         // R.R - Q(S,R) = L Q(g,C)
  PSEUDO,       // R.R = L_R Q(g,R)
  RICCIPSEUDO,  // R.S = L_S Q(g,S)
  H1,           // S o R = kappa/(n-1) R
  GENEIN1,      // Einstein: R.C - C.R = kappa/((n-1)n) Q(g,R) = ... Q(g,C)
  SR2,          // fiber: S o R = kappa/(n-1) R + ea2 (g^S skew) - ...
  D1,           // fiber: R.S = ea2 Q(g,S)
  D3,           // fiber: (n-3)(R.C - C.R) = Q(S,R) - kappa/((n-1)(n-2)) Q(g,R)
  GE,           // identity residual, see ge_residual
  ROTER,        // R = (phi/2) S^S + mu g^S + eta G
  THM21,        // hypothesis QGC => pseudosymmetry and C.R = 0
};

const char* condition_name(ConditionId id);
std::optional<ConditionId> condition_from_name(std::string_view name);
const std::vector<ConditionId>& all_condition_ids();

enum class FitStatus {
  Fitted,           ///< least-squares fit performed
  BasisDegenerate,  ///< basis tensor vanishes (or Gram is rank deficient)
};

/// Outcome of a coefficient fit D = sum_i c_i B_i.
struct FitResult {
  ConditionId id;
  FitStatus status = FitStatus::Fitted;
  std::vector<double> coefficients;  ///< empty when degenerate
  double residual = 0.0;             ///< relative; NaN when degenerate
  bool holds = false;                ///< status == Fitted and residual <= tol
  double tol = 0.0;
  double lhs_norm = 0.0;
  std::vector<double> basis_norms;
  bool meaningful = true;  ///< roter_fit only: snapshot lies in U1
};

/// Membership in the paper's nondegeneracy sets, decided by relative
/// deviations against `tol`.
struct SetMembership {
  bool in_UR = false;      // R != kappa/((n-1)n) G
  bool in_US = false;      // S != kappa/n g
  bool in_UC = false;      // C != 0
  bool in_U = false;       // Q(S,R) != 0
  bool in_curlyU = false;  // U and U_S and U_C
  bool in_U1 = false;      // rank(S - alpha g) >= 2 for every real alpha
  double dev_UR = 0.0, dev_US = 0.0, dev_UC = 0.0, dev_U = 0.0;
};

struct QuasiEinsteinResult {
  bool decided = true;  ///< false only if the eigensolver fails
  bool is_einstein = false;
  bool is_quasi_einstein = false;
  double alpha = 0.0;         ///< the rank-1 generalized eigenvalue when quasi-Einstein
  int rank_defect = 0;        ///< dim - rank(S - alpha g) at the best alpha
  std::vector<double> real_alphas;
  int complex_pairs = 0;
  std::string diagnostic;
};

/// V tensor: V(h,i,j,k) = S_h^l R_{l i j k}, the Ricci endomorphism composed
/// into the first curvature slot.
DenseTensor s_compose_r(const CurvatureSnapshot& s);

/// Difference tensor R.C - C.R (rank 6).
DenseTensor curvature_commutator(const CurvatureSnapshot& s);

/// The (0,6) companion of the commutator identity: twelve g*V terms.
DenseTensor p_tensor(const CurvatureSnapshot& s);

/// Relative residual of
///   (n-2)(R.C - C.R) = Q(S,R) - kappa/(n-1) Q(g,R) + P,
/// an identity of every semi-Riemannian manifold with n >= 4.
double ge_residual(const CurvatureSnapshot& s);

SetMembership classify_sets(const CurvatureSnapshot& s, double tol = 1e-8);

/// Einstein / quasi-Einstein detection.  Candidate alphas are the real roots
/// of det(S - alpha g) = 0; rank is judged by singular values of the mixed
/// matrix with relative cutoff `tol`.  Never silently false: an eigensolver
/// failure is reported through `decided`.
QuasiEinsteinResult quasi_einstein(const CurvatureSnapshot& s, double tol = 1e-8);

/// One-coefficient fit for the fit-type ids (A1 .. RICCIPSEUDO above).
/// A vanishing basis tensor yields FitStatus::BasisDegenerate, not a fit.
FitResult fit_condition(const CurvatureSnapshot& s, ConditionId id, double tol = 1e-8);

/// Relative residual of S o R = kappa/(n-1) R.
double check_h1(const CurvatureSnapshot& s);

/// Einstein-manifold commutator identity; returns the residuals of
/// R.C - C.R = kappa/((n-1)n) Q(g,R) and of the Q(g,C) variant.
/// Throws std::invalid_argument when the snapshot is not Einstein.
std::pair<double, double> check_genein1(const CurvatureSnapshot& s,
                                        double membership_tol = 1e-8);

/// Fiber condition: relative residual of
///   S o R = kappa/(n-1) R + ea2 (g_{bc} S_{md} - g_{bd} S_{mc})
///           - ea2 kappa/(n-1) G
/// with n = fiber dim + 1 (the dimension of the ambient warped product).
double check_sr2(const CurvatureSnapshot& fiber, double ea2);

struct D1D3Result {
  double d1 = 0.0;
  std::optional<double> d3;  ///< empty when fiber dim == 3 (skipped)
};

/// Fiber conditions R.S = ea2 Q(g,S) and, for fiber dim >= 4,
/// (n-3)(R.C - C.R) = Q(S,R) - kappa/((n-1)(n-2)) Q(g,R) with n = dim + 1.
D1D3Result check_d1_d3(const CurvatureSnapshot& fiber, double ea2);

/// Three-coefficient fit R = (phi/2) S^S + mu g^S + eta G.  On success with
/// phi != 0 a fourth coefficient L_R = phi^-1((n-2)(mu^2 - phi eta) - mu) is
/// appended.  A rank-deficient Gram matrix (e.g. Einstein S) reports
/// FitStatus::BasisDegenerate; `meaningful` mirrors membership in U1.
FitResult roter_fit(const CurvatureSnapshot& s, double tol = 1e-8);

double roter_lr(int dim, double phi, double mu, double eta);

struct Theorem21Report {
  bool hypothesis_holds = false;  ///< R.C - C.R = L Q(g,C) fits at tol
  bool in_US = false;
  bool in_UC = false;
  bool vacuous = true;  ///< hypothesis or membership failed; nothing to verify
  double fitted_L = 0.0;
  double pseudo_residual = 0.0;  ///< residual of R.R = L Q(g,R)
  double cr_residual = 0.0;      ///< relative norm of C.R
  bool conclusions_hold = false;
};

/// If R.C - C.R = L Q(g,C) holds at `tol` and the point lies in U_S and U_C,
/// verifies R.R = L Q(g,R) and C.R = 0 with the same L; otherwise reports a
/// vacuous pass.
Theorem21Report theorem2_1_check(const CurvatureSnapshot& s, double tol = 1e-8);

/// Uniform record for one condition evaluated on one snapshot, as emitted
/// into reports.  `counts` marks participation in a pass/fail verdict
/// (vacuous, skipped and inapplicable entries never fail a run).
struct ConditionOutcome {
  ConditionId id;
  std::string status;  // "fitted", "residual", "basis-degenerate", "skipped",
                       // "inapplicable", "vacuous-pass"
  std::vector<double> coefficients;
  std::vector<double> residuals;
  bool holds = false;
  bool counts = false;
  std::string note;
};

/// Evaluates any condition id on a snapshot.  SR2, D1 and D3 require `ea2`
/// (throws std::invalid_argument when missing); fiber-only and
/// Einstein-only conditions degrade to non-counting statuses where the
/// snapshot does not qualify.
ConditionOutcome evaluate_condition(const CurvatureSnapshot& s, ConditionId id,
                                    double tol = 1e-8,
                                    std::optional<double> ea2 = std::nullopt);

}  // namespace grw
