#pragma once

#include <functional>
#include <string>

namespace grw {

/// Value and first two derivatives of a warping function at one base point.
struct WarpingJet {
  double F = 0.0;
  double dF = 0.0;
  double ddF = 0.0;
};

/// One-parameter warping function families on a 1-dimensional base.
///
///  quadratic    F = (a x + b)^2
///  exponential  F = (c/2) (exp(s(b/2)x) - k exp(-s(b/2)x))^2,
///               k = 2 eps C1 / (b^2 c), s = +-1; requires c > 0, b != 0
///  sinusoidal   F = A (1 + sin(c x + b)); the default amplitude
///               A = 2 eps C1 / c^2 makes F solve the warp ODE
///               F F'' - (F')^2 + 2 eps C1 F = 0 identically.  The variant
///               amplitude 2 eps C1 / c (kept behind `printed_amplitude`)
///               only solves it for c = 1; the ODE residual is the arbiter.
///  custom       user-supplied jet evaluator
class WarpingFunction {
 public:
  /// Default-constructed instances carry no evaluator; jet() rejects them.
  WarpingFunction() = default;

  static WarpingFunction quadratic(double a, double b);
  static WarpingFunction exponential(double b, double c, double C1, int eps,
                                     bool upper_sign = true);
  static WarpingFunction sinusoidal(double b, double c, double C1, int eps,
                                    bool printed_amplitude = false);
  static WarpingFunction custom(std::string label,
                                std::function<WarpingJet(double)> jet);

  /// Evaluates (F, F', F'') at x1; rejects F <= 0.
  WarpingJet jet(double x1) const;

  const std::string& label() const { return label_; }
  /// eps * C1 for the families that carry them; 0 for quadratic/custom.
  double eps_c1() const { return eps_c1_; }

 private:
  std::string label_;
  double eps_c1_ = 0.0;
  std::function<WarpingJet(double)> jet_;
};

/// Scalars of a warped product metric eps (dx1)^2 + F gfib built from the
/// warping jet: the base Hessian component T11 = F'' - (F')^2 / (2F), its
/// metric trace trT = eps T11, and Delta1F = eps (F')^2.
struct WarpScalars {
  double T11 = 0.0;
  double trT = 0.0;
  double Delta1F = 0.0;
  double Delta1F_over_4F = 0.0;
};

WarpScalars warp_scalars(const WarpingJet& wj, int eps);

/// Relative residual of the warp ODE F F'' - (F')^2 + 2 eps C1 F at x1.
double warp_ode_residual(const WarpingFunction& w, double x1, double C1, int eps);

/// Relative residual of the scalar balance
///   Delta1F/(4F) - trT/2 = kappa_fib / ((n-1)(n-2)),
/// n = fiber dim + 1 >= 4.  Together with trT != 0 this characterises the
/// non-quadratic branch of the Einstein-fiber analysis.
double fiber_balance_residual(const WarpingJet& wj, int eps, double kappa_fib, int n);

}  // namespace grw
