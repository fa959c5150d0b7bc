#include "grw/warping.hpp"

#include <cmath>
#include <stdexcept>

namespace grw {

namespace {

void require_sign(int eps, const char* who) {
  if (eps != 1 && eps != -1) throw std::invalid_argument(std::string(who) + ": eps must be +-1");
}

}  // namespace

WarpingFunction WarpingFunction::quadratic(double a, double b) {
  WarpingFunction w;
  w.label_ = "quadratic(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
  w.jet_ = [a, b](double x) {
    const double u = a * x + b;
    return WarpingJet{u * u, 2.0 * a * u, 2.0 * a * a};
  };
  return w;
}

WarpingFunction WarpingFunction::exponential(double b, double c, double C1, int eps,
                                             bool upper_sign) {
  require_sign(eps, "WarpingFunction::exponential");
  if (!(c > 0.0)) throw std::invalid_argument("exponential warping requires c > 0");
  if (b == 0.0) throw std::invalid_argument("exponential warping requires b != 0");
  const double k = 2.0 * eps * C1 / (b * b * c);
  const double s = upper_sign ? 1.0 : -1.0;
  WarpingFunction w;
  w.label_ = "exponential(b=" + std::to_string(b) + ",c=" + std::to_string(c) +
             ",C1=" + std::to_string(C1) + ",eps=" + std::to_string(eps) +
             (upper_sign ? ",+" : ",-") + ")";
  w.eps_c1_ = eps * C1;
  w.jet_ = [b, c, k, s](double x) {
    const double E = std::exp(s * 0.5 * b * x);
    const double p = E - k / E, q = E + k / E;
    WarpingJet wj;
    wj.F = 0.5 * c * p * p;
    wj.dF = s * 0.5 * c * b * p * q;
    wj.ddF = 0.25 * c * b * b * (p * p + q * q);
    return wj;
  };
  return w;
}

WarpingFunction WarpingFunction::sinusoidal(double b, double c, double C1, int eps,
                                            bool printed_amplitude) {
  require_sign(eps, "WarpingFunction::sinusoidal");
  if (c == 0.0) throw std::invalid_argument("sinusoidal warping requires c != 0");
  const double A = printed_amplitude ? 2.0 * eps * C1 / c : 2.0 * eps * C1 / (c * c);
  if (!(A > 0.0))
    throw std::invalid_argument("sinusoidal warping requires a positive amplitude");
  WarpingFunction w;
  w.label_ = std::string("sinusoidal") + (printed_amplitude ? "[printed]" : "") +
             "(b=" + std::to_string(b) + ",c=" + std::to_string(c) +
             ",C1=" + std::to_string(C1) + ",eps=" + std::to_string(eps) + ")";
  w.eps_c1_ = eps * C1;
  w.jet_ = [A, b, c](double x) {
    const double ph = c * x + b;
    WarpingJet wj;
    wj.F = A * (1.0 + std::sin(ph));
    wj.dF = A * c * std::cos(ph);
    wj.ddF = -A * c * c * std::sin(ph);
    return wj;
  };
  return w;
}

WarpingFunction WarpingFunction::custom(std::string label,
                                        std::function<WarpingJet(double)> jet) {
  WarpingFunction w;
  w.label_ = std::move(label);
  w.jet_ = std::move(jet);
  return w;
}

WarpingJet WarpingFunction::jet(double x1) const {
  if (!jet_) throw std::logic_error("WarpingFunction: empty evaluator");
  WarpingJet wj = jet_(x1);
  if (!(wj.F > 0.0))
    throw std::domain_error("WarpingFunction: F <= 0 at the requested base point");
  return wj;
}

WarpScalars warp_scalars(const WarpingJet& wj, int eps) {
  require_sign(eps, "warp_scalars");
  if (!(wj.F > 0.0)) throw std::domain_error("warp_scalars: F must be positive");
  WarpScalars ws;
  ws.T11 = wj.ddF - wj.dF * wj.dF / (2.0 * wj.F);
  ws.trT = eps * ws.T11;
  ws.Delta1F = eps * wj.dF * wj.dF;
  ws.Delta1F_over_4F = ws.Delta1F / (4.0 * wj.F);
  return ws;
}

double warp_ode_residual(const WarpingFunction& w, double x1, double C1, int eps) {
  require_sign(eps, "warp_ode_residual");
  const WarpingJet wj = w.jet(x1);
  const double a = wj.F * wj.ddF;
  const double b = wj.dF * wj.dF;
  const double c = 2.0 * eps * C1 * wj.F;
  return std::fabs(a - b + c) / std::max({std::fabs(a), std::fabs(b), std::fabs(c), 1.0});
}

double fiber_balance_residual(const WarpingJet& wj, int eps, double kappa_fib, int n) {
  if (n < 4) throw std::invalid_argument("fiber_balance_residual: requires n >= 4");
  const WarpScalars ws = warp_scalars(wj, eps);
  const double lhs1 = ws.Delta1F_over_4F;
  const double lhs2 = 0.5 * ws.trT;
  const double rhs = kappa_fib / ((n - 1.0) * (n - 2.0));
  return std::fabs(lhs1 - lhs2 - rhs) /
         std::max({std::fabs(lhs1), std::fabs(lhs2), std::fabs(rhs), 1.0});
}

}  // namespace grw
