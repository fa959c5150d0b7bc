#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace grw {

/// Scalar carrying its value, gradient and Hessian with respect to a fixed
/// set of chart coordinates.  Forward-mode propagation through arithmetic and
/// the elementary functions; exact for polynomial expressions.
class Jet2 {
 public:
  Jet2() = default;
  Jet2(double v, int nvars)
      : v_(v), g_(Eigen::VectorXd::Zero(nvars)), h_(Eigen::MatrixXd::Zero(nvars, nvars)) {}

  /// Constant with respect to all variables.
  static Jet2 constant(double v, int nvars) { return Jet2(v, nvars); }
  /// The coordinate variable `slot` with value v.
  static Jet2 variable(double v, int slot, int nvars) {
    Jet2 j(v, nvars);
    j.g_(slot) = 1.0;
    return j;
  }

  double value() const { return v_; }
  const Eigen::VectorXd& grad() const { return g_; }
  const Eigen::MatrixXd& hess() const { return h_; }
  int nvars() const { return static_cast<int>(g_.size()); }

  Jet2 operator-() const {
    Jet2 r = *this;
    r.v_ = -r.v_; r.g_ = -r.g_; r.h_ = -r.h_;
    return r;
  }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v_ += b.v_; r.g_ += b.g_; r.h_ += b.h_;
    return r;
  }
  friend Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v_ -= b.v_; r.g_ -= b.g_; r.h_ -= b.h_;
    return r;
  }
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r(0.0, a.nvars());
    r.v_ = a.v_ * b.v_;
    r.g_ = a.g_ * b.v_ + b.g_ * a.v_;
    r.h_ = a.h_ * b.v_ + b.h_ * a.v_ + a.g_ * b.g_.transpose() + b.g_ * a.g_.transpose();
    return r;
  }
  friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * b.reciprocal(); }

  friend Jet2 operator+(const Jet2& a, double c) { Jet2 r = a; r.v_ += c; return r; }
  friend Jet2 operator+(double c, const Jet2& a) { return a + c; }
  friend Jet2 operator-(const Jet2& a, double c) { Jet2 r = a; r.v_ -= c; return r; }
  friend Jet2 operator-(double c, const Jet2& a) { return -a + c; }
  friend Jet2 operator*(const Jet2& a, double c) {
    Jet2 r = a; r.v_ *= c; r.g_ *= c; r.h_ *= c; return r;
  }
  friend Jet2 operator*(double c, const Jet2& a) { return a * c; }
  friend Jet2 operator/(const Jet2& a, double c) { return a * (1.0 / c); }
  friend Jet2 operator/(double c, const Jet2& a) { return a.reciprocal() * c; }

  Jet2 reciprocal() const {
    if (v_ == 0.0) throw std::domain_error("Jet2: division by zero value");
    const double iv = 1.0 / v_;
    return chain(iv, -iv * iv, 2.0 * iv * iv * iv);
  }

  friend Jet2 sin(const Jet2& a) { return a.chain(std::sin(a.v_), std::cos(a.v_), -std::sin(a.v_)); }
  friend Jet2 cos(const Jet2& a) { return a.chain(std::cos(a.v_), -std::sin(a.v_), -std::cos(a.v_)); }
  friend Jet2 exp(const Jet2& a) {
    const double e = std::exp(a.v_);
    return a.chain(e, e, e);
  }
  friend Jet2 sqrt(const Jet2& a) {
    if (a.v_ <= 0.0) throw std::domain_error("Jet2: sqrt of nonpositive value");
    const double s = std::sqrt(a.v_);
    return a.chain(s, 0.5 / s, -0.25 / (s * a.v_));
  }
  friend Jet2 pow_int(const Jet2& a, int n) {
    if (n == 0) return constant(1.0, a.nvars());
    if (n < 0) return pow_int(a.reciprocal(), -n);
    Jet2 r = a;
    for (int i = 1; i < n; ++i) r = r * a;
    return r;
  }

 private:
  /// Composition with a scalar map f: value f0, df, d2f at our value.
  Jet2 chain(double f0, double df, double d2f) const {
    Jet2 r(0.0, nvars());
    r.v_ = f0;
    r.g_ = df * g_;
    r.h_ = df * h_ + d2f * (g_ * g_.transpose());
    return r;
  }

  double v_ = 0.0;
  Eigen::VectorXd g_;
  Eigen::MatrixXd h_;
};

}  // namespace grw
