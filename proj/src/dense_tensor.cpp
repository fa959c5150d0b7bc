#include "grw/dense_tensor.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace grw {

namespace {

std::size_t pow_size(int dim, int rank) {
  std::size_t n = 1;
  for (int r = 0; r < rank; ++r) n *= static_cast<std::size_t>(dim);
  return n;
}

void check_shape(int dim, int rank) {
  if (dim < 1 || dim > 8) throw std::invalid_argument("DenseTensor: dim must be in [1,8]");
  if (rank < 0 || rank > 6) throw std::invalid_argument("DenseTensor: rank must be in [0,6]");
}

}  // namespace

DenseTensor DenseTensor::zeros(int dim, int rank, Symmetry sym) {
  check_shape(dim, rank);
  DenseTensor t;
  t.dim_ = dim;
  t.rank_ = rank;
  t.sym_ = sym;
  t.c_.assign(pow_size(dim, rank), 0.0);
  return t;
}

DenseTensor DenseTensor::from_components(int dim, int rank, std::vector<double> data,
                                         Symmetry sym, double sym_tol) {
  check_shape(dim, rank);
  if (data.size() != pow_size(dim, rank))
    throw std::invalid_argument("DenseTensor: component count does not match dim^rank");
  DenseTensor t;
  t.dim_ = dim;
  t.rank_ = rank;
  t.sym_ = Symmetry::None;
  t.c_ = std::move(data);
  t.declare_symmetry(sym, sym_tol);
  return t;
}

double DenseTensor::at(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank_)
    throw std::invalid_argument("DenseTensor::at: index rank mismatch");
  std::size_t f = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw std::out_of_range("DenseTensor::at: index out of range");
    f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return c_[f];
}

void DenseTensor::set(std::span<const int> idx, double v) {
  if (static_cast<int>(idx.size()) != rank_)
    throw std::invalid_argument("DenseTensor::set: index rank mismatch");
  std::size_t f = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw std::out_of_range("DenseTensor::set: index out of range");
    f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  c_[f] = v;
}

double DenseTensor::norm() const {
  double s = 0.0;
  for (double v : c_) s += v * v;
  return std::sqrt(s);
}

double DenseTensor::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::fabs(v));
  return m;
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& o) {
  if (dim_ != o.dim_ || rank_ != o.rank_)
    throw std::invalid_argument("DenseTensor: shape mismatch in +=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  if (sym_ != o.sym_) sym_ = Symmetry::None;
  return *this;
}

DenseTensor& DenseTensor::operator-=(const DenseTensor& o) {
  if (dim_ != o.dim_ || rank_ != o.rank_)
    throw std::invalid_argument("DenseTensor: shape mismatch in -=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  if (sym_ != o.sym_) sym_ = Symmetry::None;
  return *this;
}

DenseTensor& DenseTensor::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

DenseTensor DenseTensor::scaled(double s) const {
  DenseTensor t = *this;
  t *= s;
  return t;
}

double DenseTensor::symmetry_violation(Symmetry sym) const {
  if (sym == Symmetry::None) return 0.0;
  const double scale = std::max(max_abs(), 1e-300);
  const int d = dim_;
  double worst = 0.0;
  if (sym == Symmetry::SymmetricPair) {
    if (rank_ != 2) throw std::invalid_argument("SymmetricPair requires rank 2");
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        worst = std::max(worst, std::fabs((*this)(i, j) - (*this)(j, i)));
    return worst / scale;
  }
  if (sym == Symmetry::GeneralizedCurvature) {
    if (rank_ != 4) throw std::invalid_argument("GeneralizedCurvature requires rank 4");
    for (int h = 0; h < d; ++h)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k) {
            const double t = (*this)(h, i, j, k);
            worst = std::max(worst, std::fabs(t + (*this)(i, h, j, k)));
            worst = std::max(worst, std::fabs(t + (*this)(h, i, k, j)));
            worst = std::max(worst, std::fabs(t - (*this)(j, k, h, i)));
            // first Bianchi: cyclic sum over the first three slots
            worst = std::max(worst,
                             std::fabs(t + (*this)(i, j, h, k) + (*this)(j, h, i, k)));
          }
    return worst / scale;
  }
  return 0.0;
}

DenseTensor& DenseTensor::declare_symmetry(Symmetry sym, double tol) {
  const double v = symmetry_violation(sym);
  if (v > tol)
    throw std::domain_error("DenseTensor: declared symmetry violated, relative violation " +
                            std::to_string(v));
  sym_ = sym;
  return *this;
}

void DenseTensor::write_nonzero(std::ostream& os) const {
  std::vector<int> idx(static_cast<std::size_t>(rank_), 0);
  char buf[64];
  for (std::size_t f = 0; f < c_.size(); ++f) {
    std::size_t rem = f;
    for (int r = rank_ - 1; r >= 0; --r) {
      idx[static_cast<std::size_t>(r)] = static_cast<int>(rem % static_cast<std::size_t>(dim_));
      rem /= static_cast<std::size_t>(dim_);
    }
    if (c_[f] == 0.0) continue;
    os << '(';
    for (int r = 0; r < rank_; ++r) {
      if (r) os << ' ';
      os << idx[static_cast<std::size_t>(r)];
    }
    std::snprintf(buf, sizeof buf, "%.17g", c_[f]);
    os << ") " << buf << '\n';
  }
}

double relative_difference(const DenseTensor& a, const DenseTensor& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank())
    throw std::invalid_argument("relative_difference: shape mismatch");
  double diff = 0.0;
  const auto& ca = a.components();
  const auto& cb = b.components();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const double d = ca[i] - cb[i];
    diff += d * d;
  }
  return std::sqrt(diff) / std::max({a.norm(), b.norm(), 1e-300});
}

}  // namespace grw
