#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace grw {

/// Symmetry classes a tensor can declare.  Declared symmetries are verified
/// once at construction (relative tolerance); they are never silently
/// enforced by symmetrisation.
enum class Symmetry {
  None,
  SymmetricPair,          ///< rank 2, T(i,j) = T(j,i)
  GeneralizedCurvature,   ///< rank 4: antisymmetric in (1,2) and (3,4),
                          ///< symmetric under pair exchange, cyclic sum over
                          ///< the first three slots vanishes
};

/// Dense, row-major, fully covariant tensor of small dimension and rank.
/// Components are plain doubles; dim^rank storage, rank <= 6, dim <= 8.
class DenseTensor {
 public:
  DenseTensor() = default;
  static DenseTensor zeros(int dim, int rank, Symmetry sym = Symmetry::None);
  /// Takes ownership of `data` (size must equal dim^rank).  A declared
  /// symmetry is verified to `sym_tol` relative to the max component.
  static DenseTensor from_components(int dim, int rank, std::vector<double> data,
                                     Symmetry sym = Symmetry::None,
                                     double sym_tol = 1e-10);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  Symmetry symmetry() const { return sym_; }
  std::size_t size() const { return c_.size(); }

  const std::vector<double>& components() const { return c_; }
  std::vector<double>& components() { return c_; }

  template <class... I>
  double operator()(I... idx) const {
    return c_[flat(idx...)];
  }
  template <class... I>
  double& operator()(I... idx) {
    return c_[flat(idx...)];
  }

  double at(std::span<const int> idx) const;
  void set(std::span<const int> idx, double v);

  /// Frobenius norm of the raw component array.
  double norm() const;
  double max_abs() const;

  DenseTensor& operator+=(const DenseTensor& o);
  DenseTensor& operator-=(const DenseTensor& o);
  DenseTensor& operator*=(double s);
  DenseTensor scaled(double s) const;

  friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
  friend DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }

  /// Re-tags the tensor with `sym` after verifying it holds to `tol`
  /// (relative to the max component).  Throws std::domain_error on failure.
  DenseTensor& declare_symmetry(Symmetry sym, double tol = 1e-10);

  /// Largest relative symmetry violation for class `sym` (0 for None).
  double symmetry_violation(Symmetry sym) const;

  /// Debug dump: one "(i j ...) value" line per nonzero entry, in row-major
  /// index order, 17 significant digits.
  void write_nonzero(std::ostream& os) const;

 private:
  template <class... I>
  std::size_t flat(I... idx) const {
    std::size_t f = 0;
    ((f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return f;
  }

  int dim_ = 0;
  int rank_ = 0;
  Symmetry sym_ = Symmetry::None;
  std::vector<double> c_;
};

/// ||a - b|| / max(||a||, ||b||, floor).
double relative_difference(const DenseTensor& a, const DenseTensor& b);

}  // namespace grw
