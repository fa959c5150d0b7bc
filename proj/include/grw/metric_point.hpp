#pragma once

#include <utility>

#include "grw/dense_tensor.hpp"

namespace grw {

/// A nondegenerate symmetric bilinear form at a single point, together with
/// its inverse and signature (#negative, #positive eigenvalues).
struct MetricPoint {
  int dim = 0;
  DenseTensor g;      // rank 2, symmetric
  DenseTensor g_inv;  // rank 2, symmetric
  std::pair<int, int> signature{0, 0};

  /// Builds from the covariant components.  Rejects non-symmetric or
  /// (numerically) degenerate input; verifies g * g_inv = id to 1e-12
  /// relative.
  static MetricPoint from_g(const DenseTensor& g);
};

}  // namespace grw
