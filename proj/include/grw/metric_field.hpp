#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "grw/jet.hpp"

namespace grw {

/// Pointwise two-jet of a metric: components, first and second coordinate
/// derivatives.  Storage is plain nested vectors indexed [i][j], [k][i][j]
/// and [k][l][i][j].
struct MetricJet {
  int dim = 0;
  std::vector<std::vector<double>> g;                            // g[i][j]
  std::vector<std::vector<std::vector<double>>> dg;              // dg[k][i][j] = d_k g_ij
  std::vector<std::vector<std::vector<std::vector<double>>>> ddg;  // ddg[k][l][i][j]

  static MetricJet zeros(int dim);
};

/// Chart-domain metric field: maps a coordinate point to the two-jet of the
/// metric there.  Carries its dimension, intended signature and a short
/// provenance note (catalog id or construction description).
struct MetricField {
  int dim = 0;
  std::pair<int, int> signature{0, 0};
  std::string provenance;
  std::function<MetricJet(const std::vector<double>&)> eval;

  MetricJet two_jet(const std::vector<double>& point) const;
};

/// Builds a field whose components are evaluated in Jet2 arithmetic; the
/// two-jet is read off the propagated jets (no finite differences anywhere).
MetricField field_from_jets(
    int dim, std::pair<int, int> signature, std::string provenance,
    std::function<std::vector<std::vector<Jet2>>(const std::vector<Jet2>&)> entries);

// --- catalog ---------------------------------------------------------------

/// Flat metric diag(-1 x s, +1 x (n-s)); derivatives vanish.
MetricField flat_field(int dim, int neg);

/// Round unit sphere S^m in nested polar coordinates:
///   g = diag(1, sin^2(x0), sin^2(x0) sin^2(x1), ...).
MetricField sphere_field(int dim);

/// Product of two round unit 2-spheres, coordinates (t1, p1, t2, p2).
MetricField s2xs2_field();

/// Conformally flat field exp(2 sum a_k x_k) * diag(eta).
MetricField conformal_field(int dim, int neg, const std::vector<double>& a);

/// Flat background plus a quadratic polynomial perturbation with coefficients
/// drawn deterministically from `seed`, scaled by `amplitude`.
MetricField random_metric_field(int dim, int neg, std::uint64_t seed, double amplitude);

/// Jet2-arithmetic variants of the catalog entries above (identical values,
/// derivatives produced by automatic differentiation instead of the
/// hand-written closed forms).  Used for cross-checking the two paths.
MetricField sphere_field_ad(int dim);
MetricField s2xs2_field_ad();

/// Portable uniform double in [0,1) from a 64-bit generator state.
inline double unit_real(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1p-53;
}

}  // namespace grw
