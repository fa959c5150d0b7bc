#pragma once

// Shared helpers for the test binaries: a finite-difference oracle for metric
// jets and deterministic random tensor generators.  Tests compare production
// code against these, never the other way round.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "grw/dense_tensor.hpp"
#include "grw/metric_field.hpp"

namespace testkit {

/// Worst absolute deviation between the analytic first derivatives of a
/// metric field and central finite differences of its components, minimized
/// over a small step sweep (the truncation/roundoff tradeoff moves with the
/// field's scale, so no single step is best for every fixture).
inline double dg_fd_deviation(const grw::MetricField& field,
                              const std::vector<double>& x) {
  const grw::MetricJet jet = field.two_jet(x);
  const int n = field.dim;
  double best = std::numeric_limits<double>::infinity();
  for (double h : {1e-4, 3e-5, 1e-5}) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      std::vector<double> xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const grw::MetricJet jp = field.two_jet(xp);
      const grw::MetricJet jm = field.two_jet(xm);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double fd = (jp.g[i][j] - jm.g[i][j]) / (2.0 * h);
          worst = std::max(worst, std::abs(fd - jet.dg[k][i][j]));
        }
    }
    best = std::min(best, worst);
  }
  return best;
}

/// Same for the second derivatives, via second differences of the components
/// alone (the oracle never trusts the field's own dg).
inline double ddg_fd_deviation(const grw::MetricField& field,
                               const std::vector<double>& x) {
  const grw::MetricJet jet = field.two_jet(x);
  const int n = field.dim;
  double best = std::numeric_limits<double>::infinity();
  for (double h : {2e-3, 1e-3, 5e-4}) {
    double worst = 0.0;
    const grw::MetricJet j0 = field.two_jet(x);
    for (int k = 0; k < n; ++k)
      for (int l = k; l < n; ++l) {
        grw::MetricJet jpp, jpm, jmp, jmm;
        if (k == l) {
          std::vector<double> xp = x, xm = x;
          xp[k] += h;
          xm[k] -= h;
          jpp = field.two_jet(xp);
          jmm = field.two_jet(xm);
        } else {
          std::vector<double> a = x, b = x, c = x, d = x;
          a[k] += h; a[l] += h;
          b[k] += h; b[l] -= h;
          c[k] -= h; c[l] += h;
          d[k] -= h; d[l] -= h;
          jpp = field.two_jet(a);
          jpm = field.two_jet(b);
          jmp = field.two_jet(c);
          jmm = field.two_jet(d);
        }
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double fd;
            if (k == l)
              fd = (jpp.g[i][j] - 2.0 * j0.g[i][j] + jmm.g[i][j]) / (h * h);
            else
              fd = (jpp.g[i][j] - jpm.g[i][j] - jmp.g[i][j] + jmm.g[i][j]) /
                   (4.0 * h * h);
            worst = std::max(worst, std::abs(fd - jet.ddg[k][l][i][j]));
          }
      }
    best = std::min(best, worst);
  }
  return best;
}

/// Deterministic symmetric rank-2 tensor with entries in [-1, 1].
inline grw::DenseTensor random_symmetric(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  grw::DenseTensor t =
      grw::DenseTensor::zeros(dim, 2, grw::Symmetry::SymmetricPair);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const double v = u(rng);
      t.components()[static_cast<std::size_t>(i) * dim + j] = v;
      t.components()[static_cast<std::size_t>(j) * dim + i] = v;
    }
  return t;
}

/// Worst relative mismatch of a rank-2k tensor against the swap of its last
/// two slots negated; zero for a tensor antisymmetric in (l, m).
inline double last_pair_antisymmetry(const grw::DenseTensor& t) {
  const int n = t.dim();
  const int r = t.rank();
  std::vector<int> idx(static_cast<std::size_t>(r), 0);
  double worst = 0.0;
  const double scale = std::max(t.max_abs(), 1e-300);
  while (true) {
    std::vector<int> swapped = idx;
    std::swap(swapped[static_cast<std::size_t>(r) - 2],
              swapped[static_cast<std::size_t>(r) - 1]);
    const double a = t.at(std::span<const int>(idx));
    const double b = t.at(std::span<const int>(swapped));
    worst = std::max(worst, std::abs(a + b) / scale);
    int p = r - 1;
    while (p >= 0 && ++idx[static_cast<std::size_t>(p)] == n) {
      idx[static_cast<std::size_t>(p)] = 0;
      --p;
    }
    if (p < 0) break;
  }
  return worst;
}

}  // namespace testkit
