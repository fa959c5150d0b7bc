#include "grw/metric_field.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace grw {

MetricJet MetricJet::zeros(int dim) {
  MetricJet j;
  j.dim = dim;
  j.g.assign(dim, std::vector<double>(dim, 0.0));
  j.dg.assign(dim, j.g);
  j.ddg.assign(dim, j.dg);
  return j;
}

MetricJet MetricField::two_jet(const std::vector<double>& point) const {
  if (static_cast<int>(point.size()) != dim)
    throw std::invalid_argument("MetricField: point dimension mismatch");
  if (!eval) throw std::logic_error("MetricField: empty evaluator");
  MetricJet j = eval(point);
  if (j.dim != dim) throw std::logic_error("MetricField: evaluator dimension mismatch");
  return j;
}

MetricField field_from_jets(
    int dim, std::pair<int, int> signature, std::string provenance,
    std::function<std::vector<std::vector<Jet2>>(const std::vector<Jet2>&)> entries) {
  MetricField f;
  f.dim = dim;
  f.signature = signature;
  f.provenance = std::move(provenance);
  f.eval = [dim, entries = std::move(entries)](const std::vector<double>& x) {
    std::vector<Jet2> vars;
    vars.reserve(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k) vars.push_back(Jet2::variable(x[static_cast<std::size_t>(k)], k, dim));
    const auto m = entries(vars);
    MetricJet j = MetricJet::zeros(dim);
    for (int i = 0; i < dim; ++i)
      for (int jj = 0; jj < dim; ++jj) {
        const Jet2& e = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
        j.g[i][jj] = e.value();
        for (int k = 0; k < dim; ++k) {
          j.dg[k][i][jj] = e.grad()(k);
          for (int l = 0; l < dim; ++l) j.ddg[k][l][i][jj] = e.hess()(k, l);
        }
      }
    return j;
  };
  return f;
}

MetricField flat_field(int dim, int neg) {
  if (neg < 0 || neg > dim) throw std::invalid_argument("flat_field: bad signature");
  MetricField f;
  f.dim = dim;
  f.signature = {neg, dim - neg};
  f.provenance = "flat";
  f.eval = [dim, neg](const std::vector<double>&) {
    MetricJet j = MetricJet::zeros(dim);
    for (int i = 0; i < dim; ++i) j.g[i][i] = (i < neg) ? -1.0 : 1.0;
    return j;
  };
  return f;
}

namespace {

// Closed-form two-jet for a diagonal metric g_ii = f_i(x) with products of
// squared sines: the nested polar chart of the round sphere.
MetricJet sphere_jet(int dim, const std::vector<double>& x) {
  MetricJet j = MetricJet::zeros(dim);
  // g_ii = prod_{k<i} sin^2(x_k); value, first and second derivatives.
  for (int i = 0; i < dim; ++i) {
    double v = 1.0;
    for (int k = 0; k < i; ++k) {
      const double s = std::sin(x[static_cast<std::size_t>(k)]);
      v *= s * s;
    }
    j.g[i][i] = v;
    for (int k = 0; k < i; ++k) {
      const double xk = x[static_cast<std::size_t>(k)];
      const double cot = std::cos(xk) / std::sin(xk);
      j.dg[k][i][i] = v * 2.0 * cot;  // d/dx_k log sin^2 = 2 cot
      for (int l = 0; l < i; ++l) {
        const double xl = x[static_cast<std::size_t>(l)];
        const double cotl = std::cos(xl) / std::sin(xl);
        if (l == k) {
          // d^2/dx_k^2 sin^2 = 2 cos(2x); relative to sin^2: 2cos2x/sin^2
          j.ddg[k][k][i][i] = v * 2.0 * std::cos(2.0 * xk) / (std::sin(xk) * std::sin(xk));
        } else {
          j.ddg[k][l][i][i] = v * 4.0 * cot * cotl;
        }
      }
    }
  }
  return j;
}

}  // namespace

MetricField sphere_field(int dim) {
  if (dim < 1) throw std::invalid_argument("sphere_field: dim must be >= 1");
  MetricField f;
  f.dim = dim;
  f.signature = {0, dim};
  f.provenance = "sphere";
  f.eval = [dim](const std::vector<double>& x) {
    for (int k = 0; k + 1 < dim; ++k) {
      const double s = std::sin(x[static_cast<std::size_t>(k)]);
      if (std::fabs(s) < 1e-8)
        throw std::domain_error("sphere_field: point too close to a chart singularity");
    }
    return sphere_jet(dim, x);
  };
  return f;
}

MetricField sphere_field_ad(int dim) {
  return field_from_jets(dim, {0, dim}, "sphere (jet arithmetic)",
                         [dim](const std::vector<Jet2>& x) {
                           std::vector<std::vector<Jet2>> m(
                               static_cast<std::size_t>(dim),
                               std::vector<Jet2>(static_cast<std::size_t>(dim),
                                                 Jet2::constant(0.0, dim)));
                           for (int i = 0; i < dim; ++i) {
                             Jet2 v = Jet2::constant(1.0, dim);
                             for (int k = 0; k < i; ++k) {
                               Jet2 s = sin(x[static_cast<std::size_t>(k)]);
                               v = v * s * s;
                             }
                             m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = v;
                           }
                           return m;
                         });
}

MetricField s2xs2_field() {
  MetricField f;
  f.dim = 4;
  f.signature = {0, 4};
  f.provenance = "s2xs2";
  f.eval = [](const std::vector<double>& x) {
    MetricJet j = MetricJet::zeros(4);
    for (int b = 0; b < 2; ++b) {
      const int it = 2 * b, ip = 2 * b + 1;
      const double t = x[static_cast<std::size_t>(it)];
      if (std::fabs(std::sin(t)) < 1e-8)
        throw std::domain_error("s2xs2_field: point too close to a chart singularity");
      j.g[it][it] = 1.0;
      j.g[ip][ip] = std::sin(t) * std::sin(t);
      j.dg[it][ip][ip] = std::sin(2.0 * t);
      j.ddg[it][it][ip][ip] = 2.0 * std::cos(2.0 * t);
    }
    return j;
  };
  return f;
}

MetricField s2xs2_field_ad() {
  return field_from_jets(4, {0, 4}, "s2xs2 (jet arithmetic)",
                         [](const std::vector<Jet2>& x) {
                           std::vector<std::vector<Jet2>> m(
                               4, std::vector<Jet2>(4, Jet2::constant(0.0, 4)));
                           for (int b = 0; b < 2; ++b) {
                             const std::size_t it = 2 * static_cast<std::size_t>(b), ip = it + 1;
                             Jet2 s = sin(x[it]);
                             m[it][it] = Jet2::constant(1.0, 4);
                             m[ip][ip] = s * s;
                           }
                           return m;
                         });
}

MetricField conformal_field(int dim, int neg, const std::vector<double>& a) {
  if (static_cast<int>(a.size()) != dim)
    throw std::invalid_argument("conformal_field: coefficient count mismatch");
  return field_from_jets(dim, {neg, dim - neg}, "conformal",
                         [dim, neg, a](const std::vector<Jet2>& x) {
                           Jet2 u = Jet2::constant(0.0, dim);
                           for (int k = 0; k < dim; ++k) u = u + a[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
                           Jet2 w = exp(2.0 * u);
                           std::vector<std::vector<Jet2>> m(
                               static_cast<std::size_t>(dim),
                               std::vector<Jet2>(static_cast<std::size_t>(dim),
                                                 Jet2::constant(0.0, dim)));
                           for (int i = 0; i < dim; ++i)
                             m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
                                 (i < neg) ? -w : w;
                           return m;
                         });
}

MetricField random_metric_field(int dim, int neg, std::uint64_t seed, double amplitude) {
  if (neg < 0 || neg > dim) throw std::invalid_argument("random_metric_field: bad signature");
  if (amplitude < 0.0) throw std::invalid_argument("random_metric_field: amplitude must be >= 0");
  std::mt19937_64 rng(seed);
  auto draw = [&rng]() { return 2.0 * unit_real(rng()) - 1.0; };
  const std::size_t n = static_cast<std::size_t>(dim);
  // symmetric coefficient tables: constant, linear, quadratic
  std::vector<double> c0(n * n), c1(n * n * n), c2(n * n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      c0[i * n + j] = c0[j * n + i] = draw();
      for (std::size_t k = 0; k < n; ++k)
        c1[(i * n + j) * n + k] = c1[(j * n + i) * n + k] = draw();
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k; l < n; ++l) {
          const double v = draw();
          c2[((i * n + j) * n + k) * n + l] = c2[((j * n + i) * n + k) * n + l] = v;
          c2[((i * n + j) * n + l) * n + k] = c2[((j * n + i) * n + l) * n + k] = v;
        }
    }
  return field_from_jets(
      dim, {neg, dim - neg}, "random(seed=" + std::to_string(seed) + ")",
      [dim, neg, amplitude, c0, c1, c2, n](const std::vector<Jet2>& x) {
        std::vector<std::vector<Jet2>> m(n, std::vector<Jet2>(n, Jet2::constant(0.0, dim)));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            Jet2 p = Jet2::constant(c0[i * n + j], dim);
            for (std::size_t k = 0; k < n; ++k) {
              p = p + c1[(i * n + j) * n + k] * x[k];
              for (std::size_t l = 0; l < n; ++l)
                p = p + (0.5 * c2[((i * n + j) * n + k) * n + l]) * x[k] * x[l];
            }
            Jet2 e = amplitude * p;
            if (i == j) e = e + (static_cast<int>(i) < neg ? -1.0 : 1.0);
            m[i][j] = e;
          }
        return m;
      });
}

}  // namespace grw
