#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

#include "grw/gauss_fiber.hpp"
#include "grw/metric_field.hpp"
#include "grw/suites.hpp"
#include "grw/warped_product.hpp"

namespace grwcli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw CliError(msg); }

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) fail(where + ": unknown key \"" + it.key() + "\"");
  }
}

const json& require(const json& j, const std::string& where, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) fail(where + ": missing key \"" + std::string(key) + "\"");
  return *it;
}

double number_at(const json& j, const std::string& where, const char* key) {
  const json& v = require(j, where, key);
  if (!v.is_number()) fail(where + "." + key + ": expected a number");
  return v.get<double>();
}

double number_or(const json& j, const std::string& where, const char* key,
                 double fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) fail(where + "." + key + ": expected a number");
  return it->get<double>();
}

int int_at(const json& j, const std::string& where, const char* key) {
  const json& v = require(j, where, key);
  if (!v.is_number_integer()) fail(where + "." + key + ": expected an integer");
  return v.get<int>();
}

int int_or(const json& j, const std::string& where, const char* key, int fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) fail(where + "." + key + ": expected an integer");
  return it->get<int>();
}

std::string string_at(const json& j, const std::string& where, const char* key) {
  const json& v = require(j, where, key);
  if (!v.is_string()) fail(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

/// A grid-valued parameter: a number, an array of numbers, or a linspace
/// object {"from": a, "to": b, "count": n}.
std::vector<double> grid_values(const json& v, const std::string& where) {
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (const json& e : v) {
      if (!e.is_number()) fail(where + ": expected numbers");
      out.push_back(e.get<double>());
    }
  } else if (v.is_object()) {
    check_keys(v, where, {"from", "to", "count"});
    const double from = number_at(v, where, "from");
    const double to = number_at(v, where, "to");
    const int count = int_at(v, where, "count");
    if (count < 0) fail(where + ".count: expected a count >= 0");
    for (int i = 0; i < count; ++i)
      out.push_back(from + (to - from) *
                               (count == 1 ? 0.0 : static_cast<double>(i) / (count - 1)));
  } else {
    fail(where + ": expected a number, an array or a {from,to,count} object");
  }
  return out;
}

std::vector<double> grid_at(const json& j, const std::string& where, const char* key) {
  return grid_values(require(j, where, key), where + "." + std::string(key));
}

struct WarpChoice {
  grw::WarpingFunction fn;
  std::string family;
  std::string params;
};

std::vector<WarpChoice> resolve_warpings(const json& w, const std::string& where,
                                         int eps) {
  const std::string family = string_at(w, where, "family");
  std::vector<WarpChoice> out;
  try {
    if (family == "quadratic") {
      check_keys(w, where, {"family", "a", "b"});
      for (double a : grid_at(w, where, "a"))
        for (double b : grid_at(w, where, "b"))
          out.push_back({grw::WarpingFunction::quadratic(a, b), family,
                         "a=" + fmt_g(a) + ";b=" + fmt_g(b)});
    } else if (family == "exponential") {
      check_keys(w, where, {"family", "b", "c", "C1", "upper_sign"});
      bool upper = true;
      if (const auto it = w.find("upper_sign"); it != w.end()) {
        if (!it->is_boolean()) fail(where + ".upper_sign: expected a boolean");
        upper = it->get<bool>();
      }
      for (double b : grid_at(w, where, "b"))
        for (double c : grid_at(w, where, "c"))
          for (double C1 : grid_at(w, where, "C1"))
            out.push_back({grw::WarpingFunction::exponential(b, c, C1, eps, upper),
                           family,
                           "b=" + fmt_g(b) + ";c=" + fmt_g(c) + ";C1=" + fmt_g(C1)});
    } else if (family == "sinusoidal") {
      check_keys(w, where, {"family", "b", "c", "C1", "printed_amplitude"});
      bool printed = false;
      if (const auto it = w.find("printed_amplitude"); it != w.end()) {
        if (!it->is_boolean()) fail(where + ".printed_amplitude: expected a boolean");
        printed = it->get<bool>();
      }
      for (double b : grid_at(w, where, "b"))
        for (double c : grid_at(w, where, "c"))
          for (double C1 : grid_at(w, where, "C1"))
            out.push_back({grw::WarpingFunction::sinusoidal(b, c, C1, eps, printed),
                           family,
                           "b=" + fmt_g(b) + ";c=" + fmt_g(c) + ";C1=" + fmt_g(C1)});
    } else {
      fail(where + ": unknown warping family \"" + family + "\"");
    }
  } catch (const CliError&) {
    throw;
  } catch (const std::exception& e) {
    fail(where + ": " + e.what());
  }
  return out;
}

struct Resolved {
  std::string label;
  std::vector<PointCase> points;
};

Resolved resolve_manifold(const json& j, const std::string& where, long long seed);

/// Nested manifold that must resolve to exactly one snapshot.
PointCase single_point(const json& j, const std::string& where, long long seed) {
  Resolved r = resolve_manifold(j, where, seed);
  if (r.points.size() != 1)
    fail(where + ": expected exactly one sample point, got " +
         std::to_string(r.points.size()));
  return std::move(r.points.front());
}

Resolved resolve_field(const json& j, const std::string& where, long long seed) {
  check_keys(j, where,
             {"kind", "field", "dim", "neg", "seed", "amplitude", "coefficients",
              "points"});
  const std::string id = string_at(j, where, "field");
  grw::MetricField field;
  if (id == "flat") {
    field = grw::flat_field(int_at(j, where, "dim"), int_or(j, where, "neg", 0));
  } else if (id == "sphere") {
    field = grw::sphere_field(int_at(j, where, "dim"));
  } else if (id == "s2xs2") {
    field = grw::s2xs2_field();
  } else if (id == "conformal") {
    const json& cj = require(j, where, "coefficients");
    std::vector<double> a = grid_values(cj, where + ".coefficients");
    field = grw::conformal_field(int_at(j, where, "dim"), int_or(j, where, "neg", 0), a);
  } else if (id == "random") {
    const long long s = static_cast<long long>(number_or(
        j, where, "seed", static_cast<double>(seed)));
    field = grw::random_metric_field(int_at(j, where, "dim"), int_or(j, where, "neg", 0),
                                     static_cast<std::uint64_t>(s),
                                     number_or(j, where, "amplitude", 0.25));
  } else {
    fail(where + ": unknown metric field \"" + id + "\"");
  }

  const json& pts = require(j, where, "points");
  if (!pts.is_array() || pts.empty())
    fail(where + ".points: expected a nonempty array of chart points");
  Resolved out;
  out.label = "field:" + id;
  for (const json& p : pts) {
    std::vector<double> x = grid_values(p, where + ".points[]");
    if (static_cast<int>(x.size()) != field.dim)
      fail(where + ".points[]: expected " + std::to_string(field.dim) +
           " coordinates");
    PointCase pc;
    pc.label = "point=(";
    for (std::size_t i = 0; i < x.size(); ++i)
      pc.label += (i ? "," : "") + fmt_g(x[i]);
    pc.label += ")";
    pc.snap = grw::snapshot_from_field(field, x);
    out.points.push_back(std::move(pc));
  }
  return out;
}

Resolved resolve_warped(const json& j, const std::string& where, long long seed) {
  check_keys(j, where, {"kind", "epsilon", "warping", "x1", "fiber"});
  const int eps = int_at(j, where, "epsilon");
  if (eps != 1 && eps != -1) fail(where + ".epsilon: expected +1 or -1");
  const std::vector<WarpChoice> warps =
      resolve_warpings(require(j, where, "warping"), where + ".warping", eps);
  const std::vector<double> xs = grid_at(j, where, "x1");
  PointCase fiber = single_point(require(j, where, "fiber"), where + ".fiber", seed);
  if (warps.empty() || xs.empty()) fail(where + ": empty grid");

  Resolved out;
  out.label = "warped(eps=" + std::string(eps < 0 ? "-1" : "+1") + ", " +
              warps.front().family + ", fiber dim " +
              std::to_string(fiber.snap.dim) + ")";
  for (const WarpChoice& wc : warps) {
    for (double x : xs) {
      grw::WarpedSpec spec;
      spec.eps = eps;
      spec.warping = wc.fn;
      spec.fiber = fiber.snap;
      PointCase pc;
      pc.label = (warps.size() > 1 ? wc.params + ";" : "") + "x1=" + fmt_g(x);
      pc.snap = grw::warped_snapshot(spec, x);
      pc.has_warp = true;
      pc.x1 = x;
      const grw::WarpingJet wj = wc.fn.jet(x);
      pc.F = wj.F;
      pc.scalars = grw::warp_scalars(wj, eps);
      pc.family = wc.family;
      pc.params = wc.params;
      out.points.push_back(std::move(pc));
    }
  }
  return out;
}

Resolved resolve_gauss(const json& j, const std::string& where) {
  check_keys(j, where,
             {"kind", "fixture", "fiber_dim", "tau", "gauss_sign", "shape_diag"});
  const std::string fixture = string_at(j, where, "fixture");
  const double tau = number_at(j, where, "tau");
  const int sign = int_or(j, where, "gauss_sign", 1);
  if (sign != 1 && sign != -1) fail(where + ".gauss_sign: expected +1 or -1");

  grw::HypersurfaceData data;
  if (fixture == "jordan3") {
    data = grw::jordan3_fixture(int_at(j, where, "fiber_dim"), tau, sign);
  } else if (fixture == "square-zero") {
    data = grw::square_zero_fixture(int_at(j, where, "fiber_dim"), tau, sign);
  } else if (fixture == "diag") {
    const json& dj = require(j, where, "shape_diag");
    data = grw::diag_fixture(grid_values(dj, where + ".shape_diag"), tau, sign);
  } else {
    fail(where + ": unknown gauss fixture \"" + fixture + "\"");
  }

  PointCase pc;
  pc.label = "fixture=" + fixture;
  pc.snap = grw::gauss_snapshot(data);
  // ambient constant tau/((n-1)n), the natural scale for the fiber conditions
  const double n = pc.snap.dim + 1;
  pc.ea2 = tau / ((n - 1.0) * n);
  Resolved out;
  out.label = "gauss:" + fixture;
  out.points.push_back(std::move(pc));
  return out;
}

Resolved resolve_space_form(const json& j, const std::string& where) {
  check_keys(j, where, {"kind", "dim", "neg", "kappa"});
  PointCase pc;
  pc.label = "point";
  pc.snap = grw::space_form_snapshot(int_at(j, where, "dim"),
                                     int_or(j, where, "neg", 0),
                                     number_at(j, where, "kappa"));
  Resolved out;
  out.label = "space-form";
  out.points.push_back(std::move(pc));
  return out;
}

Resolved resolve_product(const json& j, const std::string& where, long long seed) {
  check_keys(j, where, {"kind", "factors"});
  const json& factors = require(j, where, "factors");
  if (!factors.is_array() || factors.size() < 2)
    fail(where + ".factors: expected at least two factor manifolds");
  PointCase acc =
      single_point(factors[0], where + ".factors[0]", seed);
  for (std::size_t i = 1; i < factors.size(); ++i) {
    const PointCase next =
        single_point(factors[i], where + ".factors[" + std::to_string(i) + "]", seed);
    acc.snap = grw::product_snapshot(acc.snap, next.snap);
  }
  acc.label = "point";
  acc.ea2.reset();
  Resolved out;
  out.label = "product";
  out.points.push_back(std::move(acc));
  return out;
}

Resolved resolve_roter(const json& j, const std::string& where) {
  check_keys(j, where, {"kind", "phi", "mu", "eta", "dim", "k"});
  const double phi = number_at(j, where, "phi");
  const double mu = number_at(j, where, "mu");
  const double eta = number_at(j, where, "eta");
  const int dim = int_at(j, where, "dim");
  const int k = int_at(j, where, "k");
  const auto plant = grw::solve_roter_plant(phi, mu, eta, dim, k);
  if (!plant)
    fail(where + ": no two-eigenvalue Ricci solution for these (phi, mu, eta)");
  PointCase pc;
  pc.label = "point";
  pc.snap = grw::roter_snapshot(*plant);
  Resolved out;
  out.label = "roter";
  out.points.push_back(std::move(pc));
  return out;
}

Resolved resolve_synthetic(const json& j, const std::string& where) {
  check_keys(j, where, {"kind", "dim", "g", "riemann"});
  const int dim = int_at(j, where, "dim");
  if (dim < 2) fail(where + ".dim: expected dim >= 2");
  const json& gj = require(j, where, "g");
  if (!gj.is_array() || static_cast<int>(gj.size()) != dim)
    fail(where + ".g: expected a " + std::to_string(dim) + "-row matrix");
  grw::DenseTensor g = grw::DenseTensor::zeros(dim, 2, grw::Symmetry::SymmetricPair);
  for (int r = 0; r < dim; ++r) {
    const json& row = gj[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      fail(where + ".g: expected a square matrix");
    for (int c = 0; c < dim; ++c) {
      if (!row[static_cast<std::size_t>(c)].is_number())
        fail(where + ".g: expected numbers");
      g(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  grw::DenseTensor R =
      grw::DenseTensor::zeros(dim, 4, grw::Symmetry::GeneralizedCurvature);
  const json& rj = require(j, where, "riemann");
  if (!rj.is_array()) fail(where + ".riemann: expected an array of entries");
  for (const json& entry : rj) {
    if (!entry.is_array() || entry.size() != 5)
      fail(where + ".riemann: expected [h,i,j,k,value] entries");
    int idx[4];
    for (int s = 0; s < 4; ++s) {
      if (!entry[static_cast<std::size_t>(s)].is_number_integer())
        fail(where + ".riemann: indices must be integers");
      idx[s] = entry[static_cast<std::size_t>(s)].get<int>();
      if (idx[s] < 0 || idx[s] >= dim) fail(where + ".riemann: index out of range");
    }
    if (!entry[4].is_number()) fail(where + ".riemann: value must be a number");
    const double v = entry[4].get<double>();
    // populate the full symmetry orbit of the entry
    const int h = idx[0], i = idx[1], jj = idx[2], kk = idx[3];
    const int quads[8][4] = {{h, i, jj, kk}, {i, h, jj, kk}, {h, i, kk, jj},
                             {i, h, kk, jj}, {jj, kk, h, i}, {kk, jj, h, i},
                             {jj, kk, i, h}, {kk, jj, i, h}};
    const double signs[8] = {1, -1, -1, 1, 1, -1, -1, 1};
    for (int q = 0; q < 8; ++q)
      R(quads[q][0], quads[q][1], quads[q][2], quads[q][3]) = signs[q] * v;
  }
  PointCase pc;
  pc.label = "point";
  pc.snap = grw::synthetic_snapshot(g, R);
  Resolved out;
  out.label = "synthetic";
  out.points.push_back(std::move(pc));
  return out;
}

Resolved resolve_manifold(const json& j, const std::string& where, long long seed) {
  if (!j.is_object()) fail(where + ": expected an object");
  const std::string kind = string_at(j, where, "kind");
  try {
    if (kind == "field") return resolve_field(j, where, seed);
    if (kind == "warped") return resolve_warped(j, where, seed);
    if (kind == "gauss") return resolve_gauss(j, where);
    if (kind == "space-form") return resolve_space_form(j, where);
    if (kind == "product") return resolve_product(j, where, seed);
    if (kind == "roter") return resolve_roter(j, where);
    if (kind == "synthetic") return resolve_synthetic(j, where);
  } catch (const CliError&) {
    throw;
  } catch (const std::exception& e) {
    fail(where + " (" + kind + "): " + e.what());
  }
  fail(where + ": unknown manifold kind \"" + kind + "\"");
}

}  // namespace

Scenario load_scenario(const std::string& path,
                       std::optional<long long> seed_override) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();

  Scenario sc;
  sc.config_text = buffer.str();

  json root;
  try {
    root = json::parse(sc.config_text);
  } catch (const json::exception& e) {
    fail("config parse error in " + path + ": " + e.what());
  }
  check_keys(root, "config",
             {"manifold", "conditions", "tolerances", "seed", "ea2", "output"});

  if (const auto it = root.find("seed"); it != root.end()) {
    if (!it->is_number_integer()) fail("config.seed: expected an integer");
    sc.seed = it->get<long long>();
  }
  if (seed_override) sc.seed = *seed_override;
  if (const auto it = root.find("ea2"); it != root.end()) {
    if (!it->is_number()) fail("config.ea2: expected a number");
    sc.ea2 = it->get<double>();
  }

  Resolved r = resolve_manifold(require(root, "config", "manifold"),
                                "config.manifold", sc.seed);
  sc.manifold_label = std::move(r.label);
  sc.points = std::move(r.points);
  if (sc.points.empty()) fail("config.manifold: resolved to an empty point set");

  const json& conds = require(root, "config", "conditions");
  if (!conds.is_array() || conds.empty())
    fail("config.conditions: expected a nonempty array of condition ids");
  for (const json& c : conds) {
    if (!c.is_string()) fail("config.conditions: expected strings");
    const auto id = grw::condition_from_name(c.get<std::string>());
    if (!id) fail("config.conditions: unknown condition id \"" +
                  c.get<std::string>() + "\"");
    sc.conditions.push_back(*id);
  }

  if (const auto it = root.find("tolerances"); it != root.end()) {
    if (!it->is_object()) fail("config.tolerances: expected an object");
    for (auto e = it->begin(); e != it->end(); ++e) {
      if (!e.value().is_number() || !(e.value().get<double>() > 0.0))
        fail("config.tolerances." + e.key() + ": expected a positive number");
      if (e.key() == "default") {
        sc.default_tol = e.value().get<double>();
      } else {
        if (!grw::condition_from_name(e.key()))
          fail("config.tolerances: unknown condition id \"" + e.key() + "\"");
        sc.tol_overrides[e.key()] = e.value().get<double>();
      }
    }
  }

  if (const auto it = root.find("output"); it != root.end()) {
    check_keys(*it, "config.output", {"path", "format"});
    if (const auto p = it->find("path"); p != it->end()) {
      if (!p->is_string()) fail("config.output.path: expected a string");
      sc.out_path = p->get<std::string>();
    }
    if (const auto f = it->find("format"); f != it->end()) {
      if (!f->is_string()) fail("config.output.format: expected a string");
      sc.out_format = f->get<std::string>();
    }
  }
  return sc;
}

}  // namespace grwcli
