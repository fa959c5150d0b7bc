#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "grw/conditions.hpp"
#include "grw/snapshot.hpp"
#include "grw/warping.hpp"

namespace grwcli {

/// Config or input problem; the CLI reports the message and exits 1.
struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One snapshot to evaluate, resolved from the config, with enough context
/// for report labels and sweep columns.
struct PointCase {
  std::string label;
  grw::CurvatureSnapshot snap;
  std::optional<double> ea2;  // fiber-condition scale when the build knows it

  // filled for warped builds only (sweep columns)
  bool has_warp = false;
  double x1 = 0.0;
  double F = 0.0;
  grw::WarpScalars scalars{};
  std::string family;
  std::string params;  // "a=2;b=3"
};

struct Scenario {
  std::string manifold_label;
  std::vector<PointCase> points;
  std::vector<grw::ConditionId> conditions;
  double default_tol = 1e-8;
  std::map<std::string, double> tol_overrides;  // keyed by condition name
  long long seed = 0;
  std::optional<double> ea2;  // scenario-wide override for SR2/D1/D3
  std::string out_path;       // from the optional output section
  std::string out_format;
  std::string config_text;  // raw file contents, echoed into reports
};

/// Parses and fully resolves a scenario config file.  Grid-valued warping
/// parameters and x1 samples expand into one PointCase per grid cell, in
/// row-major key order.  `seed_override` (the --seed flag) wins over the
/// config seed and must be applied before resolution, since random fields
/// consume it.  Throws CliError with a message naming the offending key, id
/// or value.
Scenario load_scenario(const std::string& path,
                       std::optional<long long> seed_override = std::nullopt);

}  // namespace grwcli
