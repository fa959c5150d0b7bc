#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grw/conditions.hpp"
#include "grw/gauss_fiber.hpp"
#include "grw/snapshot.hpp"
#include "grw/warped_product.hpp"

namespace grw {

/// One check inside a verification suite.  `kind` is "value" (observed vs
/// expected within tol), "residual" (observed <= tol), "flag" (observed is
/// 0/1, expected 1) or "count" (observed == expected exactly).
struct SuiteLine {
  std::string label;
  std::string kind;
  bool pass = false;
  double observed = 0.0;
  double expected = 0.0;
  double tol = 0.0;
};

struct SuiteReport {
  std::string name;
  bool pass = true;
  std::vector<SuiteLine> lines;
};

const std::vector<std::string>& suite_names();

/// Runs one named suite; `jobs` bounds worker threads for the batched
/// suites.  Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, int jobs = 1);

/// Index-parallel loop with deterministic result placement; fn(i) must only
/// write state owned by index i.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

// Canonical fixtures, shared by the suites and the test batteries.

/// Product of two round unit 2-spheres: Einstein, non-conformally-flat.
CurvatureSnapshot s2xs2_snapshot();

/// Round unit sphere as a space form, kappa = (dim-1) dim.
CurvatureSnapshot unit_sphere_snapshot(int dim);

CurvatureSnapshot flat_snapshot(int dim, int neg = 0);

/// kappa = 0, S = 0, R != 0: the Weyl tensor of S^2 x S^2 planted as a
/// curvature tensor over the same metric.
CurvatureSnapshot ricci_flat_snapshot();

/// Random polynomial metric field evaluated at a fixed generic chart point.
CurvatureSnapshot random_field_snapshot(int dim, int neg, std::uint64_t seed,
                                        double amplitude = 0.25);

/// Lorentzian-signature warped product over the S^2 x S^2 fiber with the
/// quadratic warp (2 x + 3)^2.
WarpedSpec cor42_spec();

/// Einstein-fiber, nonvanishing-trT fixtures over S^2 x S^2 (kappa = 4,
/// matching scalar 1/3): hyperbolic-exponential and sinusoidal warps.
WarpedSpec thm51_exponential_spec();
WarpedSpec thm51_sinusoidal_spec();

/// Hypersurface data behind the quadratic-warp tests with non-Einstein
/// fiber; fiber_dim 3 pairs with a timelike base (tau = -12), fiber_dim 4
/// with a spacelike base (tau = 20), both with unit quadratic slope.
HypersurfaceData thm42_jordan_data(int fiber_dim);
WarpedSpec thm42_jordan_spec(int fiber_dim);

/// Gauss fiber with vanishing ambient curvature and nilpotent order-3 shape
/// operator: S o R = 0 with S != 0.
CurvatureSnapshot h1_gauss_snapshot(int fiber_dim);

/// Two-eigenvalue Ricci ansatz realizing R = (phi/2) S^S + mu g^S + eta G.
struct RoterPlant {
  double phi = 0.0, mu = 0.0, eta = 0.0;
  int dim = 0, k = 0;  // Ricci eigenvalue x with multiplicity k, y with dim-k
  double x = 0.0, y = 0.0;
};

/// Solves the two consistency constraints for the Ricci eigenvalues; empty
/// when the discriminant is negative or the eigenvalues collide.
std::optional<RoterPlant> solve_roter_plant(double phi, double mu, double eta,
                                            int dim, int k);

/// Deterministic valid plant for a seed (redraws internally as needed).
RoterPlant roter_plant_for_seed(std::uint64_t seed);

CurvatureSnapshot roter_snapshot(const RoterPlant& plant);

/// Random admissible warped product with 1-dimensional timelike base and a
/// random Riemannian 3-dimensional fiber, plus the base sample point.
struct RandomWarpedCase {
  WarpedSpec spec;
  double x1 = 0.0;
};

RandomWarpedCase random_grw_dim4(std::uint64_t seed);

}  // namespace grw
