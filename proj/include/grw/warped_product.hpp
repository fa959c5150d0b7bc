#pragma once

#include "grw/snapshot.hpp"
#include "grw/warping.hpp"

namespace grw {

/// A warped product with 1-dimensional base: metric eps (dx1)^2 + F(x1) gfib
/// on a fiber of dimension >= 3.  The fiber enters as a pointwise snapshot.
struct WarpedSpec {
  int eps = -1;  // base metric component g_11
  WarpingFunction warping;
  CurvatureSnapshot fiber;
};

/// Assembles the full snapshot at base coordinate x1 from the closed-form
/// component blocks: with T11 = F'' - (F')^2/(2F) and D = Delta1F/(4F),
///   R_{a00b} = -(1/2) T11 gfib_ab,
///   R_{abcd} = F (Rfib_abcd - D Gfib_abcd),
///   S_00    = -((n-1)/(2F)) T11,
///   S_ab    = Sfib_ab - (trT/2 + (n-2) D) gfib_ab,
/// base index 0, fiber indices shifted up by one.  The assembled scalar
/// curvature is checked against (kappa_fib - (n-1)(trT + (n-2) D)) / F.
CurvatureSnapshot warped_snapshot(const WarpedSpec& spec, double x1);

/// The nonvanishing component blocks, on fiber indices, of the Tachibana
/// tensors Q(g,R) and Q(S,R), of V(h,i,j,k) = S_h^l R_{lijk}, and of the
/// auxiliary 12-term tensor P built from g and V (see p_tensor).  Block names
/// encode the index pattern of the full tensor they populate: "mixed" blocks
/// carry one base index in the first four slots and one in the last pair
/// (pattern 0bcd|0m), "base_pair" blocks carry a base index in each
/// antisymmetric pair of the first four slots (pattern 0b0d|lm), "fiber"
/// blocks are all-fiber.
struct WarpedBlocks {
  int fiber_dim = 0;
  int dim = 0;
  WarpScalars scalars;
  double F = 0.0;

  DenseTensor qgr_mixed;      // [b,c,d,m]
  DenseTensor qgr_fiber;      // rank 6
  DenseTensor qsr_mixed;      // [b,c,d,m]
  DenseTensor qsr_base_pair;  // [b,d,l,m]
  DenseTensor qsr_fiber;      // rank 6
  DenseTensor v_mixed_bb;     // [b,c]  pattern 0bc0
  DenseTensor v_mixed_ff;     // [a,d]  pattern a00d
  DenseTensor v_fiber;        // rank 4
  DenseTensor p_base_pair;    // [b,d,l,m]
  DenseTensor p_mixed;        // [b,c,d,m]
  DenseTensor p_fiber;        // rank 6
};

WarpedBlocks warped_blocks(const WarpedSpec& spec, double x1);

/// Rebuilds the full tensors on the total space from the blocks, filling all
/// index positions implied by the symmetries (antisymmetric slot pairs (1,2),
/// (3,4) and (5,6), pair exchange of (1,2)<->(3,4) for the rank-6 tensors;
/// antisymmetry in (3,4) for V).
DenseTensor reassemble_qgr(const WarpedBlocks& b);
DenseTensor reassemble_qsr(const WarpedBlocks& b);
DenseTensor reassemble_v(const WarpedBlocks& b);
DenseTensor reassemble_p(const WarpedBlocks& b);

/// Closed-form two-jet field of the warped metric over a fiber metric field:
/// coordinates (x1, y^1..y^m).
MetricField warped_metric_field(int eps, const WarpingFunction& warping,
                                const MetricField& fiber);

}  // namespace grw
