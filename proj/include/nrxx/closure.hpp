#pragma once

#include <span>
#include <vector>

#include "nrxx/moments.hpp"

namespace nrxx {

/// States entering the regularized closure at one location. Spatial
/// derivatives along y are (right - left) / span; the non-derivative factors
/// are taken from `center`. All three states must share the same M.
struct GradientStencil {
  const MomentState& left;
  const MomentState& center;
  const MomentState& right;
  double span;
};

/// Regularized prediction of the |alpha| = M + 1 coefficients for a problem
/// varying in y only (velocity space stays three-dimensional):
///
///   f_alpha = tau { (1/rho) d(rho theta) f_{alpha-e2}
///                 + (theta/3) du_2 sum_d f_{alpha-2e_d}
///                 - theta df_{alpha-e2}
///                 - sum_d [ du_d theta f_{alpha-e_d-e2}
///                         + (dtheta/2)(theta f_{alpha-2e_d-e2} + (alpha_2+1) f_{alpha-2e_d+e2}) ] }
///
/// Returned in graded order, one entry per |alpha| = M + 1.
std::vector<double> close(const GradientStencil& stencil, double tau);

/// Writes close(stencil, tau) into target's closure block.
void apply_closure(MomentState& target, const GradientStencil& stencil, double tau);

}  // namespace nrxx
