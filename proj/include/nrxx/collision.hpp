#pragma once

#include "nrxx/moments.hpp"

namespace nrxx {

/// Hard-sphere relaxation time tau = (5/16) sqrt(2 pi / theta) Kn / rho.
/// Throws std::invalid_argument unless all inputs are positive.
double relaxation_time(double rho, double theta, double kn);

struct CollisionParams {
  double tau = 1.0;
  double prandtl = 2.0 / 3.0;
  double dt = 0.0;
};

/// Exact solution of the Shakhov collision-only system over dt, with tau
/// frozen. Coefficients e_i + 2e_j relax toward q_i/5 at rate Pr/tau
/// (q_i snapshotted before any update); every other |alpha| >= 2 coefficient
/// decays as exp(-dt/tau). rho, u, theta and |alpha| <= 1 are untouched.
/// Only the evolved block (|alpha| <= M) is updated.
void collide(MomentState& s, const CollisionParams& p);

inline MomentState collided(MomentState s, const CollisionParams& p) {
  collide(s, p);
  return s;
}

}  // namespace nrxx
