#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "nrxx/boundary.hpp"
#include "nrxx/moments.hpp"

namespace nrxx {

enum class BoundaryKind { wall, free };

struct BoundarySpec {
  BoundaryKind kind = BoundaryKind::wall;
  WallSpec wall;
};

enum class Limiter { none, minmod };
enum class Splitting { lie, strang };
// Where the regularized closure is evaluated for the interface fluxes.
enum class ClosureSite { interface, center };

struct RunConfig {
  int M = 5;
  double knudsen = 0.1;
  double prandtl = 2.0 / 3.0;
  double cfl = 0.95;
  double speed_factor = 1.2;     // multiplies the largest root of He_{M+1}
  double t_end = 0.0;            // <= 0 means run to steady state
  double steady_tol = 1e-8;
  std::size_t max_steps = 2'000'000;
  BoundarySpec left;
  BoundarySpec right;
  Vec3 force{0.0, 0.0, 0.0};
  bool collisions = true;
  Limiter limiter = Limiter::minmod;
  Splitting splitting = Splitting::lie;
  ClosureSite closure_site = ClosureSite::interface;
  // Also bound dt by the explicit-diffusion limit of the regularization.
  bool diffusion_bound = true;
  int threads = 1;
};

/// Uniform 1-D grid in y. Ghost cells are built on the fly by each step.
struct Grid1D {
  double y_lo = 0.0;
  double y_hi = 1.0;
  std::vector<MomentState> cells;

  Grid1D() = default;
  Grid1D(double lo, double hi, std::size_t n, const MomentState& init)
      : y_lo(lo), y_hi(hi), cells(n, init) {}

  std::size_t size() const { return cells.size(); }
  double dx() const { return (y_hi - y_lo) / static_cast<double>(cells.size()); }
  double center(std::size_t j) const { return y_lo + (static_cast<double>(j) + 0.5) * dx(); }
  double total_mass() const;
};

/// c = factor * (largest root of He_{M+1}).
double signal_speed_constant(int M, double factor = 1.2);

/// y-flux of every evolved coefficient (|alpha| <= M):
///   F_alpha = theta f_{alpha-e2} + u_2 f_alpha + (alpha_2+1) f_{alpha+e2}.
/// Needs the closure block filled.
std::vector<double> flux_vector(const MomentState& s);

struct SignalSpeeds {
  double lo = 0.0;
  double hi = 0.0;
};

/// lo = min(u_2 - c sqrt(theta)), hi = max(u_2 + c sqrt(theta)) over both sides.
SignalSpeeds signal_speeds(const MomentState& left, const MomentState& right, double c);

/// HLL flux for two states sharing one center. Returns flux_vector(left) when
/// speeds.lo >= 0 and flux_vector(right) when speeds.hi <= 0.
std::vector<double> hll_flux(const MomentState& left, const MomentState& right,
                             const SignalSpeeds& speeds);
std::vector<double> hll_flux(const MomentState& left, const MomentState& right, double c);

/// Flux through one interface: signal speeds from the two traces, both traces
/// projected to the mean (u, theta), then HLL. The result is expanded about
/// that mean center, which is returned alongside.
struct InterfaceFlux {
  Vec3 u{};
  double theta = 1.0;
  std::vector<double> f;
};
InterfaceFlux interface_flux(const MomentState& left, const MomentState& right, double c);

double cfl_timestep(const Grid1D& grid, double cfl, double c);

/// Explicit advection-diffusion limit for the regularized system:
///   dt = cfl / max_j ( s_j / dx + 2 D_j / dx^2 ),
///   s_j = |u_2| + c sqrt(theta),  D_j = (M+1) tau_j theta_j.
/// The closure predicts f_{(M+1)e_2} ~ -tau theta d f_{M e_2}, which enters the
/// f_{M e_2} equation as a diffusion with coefficient D.
double diffusion_timestep(const Grid1D& grid, double cfl, double c, double knudsen);

/// The step size used by step(): cfl_timestep, further limited by
/// diffusion_timestep unless config.diffusion_bound is off.
double stable_timestep(const Grid1D& grid, const RunConfig& config, double c);

/// Interface traces (left, right) for interfaces 0..N, interface j sitting
/// between cells j-1 and j. `ghosts` are the states outside each end.
/// Only the evolved coefficients and (rho, u, theta) are reconstructed;
/// closure blocks are left at zero.
using TracePair = std::pair<MomentState, MomentState>;
std::vector<TracePair> reconstruct(const Grid1D& grid, const MomentState& ghost_lo,
                                   const MomentState& ghost_hi, Limiter limiter);

/// Ghost state beyond one end of the grid for the given boundary.
MomentState boundary_ghost(const MomentState& edge, const BoundarySpec& spec);

struct StepInfo {
  double dt = 0.0;
  double residual = 0.0;  // max of |df|/(|f| + 1e-8), |du|/sqrt(theta), |dtheta|/theta, per unit time
};

/// One full step: ghosts, reconstruction, closure, HLL transport, collision,
/// acceleration. If dt is given it is used instead of the CFL value.
/// Throws std::runtime_error naming the cell and stage if rho or theta turns
/// non-positive.
StepInfo step(Grid1D& grid, const RunConfig& config, std::optional<double> dt = std::nullopt);

struct RunResult {
  Grid1D grid;
  double time = 0.0;
  std::size_t steps = 0;
  bool converged = false;  // steady runs only
  std::vector<double> times;
  std::vector<double> residuals;
};

/// Called after every step with (grid, time, step count).
using StepObserver = std::function<void(const Grid1D&, double, std::size_t)>;

/// Advances to config.t_end, or until the step residual drops below
/// config.steady_tol. Stops with converged = false after config.max_steps.
RunResult run(Grid1D grid, const RunConfig& config, const StepObserver& observer = {});

}  // namespace nrxx
