#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "nrxx/moments.hpp"
#include "nrxx/solver1d.hpp"

namespace nrxx {

/// One velocity axis: nodes uniformly spaced over [lo, hi], trapezoid weights.
struct DvAxis {
  double lo = -8.0;
  double hi = 8.0;
  std::size_t n = 32;
  std::vector<double> nodes;
  std::vector<double> weights;

  DvAxis() = default;
  DvAxis(double lo_, double hi_, std::size_t n_);
};

/// Cartesian velocity grid; node (i, k, l) is flattened as (i * n2 + k) * n3 + l.
class DvGrid {
 public:
  DvGrid(const DvAxis& x, const DvAxis& y, const DvAxis& z);
  /// Same axis three times.
  static DvGrid cube(double lo, double hi, std::size_t n) {
    const DvAxis a(lo, hi, n);
    return DvGrid(a, a, a);
  }

  std::size_t size() const { return w_.size(); }
  const DvAxis& axis(int d) const { return axes_[static_cast<std::size_t>(d)]; }
  double xi(int d, std::size_t node) const { return xi_[static_cast<std::size_t>(d)][node]; }
  double weight(std::size_t node) const { return w_[node]; }
  double max_abs(int d) const;

  /// Node index with every axis index mirrored along y.
  std::size_t mirror_y(std::size_t node) const { return mirror_[node]; }

  /// Discrete Maxwellian sampled at the nodes.
  std::vector<double> maxwellian(double rho, const Vec3& u, double theta) const;

 private:
  std::array<DvAxis, 3> axes_;
  std::array<std::vector<double>, 3> xi_;
  std::vector<double> w_;
  std::vector<std::size_t> mirror_;
};

/// Per-cell discrete distributions, stored cell by cell.
struct DvField {
  std::size_t cells = 0;
  std::size_t nodes = 0;
  std::vector<double> values;

  DvField() = default;
  DvField(std::size_t n_cells, std::size_t n_nodes) : cells(n_cells), nodes(n_nodes), values(n_cells * n_nodes, 0.0) {}

  double* cell(std::size_t j) { return values.data() + j * nodes; }
  const double* cell(std::size_t j) const { return values.data() + j * nodes; }
};

struct DvMoments {
  double rho = 0.0;
  Vec3 u{};
  double theta = 0.0;
  Tensor3 sigma{};  // pressure deviator
  Vec3 q{};
  double energy = 0.0;  // sum of |xi|^2 / 2 f
};

/// Quadrature moments of one cell's discrete distribution.
DvMoments dv_moments(const DvGrid& grid, const double* f);

ProfileRow dv_profile_row(double y, const DvMoments& m);

/// Shakhov target with the discrete conservation correction: the sampled
/// Maxwellian parameters are fitted by Newton iteration so its quadrature
/// mass, momentum and energy equal `m`, and the heat-flux term is corrected by
/// M * (a + b.c + d|c|^2) so that it carries none of them.
std::vector<double> shakhov_target(const DvGrid& grid, const DvMoments& m, double prandtl);

/// Implicit relaxation f <- (f + nu f_S) / (1 + nu), nu = dt / tau, with tau
/// from the hard-sphere law and f_S = shakhov_target(...).
void dv_collide(const DvGrid& grid, double* f, double dt, double knudsen, double prandtl);

struct DvConfig {
  double knudsen = 0.1;
  double prandtl = 2.0 / 3.0;
  double cfl = 0.95;
  BoundarySpec left;
  BoundarySpec right;
  Limiter limiter = Limiter::minmod;
  bool collisions = true;
  int threads = 1;
};

/// Largest stable dt: cfl * dx / max |xi_2|.
double dv_timestep(const DvGrid& grid, double dx, double cfl);

/// One split step over dt: upwind transport in y (minmod-limited second order
/// when enabled) with kinetic Maxwell walls, then the Shakhov collision.
/// Returns the largest change per unit time of (rho, theta) relative to their
/// values and of u relative to sqrt(theta), over the cells.
double dv_step(const DvGrid& grid, DvField& field, double dx, double dt, const DvConfig& cfg);

/// Net wall mass flux implied by the current field at the given side.
double dv_wall_mass_flux(const DvGrid& grid, const DvField& field, const WallSpec& wall);

struct DvRunResult {
  DvField field;
  double time = 0.0;
  std::size_t steps = 0;
  bool converged = false;
  std::vector<double> residuals;
};

/// Advances to t_end (> 0) or until the macroscopic residual drops below
/// steady_tol, capped at max_steps.
DvRunResult dv_run(const DvGrid& grid, DvField field, double dx, const DvConfig& cfg,
                   double t_end, double steady_tol, std::size_t max_steps,
                   const std::function<void(const DvField&, double, std::size_t)>& observer = {});

/// Profile rows of every cell of a field over [y_lo, y_lo + cells * dx].
std::vector<ProfileRow> dv_profile(const DvGrid& grid, const DvField& field, double y_lo,
                                   double dx);

}  // namespace nrxx
