#include "nrxx/solver1d.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nrxx/closure.hpp"
#include "nrxx/collision.hpp"
#include "nrxx/hermite.hpp"
#include "nrxx/parallel.hpp"
#include "nrxx/projection.hpp"

namespace nrxx {
namespace {

constexpr std::size_t kPackHead = 4;  // u_1, u_2, u_3, theta ahead of the coefficients

std::vector<double> pack(const MomentState& s) {
  std::vector<double> p(kPackHead + s.evolved_size());
  p[0] = s.u[0];
  p[1] = s.u[1];
  p[2] = s.u[2];
  p[3] = s.theta;
  std::copy_n(s.f.begin(), s.evolved_size(), p.begin() + kPackHead);
  return p;
}

MomentState unpack(const std::vector<double>& p, int M) {
  MomentState s(M);
  s.u = {p[0], p[1], p[2]};
  s.theta = p[3];
  std::copy(p.begin() + kPackHead, p.end(), s.f.begin());
  return s;
}

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

void check_positive(double rho, double theta, std::size_t cell, const char* stage) {
  if (!(rho > 0.0) || !(theta > 0.0) || !std::isfinite(rho) || !std::isfinite(theta))
    throw std::runtime_error("non-positive density or temperature in cell " + std::to_string(cell) +
                             " after " + stage + " (rho=" + std::to_string(rho) +
                             ", theta=" + std::to_string(theta) + ")");
}

void accelerate(Grid1D& grid, const Vec3& force, double dt) {
  for (auto& c : grid.cells)
    for (std::size_t d = 0; d < 3; ++d) c.u[d] += force[d] * dt;
}

// Closure blocks of the cells from central differences, one-sided at the two
// ends. Interface mode only needs the edge cells, for the wall ghosts.
void center_closure(Grid1D& grid, const RunConfig& cfg) {
  const std::size_t n = grid.size();
  const double dx = grid.dx();
  const bool all = cfg.closure_site == ClosureSite::center;
  std::vector<std::vector<double>> blocks(n);
  parallel_for(n, cfg.threads, [&](std::size_t j) {
    if (!all && j != 0 && j + 1 != n) return;
    const MomentState& c = grid.cells[j];
    const MomentState& l = grid.cells[j == 0 ? 0 : j - 1];
    const MomentState& r = grid.cells[j + 1 == n ? j : j + 1];
    const double span = (j == 0 || j + 1 == n) ? dx : 2.0 * dx;
    const double tau = relaxation_time(c.rho(), c.theta, cfg.knudsen);
    blocks[j] = close(GradientStencil{l, c, r, n == 1 ? dx : span}, tau);
  });
  for (std::size_t j = 0; j < n; ++j) {
    if (blocks[j].empty()) continue;
    auto dst = grid.cells[j].closure_block();
    std::copy(blocks[j].begin(), blocks[j].end(), dst.begin());
  }
}

void transport_and_collide(Grid1D& grid, const RunConfig& cfg, double dt, double c) {
  const std::size_t n = grid.size();
  const double dx = grid.dx();
  const int M = grid.cells.front().M;

  center_closure(grid, cfg);
  const MomentState ghost_lo = boundary_ghost(grid.cells.front(), cfg.left);
  const MomentState ghost_hi = boundary_ghost(grid.cells.back(), cfg.right);

  std::vector<TracePair> traces = reconstruct(grid, ghost_lo, ghost_hi, cfg.limiter);
  auto ext = [&](std::size_t k) -> const MomentState& {
    if (k == 0) return ghost_lo;
    if (k == n + 1) return ghost_hi;
    return grid.cells[k - 1];
  };

  std::vector<InterfaceFlux> fluxes(n + 1);
  parallel_for(n + 1, cfg.threads, [&](std::size_t j) {
    auto& [lt, rt] = traces[j];
    const MomentState& lc = ext(j);
    const MomentState& rc = ext(j + 1);
    check_positive(lt.rho(), lt.theta, j, "reconstruction");
    check_positive(rt.rho(), rt.theta, j, "reconstruction");
    if (cfg.closure_site == ClosureSite::interface) {
      // At a wall face the gradient is taken inside the gas; differencing
      // against the ghost would turn the wall jump into an O(tau/dx) closure
      // that feeds back into the boundary map.
      const bool wall_lo = j == 0 && cfg.left.kind == BoundaryKind::wall;
      const bool wall_hi = j == n && cfg.right.kind == BoundaryKind::wall;
      const MomentState& gl = wall_lo ? rc : (wall_hi && n > 1 ? ext(n - 1) : lc);
      const MomentState& gr = wall_lo && n > 1 ? ext(2) : (wall_hi ? lc : rc);
      apply_closure(lt, GradientStencil{gl, lt, gr, dx},
                    relaxation_time(lt.rho(), lt.theta, cfg.knudsen));
      apply_closure(rt, GradientStencil{gl, rt, gr, dx},
                    relaxation_time(rt.rho(), rt.theta, cfg.knudsen));
    } else {
      std::copy(lc.closure_block().begin(), lc.closure_block().end(), lt.closure_block().begin());
      std::copy(rc.closure_block().begin(), rc.closure_block().end(), rt.closure_block().begin());
    }
    if (j == 0 && cfg.left.kind == BoundaryKind::wall) lt = ghost_state(rt, cfg.left.wall);
    if (j == n && cfg.right.kind == BoundaryKind::wall) rt = ghost_state(lt, cfg.right.wall);
    fluxes[j] = interface_flux(lt, rt, c);
  });

  const double ratio = dt / dx;
  const std::size_t E = moment_count(M);
  std::vector<MomentState> updated(n);
  parallel_for(n, cfg.threads, [&](std::size_t j) {
    const MomentState& old = grid.cells[j];
    std::vector<double> lo(E), hi(E);
    project_coefficients(fluxes[j].f, M, fluxes[j].u, fluxes[j].theta, old.u, old.theta, lo, M);
    project_coefficients(fluxes[j + 1].f, M, fluxes[j + 1].u, fluxes[j + 1].theta, old.u,
                         old.theta, hi, M);
    std::vector<double> g(E);
    for (std::size_t k = 0; k < E; ++k) g[k] = old.f[k] - ratio * (hi[k] - lo[k]);

    const double rho = g[0];
    check_positive(rho, old.theta, j, "transport");
    Vec3 du{};
    for (int d = 0; d < 3; ++d) du[static_cast<std::size_t>(d)] = g[index_of(unit_index(d))] / rho;
    double trace2 = 0.0;
    for (int d = 0; d < 3; ++d) trace2 += g[index_of(unit_index(d, 2))];
    const double du2 = du[0] * du[0] + du[1] * du[1] + du[2] * du[2];
    const double theta = old.theta + (2.0 * trace2 - rho * du2) / (3.0 * rho);
    Vec3 u{};
    for (std::size_t d = 0; d < 3; ++d) u[d] = old.u[d] + du[d];

    MomentState s(M);
    s.u = u;
    s.theta = theta;
    check_positive(rho, theta, j, "transport");
    project_coefficients(g, M, old.u, old.theta, u, theta, s.evolved(), M);
    s.set_rho(rho);
    for (int d = 0; d < 3; ++d) s[unit_index(d)] = 0.0;

    if (cfg.collisions) {
      const double tau = relaxation_time(rho, theta, cfg.knudsen);
      collide(s, CollisionParams{tau, cfg.prandtl, dt});
    }
    updated[j] = std::move(s);
  });
  grid.cells = std::move(updated);
}

// Largest change per unit time over all cells. u and theta are measured on
// the thermal scale, so a velocity component sitting at zero does not turn
// roundoff into a residual.
double step_residual(const std::vector<MomentState>& before, const Grid1D& after, double dt) {
  double r = 0.0;
  for (std::size_t j = 0; j < before.size(); ++j) {
    const MomentState& a = before[j];
    const MomentState& b = after.cells[j];
    for (std::size_t d = 0; d < 3; ++d) r = std::max(r, std::abs(b.u[d] - a.u[d]) / std::sqrt(a.theta));
    r = std::max(r, std::abs(b.theta - a.theta) / a.theta);
    for (std::size_t k = 0; k < a.evolved_size(); ++k)
      r = std::max(r, std::abs(b.f[k] - a.f[k]) / (std::abs(a.f[k]) + 1e-8));
  }
  return r / dt;
}

}  // namespace

namespace {

// Positions of alpha - e2 (or -1) and alpha + e2 for every |alpha| <= M.
struct FluxPlan {
  std::vector<long> down;
  std::vector<std::size_t> up;
  std::vector<double> weight;  // alpha_2 + 1

  explicit FluxPlan(int M) {
    for (std::size_t i = 0; i < moment_count(M); ++i) {
      const MultiIndex& a = index_at(i);
      down.push_back(a.a2 > 0 ? static_cast<long>(index_of(a.shifted(1, -1))) : -1L);
      up.push_back(index_of(a.shifted(1, 1)));
      weight.push_back(a.a2 + 1.0);
    }
  }

  static const FluxPlan& get(int M) {
    static std::array<std::unique_ptr<FluxPlan>, kMaxOrder> plans;
    static std::array<std::once_flag, kMaxOrder> flags;
    if (M < 0 || M >= kMaxOrder) throw std::invalid_argument("flux_vector: unsupported order");
    const auto k = static_cast<std::size_t>(M);
    std::call_once(flags[k], [&] { plans[k] = std::make_unique<FluxPlan>(M); });
    return *plans[k];
  }
};

}  // namespace

double stable_timestep(const Grid1D& grid, const RunConfig& cfg, double c) {
  const double dt = cfl_timestep(grid, cfg.cfl, c);
  if (!cfg.diffusion_bound) return dt;
  return std::min(dt, diffusion_timestep(grid, cfg.cfl, c, cfg.knudsen));
}

double Grid1D::total_mass() const {
  double m = 0.0;
  for (const auto& c : cells) m += c.rho();
  return m * dx();
}

double signal_speed_constant(int M, double factor) { return factor * he_largest_root(M + 1); }

std::vector<double> flux_vector(const MomentState& s) {
  const FluxPlan& plan = FluxPlan::get(s.M);
  const std::size_t E = s.evolved_size();
  std::vector<double> F(E);
  for (std::size_t i = 0; i < E; ++i) {
    const long lo = plan.down[i];
    F[i] = (lo < 0 ? 0.0 : s.theta * s.f[static_cast<std::size_t>(lo)]) + s.u[1] * s.f[i] +
           plan.weight[i] * s.f[plan.up[i]];
  }
  return F;
}

SignalSpeeds signal_speeds(const MomentState& left, const MomentState& right, double c) {
  const double cl = c * std::sqrt(left.theta);
  const double cr = c * std::sqrt(right.theta);
  return {std::min(left.u[1] - cl, right.u[1] - cr), std::max(left.u[1] + cl, right.u[1] + cr)};
}

std::vector<double> hll_flux(const MomentState& left, const MomentState& right,
                             const SignalSpeeds& sp) {
  if (left.M != right.M) throw std::invalid_argument("hll_flux: states have different M");
  if (sp.lo >= 0.0) return flux_vector(left);
  if (sp.hi <= 0.0) return flux_vector(right);
  const auto FL = flux_vector(left);
  const auto FR = flux_vector(right);
  const double inv = 1.0 / (sp.hi - sp.lo);
  std::vector<double> F(FL.size());
  for (std::size_t i = 0; i < F.size(); ++i)
    F[i] = (sp.hi * FL[i] - sp.lo * FR[i] + sp.lo * sp.hi * (right.f[i] - left.f[i])) * inv;
  return F;
}

std::vector<double> hll_flux(const MomentState& left, const MomentState& right, double c) {
  return hll_flux(left, right, signal_speeds(left, right, c));
}

InterfaceFlux interface_flux(const MomentState& left, const MomentState& right, double c) {
  const SignalSpeeds sp = signal_speeds(left, right, c);
  InterfaceFlux out;
  for (std::size_t d = 0; d < 3; ++d) out.u[d] = 0.5 * (left.u[d] + right.u[d]);
  out.theta = 0.5 * (left.theta + right.theta);
  out.f = hll_flux(project(left, out.u, out.theta), project(right, out.u, out.theta), sp);
  return out;
}

double cfl_timestep(const Grid1D& grid, double cfl, double c) {
  if (grid.cells.empty()) throw std::invalid_argument("cfl_timestep: empty grid");
  double smax = 0.0;
  for (const auto& s : grid.cells) smax = std::max(smax, std::abs(s.u[1]) + c * std::sqrt(s.theta));
  return cfl * grid.dx() / smax;
}

double diffusion_timestep(const Grid1D& grid, double cfl, double c, double knudsen) {
  if (grid.cells.empty()) throw std::invalid_argument("diffusion_timestep: empty grid");
  const double dx = grid.dx();
  double rate = 0.0;
  for (const auto& s : grid.cells) {
    const double D = (s.M + 1) * relaxation_time(s.rho(), s.theta, knudsen) * s.theta;
    rate = std::max(rate, (std::abs(s.u[1]) + c * std::sqrt(s.theta)) / dx + 2.0 * D / (dx * dx));
  }
  return cfl / rate;
}

std::vector<TracePair> reconstruct(const Grid1D& grid, const MomentState& ghost_lo,
                                   const MomentState& ghost_hi, Limiter limiter) {
  const std::size_t n = grid.size();
  const int M = grid.cells.front().M;
  std::vector<std::vector<double>> q(n + 2);
  q[0] = pack(ghost_lo);
  q[n + 1] = pack(ghost_hi);
  for (std::size_t j = 0; j < n; ++j) q[j + 1] = pack(grid.cells[j]);

  // minus/plus traces of every cell, ghosts piecewise constant
  std::vector<std::vector<double>> minus(q), plus(q);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < q[k].size(); ++i) {
      const double dl = q[k][i] - q[k - 1][i];
      const double dr = q[k + 1][i] - q[k][i];
      const double slope = limiter == Limiter::minmod ? minmod(dl, dr) : 0.5 * (dl + dr);
      minus[k][i] = q[k][i] - 0.5 * slope;
      plus[k][i] = q[k][i] + 0.5 * slope;
    }
  }

  std::vector<TracePair> out;
  out.reserve(n + 1);
  for (std::size_t j = 0; j <= n; ++j) out.emplace_back(unpack(plus[j], M), unpack(minus[j + 1], M));
  return out;
}

MomentState boundary_ghost(const MomentState& edge, const BoundarySpec& spec) {
  if (spec.kind == BoundaryKind::free) return edge;
  return ghost_state(edge, spec.wall);
}

StepInfo step(Grid1D& grid, const RunConfig& cfg, std::optional<double> dt_override) {
  if (grid.cells.empty()) throw std::invalid_argument("step: empty grid");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw std::invalid_argument("step: CFL must lie in (0, 1]");
  const int M = grid.cells.front().M;
  if (M < 3) throw std::invalid_argument("step: M must be at least 3");
  const double c = signal_speed_constant(M, cfg.speed_factor);
  const double dt = dt_override ? *dt_override : stable_timestep(grid, cfg, c);

  const std::vector<MomentState> before = grid.cells;
  if (cfg.splitting == Splitting::strang) {
    accelerate(grid, cfg.force, 0.5 * dt);
    transport_and_collide(grid, cfg, dt, c);
    accelerate(grid, cfg.force, 0.5 * dt);
  } else {
    transport_and_collide(grid, cfg, dt, c);
    accelerate(grid, cfg.force, dt);
  }
  return {dt, step_residual(before, grid, dt)};
}

RunResult run(Grid1D grid, const RunConfig& cfg, const StepObserver& observer) {
  RunResult res;
  const bool steady = !(cfg.t_end > 0.0);
  const int M = grid.cells.front().M;
  const double c = signal_speed_constant(M, cfg.speed_factor);
  while (res.steps < cfg.max_steps) {
    std::optional<double> dt;
    if (!steady) {
      const double remaining = cfg.t_end - res.time;
      if (remaining <= 1e-14 * std::max(1.0, cfg.t_end)) break;
      dt = std::min(stable_timestep(grid, cfg, c), remaining);
    }
    const StepInfo info = step(grid, cfg, dt);
    res.time += info.dt;
    ++res.steps;
    res.times.push_back(res.time);
    res.residuals.push_back(info.residual);
    if (observer) observer(grid, res.time, res.steps);
    if (steady && info.residual < cfg.steady_tol) {
      res.converged = true;
      break;
    }
  }
  res.grid = std::move(grid);
  return res;
}

}  // namespace nrxx
