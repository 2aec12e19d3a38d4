#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "nrxx/cdvm.hpp"
#include "nrxx/solver1d.hpp"

namespace nrxx {

enum class SolverKind { nrxx, cdvm };

/// Everything needed to set up and run one 1-D problem with either solver.
struct ScenarioConfig {
  std::string scenario = "custom";
  SolverKind solver = SolverKind::nrxx;

  int M = 5;
  double knudsen = 0.1;
  double prandtl = 2.0 / 3.0;

  double y_lo = -0.5;
  double y_hi = 0.5;
  std::size_t cells = 100;

  double rho0 = 1.0;
  Vec3 u0{0.0, 0.0, 0.0};
  double theta0 = 1.0;

  BoundarySpec left;
  BoundarySpec right;
  Vec3 force{0.0, 0.0, 0.0};

  double t_end = 0.0;  // <= 0: run to steady state
  double steady_tol = 1e-8;
  std::size_t max_steps = 2'000'000;
  double cfl = 0.95;
  double speed_factor = 1.2;
  Limiter limiter = Limiter::minmod;
  Splitting splitting = Splitting::lie;
  int threads = 1;

  // CDVM velocity grid, same axis in every direction
  double dv_lo = -8.0;
  double dv_hi = 8.0;
  std::size_t dv_nodes = 32;
  double dv_steady_tol = 1e-6;

  std::string out_dir = ".";
  std::size_t snapshot_every = 0;  // 0: final state only
};

/// Paper setups: "shock", "couette", "poiseuille"; "custom" gives the
/// defaults above. Throws std::invalid_argument for anything else.
ScenarioConfig preset(const std::string& name);

/// Overrides fields of `base` from an INI file:
///   [scenario] name solver
///   [gas] M kn pr
///   [domain] y_lo y_hi cells
///   [initial] rho u1 u2 u3 theta
///   [left], [right] kind(wall|free) chi u1 u2 u3 theta
///   [force] f1 f2 f3
///   [time] t_end steady_tol max_steps cfl
///   [numerics] limiter(none|minmod) splitting(lie|strang) speed_factor threads
///   [velocity] lo hi n steady_tol
///   [output] dir snapshot_every
/// A `name` key re-seeds from that preset before the other keys apply.
/// Unknown sections or keys throw std::invalid_argument.
ScenarioConfig load_config(const std::string& path, const ScenarioConfig& base);
ScenarioConfig parse_config(std::istream& in, const ScenarioConfig& base);

/// Writes the same INI layout load_config reads.
void write_config(std::ostream& out, const ScenarioConfig& c);

RunConfig to_run_config(const ScenarioConfig& c);
DvConfig to_dv_config(const ScenarioConfig& c);

/// Uniform initial state of the scenario.
Grid1D initial_grid(const ScenarioConfig& c);
DvField initial_field(const ScenarioConfig& c, const DvGrid& grid);
DvGrid velocity_grid(const ScenarioConfig& c);

/// Mean |f_alpha| over |alpha| = k for k = 1..M (entry k-1).
std::vector<double> decay_diagnostic(const MomentState& s);

// CSV I/O. Profile columns: y,rho,u1,u2,u3,theta,sigma11,sigma12,sigma22,q1,q2.
void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows);
std::vector<ProfileRow> read_profile_csv(std::istream& in);

/// Full moment state per cell: y,M,u1,u2,u3,theta then every coefficient
/// f_{a1a2a3} with |alpha| <= M + 1 in storage order.
void write_state_csv(std::ostream& out, const Grid1D& grid);
Grid1D read_state_csv(std::istream& in);

std::vector<ProfileRow> profile(const Grid1D& grid);

/// Relative L2 difference sqrt(sum (a-b)^2 / sum b^2) of one column.
/// Column names follow the profile header. Throws on a length mismatch.
double l2_relative(const std::vector<ProfileRow>& a, const std::vector<ProfileRow>& b,
                   const std::string& column);
double column_value(const ProfileRow& r, const std::string& column);
const std::vector<std::string>& profile_columns();

struct ScenarioOutcome {
  std::vector<ProfileRow> rows;
  double time = 0.0;
  std::size_t steps = 0;
  bool converged = false;
  std::vector<double> residuals;
  Grid1D grid;  // final moment state (NRxx runs only)
};

/// Runs the scenario with its solver. Progress lines go to `log` when given;
/// `snapshot(rows, time, step)` is called every snapshot_every steps.
using SnapshotSink = std::function<void(const std::vector<ProfileRow>&, double, std::size_t)>;
ScenarioOutcome run_scenario(const ScenarioConfig& c, std::ostream* log = nullptr,
                             const SnapshotSink& snapshot = {});

}  // namespace nrxx
