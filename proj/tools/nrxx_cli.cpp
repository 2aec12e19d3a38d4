// Command-line driver: run a scenario, compare two profiles, or print the
// moment-decay diagnostic of a saved state.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "nrxx/scenario.hpp"

namespace fs = std::filesystem;
using namespace nrxx;

namespace {

struct RunArgs {
  std::string scenario = "couette";
  std::string config;
  std::optional<std::string> solver, limiter, splitting;
  std::optional<int> M, threads;
  std::optional<double> kn, pr, chi, tend, cfl;
  std::optional<std::size_t> cells, dv_nodes, max_steps;
  std::string out = ".";
};

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

int cmd_run(const RunArgs& a) {
  ScenarioConfig c = preset(a.scenario);
  if (!a.config.empty()) c = load_config(a.config, c);
  c.out_dir = a.out;
  if (a.solver) c.solver = *a.solver == "cdvm" ? SolverKind::cdvm : SolverKind::nrxx;
  if (a.M) c.M = *a.M;
  if (a.kn) c.knudsen = *a.kn;
  if (a.pr) c.prandtl = *a.pr;
  if (a.chi) c.left.wall.chi = c.right.wall.chi = *a.chi;
  if (a.cells) c.cells = *a.cells;
  if (a.tend) c.t_end = *a.tend;
  if (a.cfl) c.cfl = *a.cfl;
  if (a.threads) c.threads = *a.threads;
  if (a.dv_nodes) c.dv_nodes = *a.dv_nodes;
  if (a.max_steps) c.max_steps = *a.max_steps;
  if (a.limiter) c.limiter = *a.limiter == "minmod" ? Limiter::minmod : Limiter::none;
  if (a.splitting) c.splitting = *a.splitting == "strang" ? Splitting::strang : Splitting::lie;

  const fs::path dir(c.out_dir);
  fs::create_directories(dir);
  auto log = open_out(dir / "run.log");
  {
    auto cfg = open_out(dir / "config.ini");
    write_config(cfg, c);
  }
  log << "scenario " << c.scenario << " solver " << (c.solver == SolverKind::nrxx ? "nrxx" : "cdvm") << "\n";
  write_config(log, c);
  log << "\n";

  const auto t0 = std::chrono::steady_clock::now();
  const auto outcome = run_scenario(c, &log, [&](const std::vector<ProfileRow>& rows, double, std::size_t step) {
    auto f = open_out(dir / ("profile_" + std::to_string(step) + ".csv"));
    write_profile_csv(f, rows);
  });
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  {
    auto f = open_out(dir / "profile.csv");
    write_profile_csv(f, outcome.rows);
  }
  if (c.solver == SolverKind::nrxx) {
    auto f = open_out(dir / "state.csv");
    write_state_csv(f, outcome.grid);
  }
  if (!(c.t_end > 0.0)) {
    auto f = open_out(dir / "residuals.csv");
    f << "step,residual\n";
    for (std::size_t i = 0; i < outcome.residuals.size(); ++i) f << i + 1 << "," << outcome.residuals[i] << "\n";
  }

  std::ostringstream summary;
  summary << "steps " << outcome.steps << " time " << outcome.time << " wall " << seconds << " s";
  if (!(c.t_end > 0.0)) summary << (outcome.converged ? " converged" : " NOT converged");
  if (!outcome.residuals.empty()) summary << " residual " << outcome.residuals.back();
  log << summary.str() << "\n";
  std::cout << summary.str() << "\nwrote " << (dir / "profile.csv").string() << "\n";
  return !(c.t_end > 0.0) && !outcome.converged ? 3 : 0;
}

std::vector<ProfileRow> read_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_profile_csv(in);
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& norm,
                const std::vector<std::string>& columns) {
  if (norm != "l2rel") throw std::runtime_error("only --norm l2rel is supported");
  const auto pa = read_profile(a), pb = read_profile(b);
  for (const auto& col : columns.empty() ? profile_columns() : columns) {
    if (col == "y") continue;
    std::printf("%-8s %.6e\n", col.c_str(), l2_relative(pa, pb, col));
  }
  return 0;
}

int cmd_decay(const std::string& state, std::optional<std::size_t> cell) {
  std::ifstream in(state);
  if (!in) throw std::runtime_error("cannot open " + state);
  const Grid1D g = read_state_csv(in);
  std::vector<std::size_t> cells;
  if (cell) {
    if (*cell >= g.size()) throw std::runtime_error("cell out of range");
    cells.push_back(*cell);
  } else {
    cells = {0, g.size() - 1};
  }
  std::printf("cell,y");
  for (int k = 1; k <= g.cells.front().M; ++k) std::printf(",k%d", k);
  std::printf("\n");
  for (auto j : cells) {
    std::printf("%zu,%.17g", j, g.center(j));
    for (double v : decay_diagnostic(g.cells[j])) std::printf(",%.6e", v);
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-D regularized moment solver and discrete-velocity reference"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run = app.add_subcommand("run", "run a scenario and write profile.csv, state.csv and run.log");
  run->add_option("--scenario", ra.scenario, "shock | couette | poiseuille | custom")
      ->check(CLI::IsMember({"shock", "couette", "poiseuille", "custom"}));
  run->add_option("--config", ra.config, "INI file applied on top of the preset")->check(CLI::ExistingFile);
  run->add_option("--solver", ra.solver, "nrxx | cdvm")->check(CLI::IsMember({"nrxx", "cdvm"}));
  run->add_option("--M", ra.M, "moment order")->check(CLI::Range(3, kMaxOrder - 1));
  run->add_option("--kn", ra.kn, "Knudsen number")->check(CLI::PositiveNumber);
  run->add_option("--pr", ra.pr, "Prandtl number")->check(CLI::PositiveNumber);
  run->add_option("--chi", ra.chi, "accommodation coefficient of both walls")->check(CLI::Range(0.0, 1.0));
  run->add_option("--cells", ra.cells, "spatial cells")->check(CLI::PositiveNumber);
  run->add_option("--tend", ra.tend, "end time; 0 runs to steady state")->check(CLI::NonNegativeNumber);
  run->add_option("--cfl", ra.cfl, "CFL number")->check(CLI::PositiveNumber);
  run->add_option("--max-steps", ra.max_steps, "step cap");
  run->add_option("--dv-nodes", ra.dv_nodes, "CDVM nodes per velocity axis")->check(CLI::Range(16, 256));
  run->add_option("--threads", ra.threads, "worker threads")->check(CLI::PositiveNumber);
  run->add_option("--limiter", ra.limiter, "none | minmod")->check(CLI::IsMember({"none", "minmod"}));
  run->add_option("--splitting", ra.splitting, "lie | strang")->check(CLI::IsMember({"lie", "strang"}));
  run->add_option("--out", ra.out, "output directory");

  std::string ca, cb, norm = "l2rel";
  std::vector<std::string> columns;
  auto* cmp = app.add_subcommand("compare", "relative L2 difference of two profile CSVs, per column");
  cmp->add_option("a", ca)->required()->check(CLI::ExistingFile);
  cmp->add_option("b", cb, "reference")->required()->check(CLI::ExistingFile);
  cmp->add_option("--norm", norm)->check(CLI::IsMember({"l2rel"}));
  cmp->add_option("--columns", columns, "subset of columns");

  std::string state;
  std::optional<std::size_t> cell;
  auto* decay = app.add_subcommand("decay", "mean |f_alpha| per order for wall cells of a state.csv");
  decay->add_option("state", state)->required()->check(CLI::ExistingFile);
  decay->add_option("--cell", cell, "cell index (default: both edge cells)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(ra);
    if (cmp->parsed()) return cmd_compare(ca, cb, norm, columns);
    if (decay->parsed()) return cmd_decay(state, cell);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
