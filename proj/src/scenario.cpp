#include "nrxx/scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nrxx {
namespace {

BoundarySpec wall(double u1, WallSide side) {
  BoundarySpec b;
  b.kind = BoundaryKind::wall;
  b.wall.chi = 1.0;
  b.wall.theta_wall = 1.0;
  b.wall.u_wall = {u1, 0.0, 0.0};
  b.wall.side = side;
  return b;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size() && s.find_first_not_of(" \r\t", used) != std::string::npos)
    throw std::invalid_argument("bad number in CSV: " + s);
  return v;
}

std::string boundary_kind_name(BoundaryKind k) { return k == BoundaryKind::wall ? "wall" : "free"; }

BoundaryKind parse_boundary_kind(const std::string& s) {
  if (s == "wall") return BoundaryKind::wall;
  if (s == "free") return BoundaryKind::free;
  throw std::invalid_argument("boundary kind must be wall or free, got '" + s + "'");
}

Limiter parse_limiter(const std::string& s) {
  if (s == "none") return Limiter::none;
  if (s == "minmod") return Limiter::minmod;
  throw std::invalid_argument("limiter must be none or minmod, got '" + s + "'");
}

Splitting parse_splitting(const std::string& s) {
  if (s == "lie") return Splitting::lie;
  if (s == "strang") return Splitting::strang;
  throw std::invalid_argument("splitting must be lie or strang, got '" + s + "'");
}

SolverKind parse_solver(const std::string& s) {
  if (s == "nrxx") return SolverKind::nrxx;
  if (s == "cdvm") return SolverKind::cdvm;
  throw std::invalid_argument("solver must be nrxx or cdvm, got '" + s + "'");
}

}  // namespace

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig c;
  c.scenario = name;
  c.left = wall(0.0, WallSide::left);
  c.right = wall(0.0, WallSide::right);
  if (name == "custom") return c;
  if (name == "shock") {
    c.knudsen = 0.5;
    c.y_lo = -5.0;
    c.y_hi = 0.0;
    c.cells = 500;
    c.u0 = {0.0, 0.5, 0.0};
    c.left.kind = BoundaryKind::free;
    c.t_end = 1.0;
    return c;
  }
  if (name == "couette") {
    c.left = wall(-0.6296, WallSide::left);
    c.right = wall(0.6296, WallSide::right);
    return c;
  }
  if (name == "poiseuille") {
    c.force = {0.2555, 0.0, 0.0};
    return c;
  }
  throw std::invalid_argument("unknown scenario '" + name + "' (shock, couette, poiseuille, custom)");
}

ScenarioConfig parse_config(std::istream& in, const ScenarioConfig& base) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }

  ScenarioConfig c = base;
  if (auto s = tree.get_child_optional("scenario"))
    if (auto name = s->get_optional<std::string>("name")) {
      const auto keep_out = c.out_dir;
      c = preset(*name);
      c.out_dir = keep_out;
    }

  using Setter = std::function<void(ScenarioConfig&, const std::string&)>;
  auto num = [](auto member) {
    return Setter([member](ScenarioConfig& c, const std::string& v) { c.*member = std::stod(v); });
  };
  auto count = [](auto member) {
    return Setter([member](ScenarioConfig& c, const std::string& v) {
      const long n = std::stol(v);
      if (n < 0) throw std::invalid_argument("negative count " + v);
      c.*member = static_cast<std::size_t>(n);
    });
  };
  auto comp = [](auto member, int d) {
    return Setter([member, d](ScenarioConfig& c, const std::string& v) {
      (c.*member)[static_cast<std::size_t>(d)] = std::stod(v);
    });
  };
  auto side = [](BoundarySpec ScenarioConfig::*b) {
    return std::map<std::string, Setter>{
        {"kind", [b](ScenarioConfig& c, const std::string& v) { (c.*b).kind = parse_boundary_kind(v); }},
        {"chi", [b](ScenarioConfig& c, const std::string& v) { (c.*b).wall.chi = std::stod(v); }},
        {"u1", [b](ScenarioConfig& c, const std::string& v) { (c.*b).wall.u_wall[0] = std::stod(v); }},
        {"u2", [b](ScenarioConfig& c, const std::string& v) { (c.*b).wall.u_wall[1] = std::stod(v); }},
        {"u3", [b](ScenarioConfig& c, const std::string& v) { (c.*b).wall.u_wall[2] = std::stod(v); }},
        {"theta", [b](ScenarioConfig& c, const std::string& v) { (c.*b).wall.theta_wall = std::stod(v); }},
    };
  };

  const std::map<std::string, std::map<std::string, Setter>> schema{
      {"scenario",
       {{"name", [](ScenarioConfig&, const std::string&) {}},
        {"solver", [](ScenarioConfig& c, const std::string& v) { c.solver = parse_solver(v); }}}},
      {"gas",
       {{"M", [](ScenarioConfig& c, const std::string& v) { c.M = std::stoi(v); }},
        {"kn", num(&ScenarioConfig::knudsen)},
        {"pr", num(&ScenarioConfig::prandtl)}}},
      {"domain",
       {{"y_lo", num(&ScenarioConfig::y_lo)},
        {"y_hi", num(&ScenarioConfig::y_hi)},
        {"cells", count(&ScenarioConfig::cells)}}},
      {"initial",
       {{"rho", num(&ScenarioConfig::rho0)},
        {"u1", comp(&ScenarioConfig::u0, 0)},
        {"u2", comp(&ScenarioConfig::u0, 1)},
        {"u3", comp(&ScenarioConfig::u0, 2)},
        {"theta", num(&ScenarioConfig::theta0)}}},
      {"left", side(&ScenarioConfig::left)},
      {"right", side(&ScenarioConfig::right)},
      {"force",
       {{"f1", comp(&ScenarioConfig::force, 0)},
        {"f2", comp(&ScenarioConfig::force, 1)},
        {"f3", comp(&ScenarioConfig::force, 2)}}},
      {"time",
       {{"t_end", num(&ScenarioConfig::t_end)},
        {"steady_tol", num(&ScenarioConfig::steady_tol)},
        {"max_steps", count(&ScenarioConfig::max_steps)},
        {"cfl", num(&ScenarioConfig::cfl)}}},
      {"numerics",
       {{"limiter", [](ScenarioConfig& c, const std::string& v) { c.limiter = parse_limiter(v); }},
        {"splitting", [](ScenarioConfig& c, const std::string& v) { c.splitting = parse_splitting(v); }},
        {"speed_factor", num(&ScenarioConfig::speed_factor)},
        {"threads", [](ScenarioConfig& c, const std::string& v) { c.threads = std::stoi(v); }}}},
      {"velocity",
       {{"lo", num(&ScenarioConfig::dv_lo)},
        {"hi", num(&ScenarioConfig::dv_hi)},
        {"n", count(&ScenarioConfig::dv_nodes)},
        {"steady_tol", num(&ScenarioConfig::dv_steady_tol)}}},
      {"output",
       {{"dir", [](ScenarioConfig& c, const std::string& v) { c.out_dir = v; }},
        {"snapshot_every", count(&ScenarioConfig::snapshot_every)}}},
  };

  for (const auto& [section, body] : tree) {
    const auto sec = schema.find(section);
    if (sec == schema.end()) throw std::invalid_argument("config: unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      const auto setter = sec->second.find(key);
      if (setter == sec->second.end())
        throw std::invalid_argument("config: unknown key '" + key + "' in [" + section + "]");
      try {
        setter->second(c, value.data());
      } catch (const std::logic_error& e) {
        throw std::invalid_argument("config: [" + section + "] " + key + " = '" + value.data() +
                                    "': " + e.what());
      }
    }
  }
  return c;
}

ScenarioConfig load_config(const std::string& path, const ScenarioConfig& base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  return parse_config(in, base);
}

void write_config(std::ostream& out, const ScenarioConfig& c) {
  auto side = [&](const char* name, const BoundarySpec& b) {
    out << "\n[" << name << "]\nkind = " << boundary_kind_name(b.kind) << "\nchi = " << fmt(b.wall.chi)
        << "\nu1 = " << fmt(b.wall.u_wall[0]) << "\nu2 = " << fmt(b.wall.u_wall[1])
        << "\nu3 = " << fmt(b.wall.u_wall[2]) << "\ntheta = " << fmt(b.wall.theta_wall) << "\n";
  };
  out << "[scenario]\nsolver = " << (c.solver == SolverKind::nrxx ? "nrxx" : "cdvm") << "\n";
  out << "\n[gas]\nM = " << c.M << "\nkn = " << fmt(c.knudsen) << "\npr = " << fmt(c.prandtl) << "\n";
  out << "\n[domain]\ny_lo = " << fmt(c.y_lo) << "\ny_hi = " << fmt(c.y_hi) << "\ncells = " << c.cells << "\n";
  out << "\n[initial]\nrho = " << fmt(c.rho0) << "\nu1 = " << fmt(c.u0[0]) << "\nu2 = " << fmt(c.u0[1])
      << "\nu3 = " << fmt(c.u0[2]) << "\ntheta = " << fmt(c.theta0) << "\n";
  side("left", c.left);
  side("right", c.right);
  out << "\n[force]\nf1 = " << fmt(c.force[0]) << "\nf2 = " << fmt(c.force[1]) << "\nf3 = " << fmt(c.force[2])
      << "\n";
  out << "\n[time]\nt_end = " << fmt(c.t_end) << "\nsteady_tol = " << fmt(c.steady_tol)
      << "\nmax_steps = " << c.max_steps << "\ncfl = " << fmt(c.cfl) << "\n";
  out << "\n[numerics]\nlimiter = " << (c.limiter == Limiter::none ? "none" : "minmod")
      << "\nsplitting = " << (c.splitting == Splitting::lie ? "lie" : "strang")
      << "\nspeed_factor = " << fmt(c.speed_factor) << "\nthreads = " << c.threads << "\n";
  out << "\n[velocity]\nlo = " << fmt(c.dv_lo) << "\nhi = " << fmt(c.dv_hi) << "\nn = " << c.dv_nodes
      << "\nsteady_tol = " << fmt(c.dv_steady_tol) << "\n";
  out << "\n[output]\ndir = " << c.out_dir << "\nsnapshot_every = " << c.snapshot_every << "\n";
}

RunConfig to_run_config(const ScenarioConfig& c) {
  RunConfig r;
  r.M = c.M;
  r.knudsen = c.knudsen;
  r.prandtl = c.prandtl;
  r.cfl = c.cfl;
  r.speed_factor = c.speed_factor;
  r.t_end = c.t_end;
  r.steady_tol = c.steady_tol;
  r.max_steps = c.max_steps;
  r.left = c.left;
  r.right = c.right;
  r.left.wall.side = WallSide::left;
  r.right.wall.side = WallSide::right;
  r.force = c.force;
  r.limiter = c.limiter;
  r.splitting = c.splitting;
  r.threads = c.threads;
  return r;
}

DvConfig to_dv_config(const ScenarioConfig& c) {
  if (c.force != Vec3{0.0, 0.0, 0.0}) throw std::invalid_argument("the CDVM solver has no force term");
  DvConfig d;
  d.knudsen = c.knudsen;
  d.prandtl = c.prandtl;
  d.cfl = c.cfl;
  d.left = c.left;
  d.right = c.right;
  d.left.wall.side = WallSide::left;
  d.right.wall.side = WallSide::right;
  d.threads = c.threads;
  return d;
}

Grid1D initial_grid(const ScenarioConfig& c) {
  if (c.cells == 0) throw std::invalid_argument("need at least one cell");
  return Grid1D(c.y_lo, c.y_hi, c.cells, maxwellian(c.rho0, c.u0, c.theta0, c.M));
}

DvGrid velocity_grid(const ScenarioConfig& c) { return DvGrid::cube(c.dv_lo, c.dv_hi, c.dv_nodes); }

DvField initial_field(const ScenarioConfig& c, const DvGrid& grid) {
  if (c.cells == 0) throw std::invalid_argument("need at least one cell");
  DvField field(c.cells, grid.size());
  const auto f0 = grid.maxwellian(c.rho0, c.u0, c.theta0);
  for (std::size_t j = 0; j < c.cells; ++j) std::copy(f0.begin(), f0.end(), field.cell(j));
  return field;
}

std::vector<double> decay_diagnostic(const MomentState& s) {
  std::vector<double> out;
  for (int k = 1; k <= s.M; ++k) {
    const std::size_t lo = moment_count(k - 1), hi = moment_count(k);
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) sum += std::abs(s.f[i]);
    out.push_back(sum / static_cast<double>(hi - lo));
  }
  return out;
}

const std::vector<std::string>& profile_columns() {
  static const std::vector<std::string> cols{"y",       "rho",     "u1",      "u2", "u3", "theta",
                                             "sigma11", "sigma12", "sigma22", "q1", "q2"};
  return cols;
}

double column_value(const ProfileRow& r, const std::string& column) {
  if (column == "y") return r.y;
  if (column == "rho") return r.rho;
  if (column == "u1") return r.u[0];
  if (column == "u2") return r.u[1];
  if (column == "u3") return r.u[2];
  if (column == "theta") return r.theta;
  if (column == "sigma11") return r.sigma11;
  if (column == "sigma12") return r.sigma12;
  if (column == "sigma22") return r.sigma22;
  if (column == "q1") return r.q1;
  if (column == "q2") return r.q2;
  throw std::invalid_argument("unknown profile column '" + column + "'");
}

void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows) {
  const auto& cols = profile_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << fmt(column_value(r, cols[i]));
    out << "\n";
  }
}

std::vector<ProfileRow> read_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty profile CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  if (header != profile_columns()) throw std::invalid_argument("unexpected profile CSV header: " + line);
  std::vector<ProfileRow> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto v = split_csv(line);
    if (v.size() != header.size()) throw std::invalid_argument("profile CSV row has wrong width: " + line);
    ProfileRow r;
    r.y = to_double(v[0]);
    r.rho = to_double(v[1]);
    r.u = {to_double(v[2]), to_double(v[3]), to_double(v[4])};
    r.theta = to_double(v[5]);
    r.sigma11 = to_double(v[6]);
    r.sigma12 = to_double(v[7]);
    r.sigma22 = to_double(v[8]);
    r.q1 = to_double(v[9]);
    r.q2 = to_double(v[10]);
    rows.push_back(r);
  }
  return rows;
}

void write_state_csv(std::ostream& out, const Grid1D& grid) {
  if (grid.cells.empty()) throw std::invalid_argument("empty grid");
  const int M = grid.cells.front().M;
  out << "y,M,u1,u2,u3,theta";
  for (std::size_t i = 0; i < moment_count(M + 1); ++i) {
    const auto& a = index_at(i);
    out << ",f_" << a.a1 << "_" << a.a2 << "_" << a.a3;
  }
  out << "\n";
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto& s = grid.cells[j];
    if (s.M != M) throw std::invalid_argument("mixed orders in grid");
    out << fmt(grid.center(j)) << "," << M << "," << fmt(s.u[0]) << "," << fmt(s.u[1]) << "," << fmt(s.u[2])
        << "," << fmt(s.theta);
    for (double v : s.f) out << "," << fmt(v);
    out << "\n";
  }
}

Grid1D read_state_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty state CSV");
  const auto header = split_csv(line);
  if (header.size() < 6 || header[0] != "y" || header[1] != "M")
    throw std::invalid_argument("unexpected state CSV header");
  Grid1D grid;
  std::vector<double> centers;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto v = split_csv(line);
    if (v.size() != header.size()) throw std::invalid_argument("state CSV row has wrong width");
    MomentState s(std::stoi(v[1]));
    if (header.size() != 6 + s.f.size()) throw std::invalid_argument("state CSV width does not match M");
    s.u = {to_double(v[2]), to_double(v[3]), to_double(v[4])};
    s.theta = to_double(v[5]);
    for (std::size_t i = 0; i < s.f.size(); ++i) s.f[i] = to_double(v[6 + i]);
    centers.push_back(to_double(v[0]));
    grid.cells.push_back(std::move(s));
  }
  if (grid.cells.empty()) throw std::invalid_argument("state CSV has no rows");
  const double dx = centers.size() > 1 ? centers[1] - centers[0] : 1.0;
  grid.y_lo = centers.front() - 0.5 * dx;
  grid.y_hi = centers.back() + 0.5 * dx;
  return grid;
}

std::vector<ProfileRow> profile(const Grid1D& grid) {
  std::vector<ProfileRow> rows;
  rows.reserve(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) rows.push_back(profile_row(grid.center(j), grid.cells[j]));
  return rows;
}

double l2_relative(const std::vector<ProfileRow>& a, const std::vector<ProfileRow>& b,
                   const std::string& column) {
  if (a.size() != b.size()) throw std::invalid_argument("profiles have different lengths");
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double x = column_value(a[j], column), y = column_value(b[j], column);
    num += (x - y) * (x - y);
    den += y * y;
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

ScenarioOutcome run_scenario(const ScenarioConfig& c, std::ostream* log, const SnapshotSink& snapshot) {
  ScenarioOutcome out;
  const std::size_t every = c.snapshot_every;
  const std::size_t log_every = 1000;

  if (c.solver == SolverKind::nrxx) {
    const RunConfig rc = to_run_config(c);
    auto res = run(initial_grid(c), rc, [&](const Grid1D& g, double t, std::size_t step) {
      if (log && step % log_every == 0) *log << "step " << step << " t " << fmt(t) << std::endl;
      if (snapshot && every && step % every == 0) snapshot(profile(g), t, step);
    });
    out.rows = profile(res.grid);
    out.time = res.time;
    out.steps = res.steps;
    out.converged = res.converged;
    out.residuals = std::move(res.residuals);
    out.grid = std::move(res.grid);
  } else {
    const DvConfig dc = to_dv_config(c);
    const DvGrid vg = velocity_grid(c);
    const double dx = (c.y_hi - c.y_lo) / static_cast<double>(c.cells);
    auto res = dv_run(vg, initial_field(c, vg), dx, dc, c.t_end, c.dv_steady_tol, c.max_steps,
                      [&](const DvField& f, double t, std::size_t step) {
                        if (log && step % log_every == 0) *log << "step " << step << " t " << fmt(t) << std::endl;
                        if (snapshot && every && step % every == 0) snapshot(dv_profile(vg, f, c.y_lo, dx), t, step);
                      });
    out.rows = dv_profile(vg, res.field, c.y_lo, dx);
    out.time = res.time;
    out.steps = res.steps;
    out.converged = res.converged;
    out.residuals = std::move(res.residuals);
  }
  return out;
}

}  // namespace nrxx
