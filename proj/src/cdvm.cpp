#include "nrxx/cdvm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nrxx/collision.hpp"
#include "nrxx/parallel.hpp"

namespace nrxx {
namespace {

// Small dense solve with partial pivoting; a is n x n row-major.
template <std::size_t N>
std::array<double, N> solve(std::array<std::array<double, N>, N> a, std::array<double, N> b) {
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < N; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0) throw std::runtime_error("cdvm: singular moment system");
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < N; ++i) {
      const double m = a[i][k] / a[k][k];
      for (std::size_t j = k; j < N; ++j) a[i][j] -= m * a[k][j];
      b[i] -= m * b[k];
    }
  }
  std::array<double, N> x{};
  for (std::size_t k = N; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < N; ++j) s -= a[k][j] * x[j];
    x[k] = s / a[k][k];
  }
  return x;
}

struct MaxwellParams {
  double rho;
  Vec3 u;
  double theta;
};

// Per-axis Gaussian factors exp(-(xi - u_d)^2 / (2 theta)).
std::array<std::vector<double>, 3> axis_gaussians(const DvGrid& g, const Vec3& u, double theta) {
  std::array<std::vector<double>, 3> out;
  for (int d = 0; d < 3; ++d) {
    const auto& ax = g.axis(d);
    auto& v = out[static_cast<std::size_t>(d)];
    v.resize(ax.n);
    for (std::size_t i = 0; i < ax.n; ++i) {
      const double c = ax.nodes[i] - u[static_cast<std::size_t>(d)];
      v[i] = std::exp(-c * c / (2.0 * theta));
    }
  }
  return out;
}

double maxwell_prefactor(double rho, double theta) {
  return rho / std::pow(2.0 * std::numbers::pi * theta, 1.5);
}

// Quadrature (mass, momentum, energy) of a sampled Maxwellian, from 1-D sums.
std::array<double, 5> maxwell_conserved(const DvGrid& g, const MaxwellParams& p) {
  const auto gs = axis_gaussians(g, p.u, p.theta);
  std::array<std::array<double, 3>, 3> S{};  // S[d][k] = sum w xi^k g
  for (int d = 0; d < 3; ++d) {
    const auto& ax = g.axis(d);
    for (std::size_t i = 0; i < ax.n; ++i) {
      const double wg = ax.weights[i] * gs[static_cast<std::size_t>(d)][i];
      const double x = ax.nodes[i];
      S[static_cast<std::size_t>(d)][0] += wg;
      S[static_cast<std::size_t>(d)][1] += wg * x;
      S[static_cast<std::size_t>(d)][2] += wg * x * x;
    }
  }
  const double A = maxwell_prefactor(p.rho, p.theta);
  std::array<double, 5> m{};
  m[0] = A * S[0][0] * S[1][0] * S[2][0];
  for (std::size_t d = 0; d < 3; ++d) {
    double prod = A * S[d][1];
    double prod2 = A * S[d][2];
    for (std::size_t e = 0; e < 3; ++e)
      if (e != d) {
        prod *= S[e][0];
        prod2 *= S[e][0];
      }
    m[1 + d] = prod;
    m[4] += 0.5 * prod2;
  }
  return m;
}

// Maxwellian parameters whose sampled quadrature moments hit `target`.
MaxwellParams fit_maxwellian(const DvGrid& g, const DvMoments& target) {
  const std::array<double, 5> want{target.rho, target.rho * target.u[0], target.rho * target.u[1],
                                   target.rho * target.u[2], target.energy};
  MaxwellParams p{target.rho, target.u, target.theta};
  auto pack = [](const MaxwellParams& q) {
    return std::array<double, 5>{q.rho, q.u[0], q.u[1], q.u[2], q.theta};
  };
  auto unpack = [](const std::array<double, 5>& x) {
    return MaxwellParams{x[0], {x[1], x[2], x[3]}, x[4]};
  };
  const double scale = std::max(target.rho, std::abs(target.energy));
  for (int it = 0; it < 12; ++it) {
    const auto m = maxwell_conserved(g, p);
    std::array<double, 5> r{};
    double err = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
      r[k] = want[k] - m[k];
      err = std::max(err, std::abs(r[k]));
    }
    if (err <= 1e-15 * scale) break;
    std::array<std::array<double, 5>, 5> J{};
    const auto x = pack(p);
    for (std::size_t j = 0; j < 5; ++j) {
      auto xp = x;
      const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
      xp[j] += h;
      const auto mp = maxwell_conserved(g, unpack(xp));
      for (std::size_t k = 0; k < 5; ++k) J[k][j] = (mp[k] - m[k]) / h;
    }
    const auto dx = solve(J, r);
    auto xn = x;
    for (std::size_t k = 0; k < 5; ++k) xn[k] += dx[k];
    if (!(xn[0] > 0.0) || !(xn[4] > 0.0)) break;
    p = unpack(xn);
  }
  return p;
}

// Monomial c^k (k per axis) as a polynomial term.
struct Term {
  double coef;
  std::array<int, 3> k;
};
using Poly = std::vector<Term>;

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b)
      out.push_back({x.coef * y.coef, {x.k[0] + y.k[0], x.k[1] + y.k[1], x.k[2] + y.k[2]}});
  return out;
}

}  // namespace

DvAxis::DvAxis(double lo_, double hi_, std::size_t n_) : lo(lo_), hi(hi_), n(n_) {
  if (n < 2 || !(hi > lo)) throw std::invalid_argument("DvAxis: need n >= 2 and hi > lo");
  const double h = (hi - lo) / static_cast<double>(n - 1);
  nodes.resize(n);
  weights.assign(n, h);
  // written about the midpoint so that a symmetric axis is exactly symmetric
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < n; ++i)
    nodes[i] = mid + half * (2.0 * static_cast<double>(i) - static_cast<double>(n - 1)) / static_cast<double>(n - 1);
  weights.front() = weights.back() = 0.5 * h;
}

DvGrid::DvGrid(const DvAxis& x, const DvAxis& y, const DvAxis& z) : axes_{x, y, z} {
  if (std::abs(y.lo + y.hi) > 1e-12 * (y.hi - y.lo))
    throw std::invalid_argument("DvGrid: the y axis must be symmetric about 0");
  const std::size_t n = x.n * y.n * z.n;
  for (auto& v : xi_) v.resize(n);
  w_.resize(n);
  mirror_.resize(n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < y.n; ++k)
      for (std::size_t l = 0; l < z.n; ++l) {
        const std::size_t p = (i * y.n + k) * z.n + l;
        xi_[0][p] = x.nodes[i];
        xi_[1][p] = y.nodes[k];
        xi_[2][p] = z.nodes[l];
        w_[p] = x.weights[i] * y.weights[k] * z.weights[l];
        mirror_[p] = (i * y.n + (y.n - 1 - k)) * z.n + l;
      }
}

double DvGrid::max_abs(int d) const {
  const auto& a = axis(d);
  return std::max(std::abs(a.lo), std::abs(a.hi));
}

std::vector<double> DvGrid::maxwellian(double rho, const Vec3& u, double theta) const {
  if (!(rho > 0.0) || !(theta > 0.0)) throw std::invalid_argument("maxwellian: rho, theta must be positive");
  const auto gs = axis_gaussians(*this, u, theta);
  const double A = maxwell_prefactor(rho, theta);
  std::vector<double> f(size());
  const std::size_t ny = axes_[1].n, nz = axes_[2].n;
  for (std::size_t i = 0; i < axes_[0].n; ++i)
    for (std::size_t k = 0; k < ny; ++k)
      for (std::size_t l = 0; l < nz; ++l) f[(i * ny + k) * nz + l] = A * gs[0][i] * gs[1][k] * gs[2][l];
  return f;
}

DvMoments dv_moments(const DvGrid& g, const double* f) {
  DvMoments m;
  const std::size_t n = g.size();
  Vec3 mom{};
  for (std::size_t p = 0; p < n; ++p) {
    const double wf = g.weight(p) * f[p];
    m.rho += wf;
    const double x = g.xi(0, p), y = g.xi(1, p), z = g.xi(2, p);
    mom[0] += wf * x;
    mom[1] += wf * y;
    mom[2] += wf * z;
    m.energy += 0.5 * wf * (x * x + y * y + z * z);
  }
  if (!(m.rho > 0.0)) throw std::runtime_error("dv_moments: non-positive density");
  for (std::size_t d = 0; d < 3; ++d) m.u[d] = mom[d] / m.rho;

  Tensor3 P{};
  for (std::size_t p = 0; p < n; ++p) {
    const double wf = g.weight(p) * f[p];
    const std::array<double, 3> c{g.xi(0, p) - m.u[0], g.xi(1, p) - m.u[1], g.xi(2, p) - m.u[2]};
    const double c2 = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i; j < 3; ++j) P[i][j] += wf * c[i] * c[j];
      m.q[i] += 0.5 * wf * c[i] * c2;
    }
  }
  m.theta = (P[0][0] + P[1][1] + P[2][2]) / (3.0 * m.rho);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) {
      m.sigma[i][j] = P[i][j] - (i == j ? m.rho * m.theta : 0.0);
      m.sigma[j][i] = m.sigma[i][j];
    }
  return m;
}

ProfileRow dv_profile_row(double y, const DvMoments& m) {
  ProfileRow r;
  r.y = y;
  r.rho = m.rho;
  r.u = m.u;
  r.theta = m.theta;
  r.sigma11 = m.sigma[0][0];
  r.sigma12 = m.sigma[0][1];
  r.sigma22 = m.sigma[1][1];
  r.q1 = m.q[0];
  r.q2 = m.q[1];
  return r;
}

std::vector<double> shakhov_target(const DvGrid& g, const DvMoments& m, double prandtl) {
  const MaxwellParams p = fit_maxwellian(g, m);
  const auto gs = axis_gaussians(g, p.u, p.theta);
  const double A = maxwell_prefactor(p.rho, p.theta);

  // T[d][k] = sum_i w_i (xi_i - u_d)^k g_d(xi_i), k = 0..5
  std::array<std::array<double, 6>, 3> T{};
  for (int d = 0; d < 3; ++d) {
    const auto& ax = g.axis(d);
    const auto dd = static_cast<std::size_t>(d);
    for (std::size_t i = 0; i < ax.n; ++i) {
      const double c = ax.nodes[i] - m.u[dd];
      double pw = ax.weights[i] * gs[dd][i];
      for (std::size_t k = 0; k < 6; ++k) {
        T[dd][k] += pw;
        pw *= c;
      }
    }
  }
  auto integrate = [&](const Poly& poly) {
    double s = 0.0;
    for (const auto& t : poly)
      s += t.coef * T[0][static_cast<std::size_t>(t.k[0])] * T[1][static_cast<std::size_t>(t.k[1])] *
           T[2][static_cast<std::size_t>(t.k[2])];
    return A * s;
  };

  const double K = (1.0 - prandtl) / (5.0 * m.rho * m.theta * m.theta);
  Poly h;
  for (int d = 0; d < 3; ++d) {
    const double qd = m.q[static_cast<std::size_t>(d)];
    for (int e = 0; e < 3; ++e) {
      std::array<int, 3> k{0, 0, 0};
      k[static_cast<std::size_t>(d)] += 1;
      k[static_cast<std::size_t>(e)] += 2;
      h.push_back({K * qd / m.theta, k});
    }
    std::array<int, 3> k{0, 0, 0};
    k[static_cast<std::size_t>(d)] = 1;
    h.push_back({-5.0 * K * qd, k});
  }

  // Conserved test functions (1, c_1, c_2, c_3, |c|^2 / 2) and correction basis.
  const Poly one{{1.0, {0, 0, 0}}};
  const Poly c1{{1.0, {1, 0, 0}}}, c2{{1.0, {0, 1, 0}}}, c3{{1.0, {0, 0, 1}}};
  const Poly half_c2{{0.5, {2, 0, 0}}, {0.5, {0, 2, 0}}, {0.5, {0, 0, 2}}};
  const Poly full_c2{{1.0, {2, 0, 0}}, {1.0, {0, 2, 0}}, {1.0, {0, 0, 2}}};
  const std::array<const Poly*, 5> psi{&one, &c1, &c2, &c3, &half_c2};
  const std::array<const Poly*, 5> phi{&one, &c1, &c2, &c3, &full_c2};

  std::array<std::array<double, 5>, 5> mat{};
  std::array<double, 5> rhs{};
  for (std::size_t i = 0; i < 5; ++i) {
    rhs[i] = -integrate(multiply(h, *psi[i]));
    for (std::size_t j = 0; j < 5; ++j) mat[i][j] = integrate(multiply(*phi[j], *psi[i]));
  }
  const auto a = solve(mat, rhs);

  std::vector<double> fs(g.size());
  const std::size_t nx = g.axis(0).n, ny = g.axis(1).n, nz = g.axis(2).n;
  for (std::size_t i = 0; i < nx; ++i) {
    const double cx = g.axis(0).nodes[i] - m.u[0];
    for (std::size_t k = 0; k < ny; ++k) {
      const double cy = g.axis(1).nodes[k] - m.u[1];
      const double gxy = A * gs[0][i] * gs[1][k];
      for (std::size_t l = 0; l < nz; ++l) {
        const double cz = g.axis(2).nodes[l] - m.u[2];
        const double cc = cx * cx + cy * cy + cz * cz;
        const double cq = cx * m.q[0] + cy * m.q[1] + cz * m.q[2];
        const double poly = 1.0 + K * cq * (cc / m.theta - 5.0) + a[0] + a[1] * cx + a[2] * cy +
                            a[3] * cz + a[4] * cc;
        fs[(i * ny + k) * nz + l] = gxy * gs[2][l] * poly;
      }
    }
  }
  return fs;
}

void dv_collide(const DvGrid& g, double* f, double dt, double knudsen, double prandtl) {
  const DvMoments m = dv_moments(g, f);
  const double tau = relaxation_time(m.rho, m.theta, knudsen);
  const double nu = dt / tau;
  const auto fs = shakhov_target(g, m, prandtl);
  const double inv = 1.0 / (1.0 + nu);
  for (std::size_t p = 0; p < g.size(); ++p) f[p] = (f[p] + nu * fs[p]) * inv;
}

double dv_timestep(const DvGrid& g, double dx, double cfl) { return cfl * dx / g.max_abs(1); }

namespace {

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

// Distribution re-emitted by a wall, given the face values leaving the gas.
// Nodes moving into the wall are kept; the others are filled.
void reflect(const DvGrid& g, const WallSpec& wall, double* face) {
  const double sign = wall.side == WallSide::right ? 1.0 : -1.0;  // outward normal
  const auto mw = g.maxwellian(1.0, {wall.u_wall[0], 0.0, wall.u_wall[2]}, wall.theta_wall);
  double out_flux = 0.0, unit_flux = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p) {
    const double vn = sign * g.xi(1, p);
    if (vn > 0.0) out_flux += g.weight(p) * vn * face[p];
    else if (vn < 0.0) unit_flux -= g.weight(p) * vn * mw[p];
  }
  const double rho_w = out_flux / unit_flux;
  for (std::size_t p = 0; p < g.size(); ++p) {
    const double vn = sign * g.xi(1, p);
    if (vn < 0.0) face[p] = wall.chi * rho_w * mw[p] + (1.0 - wall.chi) * face[g.mirror_y(p)];
  }
}

}  // namespace

double dv_wall_mass_flux(const DvGrid& g, const DvField& field, const WallSpec& wall) {
  const std::size_t edge = wall.side == WallSide::right ? field.cells - 1 : 0;
  std::vector<double> face(field.cell(edge), field.cell(edge) + field.nodes);
  reflect(g, wall, face.data());
  double flux = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p) flux += g.weight(p) * g.xi(1, p) * face[p];
  return flux;
}

double dv_step(const DvGrid& g, DvField& field, double dx, double dt, const DvConfig& cfg) {
  const std::size_t n = field.cells;
  const std::size_t nodes = field.nodes;
  if (n == 0 || nodes != g.size()) throw std::invalid_argument("dv_step: field does not match grid");
  const double r = dt / dx;

  std::vector<DvMoments> before(n);
  parallel_for(n, cfg.threads, [&](std::size_t j) { before[j] = dv_moments(g, field.cell(j)); });

  // Face values: upwind with a minmod slope and the characteristic
  // correction (1 - |xi_2| dt/dx); boundary cells use zero slope.
  auto slope = [&](std::size_t j, std::size_t p) {
    if (cfg.limiter == Limiter::none || j == 0 || j + 1 == n) return 0.0;
    const double* f = field.values.data();
    const double c = f[j * nodes + p];
    return minmod(c - f[(j - 1) * nodes + p], f[(j + 1) * nodes + p] - c);
  };
  std::vector<double> faces((n + 1) * nodes);
  parallel_for(n + 1, cfg.threads, [&](std::size_t jf) {
    double* face = faces.data() + jf * nodes;
    for (std::size_t p = 0; p < nodes; ++p) {
      const double v = g.xi(1, p);
      const double corr = 0.5 * (1.0 - std::abs(v) * r);
      if (v > 0.0) {
        const std::size_t j = jf == 0 ? 0 : jf - 1;
        face[p] = field.values[j * nodes + p] + (jf == 0 ? 0.0 : corr * slope(j, p));
      } else {
        const std::size_t j = jf == n ? n - 1 : jf;
        face[p] = field.values[j * nodes + p] - (jf == n ? 0.0 : corr * slope(j, p));
      }
    }
    if (jf == 0 && cfg.left.kind == BoundaryKind::wall) {
      WallSpec w = cfg.left.wall;
      w.side = WallSide::left;
      reflect(g, w, face);
    }
    if (jf == n && cfg.right.kind == BoundaryKind::wall) {
      WallSpec w = cfg.right.wall;
      w.side = WallSide::right;
      reflect(g, w, face);
    }
  });

  std::vector<double> residual(n, 0.0);
  parallel_for(n, cfg.threads, [&](std::size_t j) {
    double* f = field.cell(j);
    const double* lo = faces.data() + j * nodes;
    const double* hi = lo + nodes;
    for (std::size_t p = 0; p < nodes; ++p) f[p] -= r * g.xi(1, p) * (hi[p] - lo[p]);
    if (cfg.collisions) dv_collide(g, f, dt, cfg.knudsen, cfg.prandtl);
    const DvMoments a = dv_moments(g, f);
    const DvMoments& b = before[j];
    double res = std::abs(a.rho - b.rho) / b.rho;
    res = std::max(res, std::abs(a.theta - b.theta) / b.theta);
    // velocity changes are measured against the thermal speed
    for (std::size_t d = 0; d < 3; ++d)
      res = std::max(res, std::abs(a.u[d] - b.u[d]) / std::sqrt(b.theta));
    residual[j] = res / dt;
  });
  return *std::max_element(residual.begin(), residual.end());
}

DvRunResult dv_run(const DvGrid& g, DvField field, double dx, const DvConfig& cfg, double t_end,
                   double steady_tol, std::size_t max_steps,
                   const std::function<void(const DvField&, double, std::size_t)>& observer) {
  DvRunResult res;
  const bool steady = !(t_end > 0.0);
  const double dt_cfl = dv_timestep(g, dx, cfg.cfl);
  while (res.steps < max_steps) {
    double dt = dt_cfl;
    if (!steady) {
      const double remaining = t_end - res.time;
      if (remaining <= 1e-14 * std::max(1.0, t_end)) break;
      dt = std::min(dt, remaining);
    }
    const double resid = dv_step(g, field, dx, dt, cfg);
    res.time += dt;
    ++res.steps;
    res.residuals.push_back(resid);
    if (observer) observer(field, res.time, res.steps);
    if (steady && resid < steady_tol) {
      res.converged = true;
      break;
    }
  }
  res.field = std::move(field);
  return res;
}

std::vector<ProfileRow> dv_profile(const DvGrid& g, const DvField& field, double y_lo, double dx) {
  std::vector<ProfileRow> rows;
  rows.reserve(field.cells);
  for (std::size_t j = 0; j < field.cells; ++j)
    rows.push_back(dv_profile_row(y_lo + (static_cast<double>(j) + 0.5) * dx, dv_moments(g, field.cell(j))));
  return rows;
}

}  // namespace nrxx
