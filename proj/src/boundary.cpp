#include "nrxx/boundary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nrxx {
namespace {

constexpr double kInvSqrt2Pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;

// sqrt(theta)^k for k in [-kmax, kmax], indexed by k + kmax.
std::vector<double> sqrt_powers(double theta, int kmax) {
  std::vector<double> p(static_cast<std::size_t>(2 * kmax + 1));
  const double r = std::sqrt(theta);
  p[static_cast<std::size_t>(kmax)] = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    p[static_cast<std::size_t>(kmax + k)] = p[static_cast<std::size_t>(kmax + k - 1)] * r;
    p[static_cast<std::size_t>(kmax - k)] = p[static_cast<std::size_t>(kmax - k + 1)] / r;
  }
  return p;
}

}  // namespace

HalfSpaceTable::HalfSpaceTable(int max_index) : n_(max_index + 1) {
  if (max_index < 0) throw std::invalid_argument("HalfSpaceTable: negative size");
  const HermiteTable he0(max_index);
  std::vector<double> inv_factorial(static_cast<std::size_t>(n_), 1.0);
  for (int m = 1; m < n_; ++m)
    inv_factorial[static_cast<std::size_t>(m)] = inv_factorial[static_cast<std::size_t>(m - 1)] / m;
  auto K = [&](int m, int n) {
    return kInvSqrt2Pi * inv_factorial[static_cast<std::size_t>(m)] * he0.at_zero(m - 1) *
           he0.at_zero(n);
  };

  values_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0.0);
  auto at = [&](int m, int n) -> double& {
    return values_[static_cast<std::size_t>(m) * static_cast<std::size_t>(n_) +
                   static_cast<std::size_t>(n)];
  };
  for (int m = 0; m < n_; ++m) {
    for (int n = 0; n < n_; ++n) {
      if (m == 0 && n == 0)
        at(m, n) = 0.5;
      else if (m == 0)
        at(m, n) = K(1, n - 1);
      else if (n == 0)
        at(m, n) = K(m, 0);
      else
        at(m, n) = K(m, n) + at(m - 1, n - 1) * n / m;
    }
  }
}

const HalfSpaceTable& HalfSpaceTable::shared() {
  static const HalfSpaceTable table(kMaxOrder + 1);
  return table;
}

HalfSpaceTable s_table(int M) { return HalfSpaceTable(M + 1); }

double half_space_integral(const MultiIndex& alpha, const MultiIndex& beta, double theta) {
  if (!alpha.valid() || !beta.valid()) return 0.0;
  if (alpha.a1 != beta.a1 || alpha.a3 != beta.a3) return 0.0;
  const double s = HalfSpaceTable::shared()(alpha.a2, beta.a2);
  if (s == 0.0) return 0.0;
  return s * std::pow(std::sqrt(theta), alpha.a2 - beta.a2);
}

std::vector<double> half_space_cutoff(const MomentState& s) {
  const HalfSpaceTable& S = HalfSpaceTable::shared();
  const int top = s.M + 1;
  const auto pw = sqrt_powers(s.theta, top);
  std::vector<double> q(moment_count(top), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const MultiIndex& a = index_at(i);
    const int room = top - a.a1 - a.a3;
    double sum = 0.0;
    for (int b = 0; b <= room; ++b) {
      const int diff = a.a2 - b;
      if (diff != 0 && diff % 2 == 0) continue;
      sum += S(a.a2, b) * pw[static_cast<std::size_t>(top + diff)] * s[MultiIndex{a.a1, b, a.a3}];
    }
    q[i] = sum;
  }
  return q;
}

double wall_density(const MomentState& s, const WallSpec& wall) {
  if (!(wall.theta_wall > 0.0)) throw std::invalid_argument("wall_density: wall temperature must be positive");
  const HalfSpaceTable& S = HalfSpaceTable::shared();
  const auto pw = sqrt_powers(s.theta, s.M + 1);
  double sum = 0.0;
  for (int k = 0; 2 * k <= s.M + 1; ++k)
    sum += S(1, 2 * k) * pw[static_cast<std::size_t>(s.M + 1 + 1 - 2 * k)] * s[unit_index(1, 2 * k)];
  return std::sqrt(2.0 * std::numbers::pi / wall.theta_wall) * sum;
}

std::vector<double> full_line_moments(int s_max, double theta, double theta_wall, double x) {
  std::vector<double> J(static_cast<std::size_t>(s_max) + 1, 0.0);
  const double dt = theta_wall - theta;
  J[0] = 1.0;
  for (int s = 1; s <= s_max; ++s) {
    const double jm2 = s >= 2 ? J[static_cast<std::size_t>(s - 2)] : 0.0;
    J[static_cast<std::size_t>(s)] = (dt * jm2 + x * J[static_cast<std::size_t>(s - 1)]) / s;
  }
  return J;
}

std::vector<double> half_line_moments(int s_max, double theta, double theta_wall, double x) {
  std::vector<double> J(static_cast<std::size_t>(s_max) + 1, 0.0);
  std::vector<double> H(static_cast<std::size_t>(s_max) + 1, 0.0);
  const double dt = theta_wall - theta;
  J[0] = 0.5 * std::erfc(x / std::sqrt(2.0 * theta_wall));
  if (s_max >= 1)
    H[1] = std::sqrt(theta_wall / (2.0 * std::numbers::pi)) * std::exp(-x * x / (2.0 * theta_wall));
  for (int s = 2; s <= s_max; ++s)
    H[static_cast<std::size_t>(s)] =
        -static_cast<double>(s - 2) / (s * (s - 1)) * theta * H[static_cast<std::size_t>(s - 2)];
  for (int s = 1; s <= s_max; ++s) {
    const double jm2 = s >= 2 ? J[static_cast<std::size_t>(s - 2)] : 0.0;
    J[static_cast<std::size_t>(s)] =
        (dt * jm2 + x * J[static_cast<std::size_t>(s - 1)]) / s - H[static_cast<std::size_t>(s)];
  }
  return J;
}

std::vector<double> half_line_moments_at_wall(int s_max, double theta, double theta_wall) {
  return half_line_moments(s_max, theta, theta_wall, 0.0);
}

std::vector<double> half_maxwellian_coeffs(const WallSpec& wall, const MomentState& s,
                                           double rho_wall) {
  const int top = s.M + 1;
  const auto J1 = full_line_moments(top, s.theta, wall.theta_wall, wall.u_wall[0] - s.u[0]);
  const auto J2 = half_line_moments_at_wall(top, s.theta, wall.theta_wall);
  const auto J3 = full_line_moments(top, s.theta, wall.theta_wall, wall.u_wall[2] - s.u[2]);
  std::vector<double> p(moment_count(top));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const MultiIndex& a = index_at(i);
    p[i] = rho_wall * J1[static_cast<std::size_t>(a.a1)] * J2[static_cast<std::size_t>(a.a2)] *
           J3[static_cast<std::size_t>(a.a3)];
  }
  return p;
}

MomentState mirror(const MomentState& s) {
  MomentState r = s;
  r.u[1] = -s.u[1];
  for (std::size_t i = 0; i < r.f.size(); ++i)
    if (index_at(i).a2 % 2 != 0) r.f[i] = -r.f[i];
  return r;
}

WallSpec mirror(const WallSpec& wall) {
  WallSpec w = wall;
  w.u_wall[1] = -wall.u_wall[1];
  w.side = wall.side == WallSide::left ? WallSide::right : WallSide::left;
  return w;
}

MomentState apply_wall_bc(const MomentState& s, const WallSpec& wall, OpCounter* ops) {
  if (!(wall.chi >= 0.0 && wall.chi <= 1.0))
    throw std::invalid_argument("apply_wall_bc: accommodation coefficient must lie in [0, 1]");
  if (!(wall.theta_wall > 0.0)) throw std::invalid_argument("apply_wall_bc: wall temperature must be positive");
  if (wall.side == WallSide::left) return mirror(apply_wall_bc(mirror(s), mirror(wall), ops));

  const HalfSpaceTable& S = HalfSpaceTable::shared();
  const int top = s.M + 1;
  const auto pw = sqrt_powers(s.theta, top);

  MomentState b = s;
  b.u[1] = wall.u_wall[1];

  const double rho_w = wall_density(s, wall);
  const auto p = half_maxwellian_coeffs(wall, s, rho_w);
  const double factor = 2.0 * wall.chi / (2.0 - wall.chi);
  std::size_t count = static_cast<std::size_t>(top / 2 + 1) + p.size();

  for (std::size_t i = 0; i < b.f.size(); ++i) {
    const MultiIndex& a = index_at(i);
    if (a.a2 % 2 == 0) continue;
    double sum = p[i];
    for (int k = 0; 2 * k <= top - a.a1 - a.a3; ++k) {
      sum += S(a.a2, 2 * k) * pw[static_cast<std::size_t>(top + a.a2 - 2 * k)] *
             s[MultiIndex{a.a1, 2 * k, a.a3}];
      ++count;
    }
    b.f[i] = factor * sum;
  }
  if (ops != nullptr) ops->products += count;
  return b;
}

MomentState ghost_state(const MomentState& s, const WallSpec& wall) {
  const MomentState b = apply_wall_bc(s, wall);
  MomentState g = s;
  for (std::size_t d = 0; d < 3; ++d) g.u[d] = 2.0 * b.u[d] - s.u[d];
  for (std::size_t i = 0; i < g.f.size(); ++i) g.f[i] = 2.0 * b.f[i] - s.f[i];
  return g;
}

}  // namespace nrxx
