#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nrxx/hermite.hpp"
#include "nrxx/multi_index.hpp"

namespace nrxx {

using Tensor3 = std::array<std::array<double, 3>, 3>;

/// Hermite-coefficient representation of the distribution in one cell.
///
/// Coefficients are stored densely in graded order for |alpha| <= M + 1.
/// The first moment_count(M) entries are evolved; the |alpha| = M + 1 block
/// is filled by the regularized closure and never advected. f_0 is the
/// density.
struct MomentState {
  int M = 3;
  Vec3 u{0.0, 0.0, 0.0};
  double theta = 1.0;
  std::vector<double> f;

  MomentState() : f(moment_count(M + 1), 0.0) {}
  explicit MomentState(int order) : M(order), f(moment_count(order + 1), 0.0) {}

  double rho() const { return f[0]; }
  void set_rho(double r) { f[0] = r; }

  /// f_alpha, or zero when alpha has a negative component or exceeds M + 1.
  double at(const MultiIndex& a) const {
    if (!a.valid() || a.order() > M + 1) return 0.0;
    return f[index_of(a)];
  }
  double& operator[](const MultiIndex& a) { return f[index_of(a)]; }
  double operator[](const MultiIndex& a) const { return f[index_of(a)]; }

  std::size_t evolved_size() const { return moment_count(M); }
  std::span<double> evolved() { return {f.data(), evolved_size()}; }
  std::span<const double> evolved() const { return {f.data(), evolved_size()}; }
  std::span<double> closure_block() { return std::span<double>(f).subspan(evolved_size()); }
  std::span<const double> closure_block() const {
    return std::span<const double>(f).subspan(evolved_size());
  }
};

/// Collision-model parameters shared by every cell.
struct GasModel {
  double prandtl = 2.0 / 3.0;
  double knudsen = 0.1;
};

/// Local Maxwellian: f_0 = rho, every other coefficient zero.
/// Throws std::invalid_argument for rho <= 0, theta <= 0 or M < 3.
MomentState maxwellian(double rho, const Vec3& u, double theta, int M);

/// Pressure deviator: sigma_ij = f_{e_i+e_j}, sigma_ii = 2 f_{2e_i}.
Tensor3 stress(const MomentState& s);

/// Heat flux q_i = 2 f_{3e_i} + sum_d f_{2e_d+e_i}.
Vec3 heat_flux(const MomentState& s);

/// Checks f_0 = rho > 0, theta > 0, f_{e_i} = 0 and sum_d f_{2e_d} = 0 to
/// 1e-12 (scaled by rho). Returns a description of the first violation.
std::optional<std::string> validate(const MomentState& s, double tol = 1e-12);

/// Pointwise evaluation of the represented distribution at velocity xi.
inline double expansion_eval(const MomentState& s, const Vec3& xi) {
  return expansion_eval(s.f, s.M + 1, s.u, s.theta, xi);
}

/// One row of the profile CSV: y, rho, u1, u2, u3, theta, sigma11, sigma12,
/// sigma22, q1, q2.
struct ProfileRow {
  double y = 0.0;
  double rho = 0.0;
  Vec3 u{};
  double theta = 0.0;
  double sigma11 = 0.0;
  double sigma12 = 0.0;
  double sigma22 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
};

ProfileRow profile_row(double y, const MomentState& s);

}  // namespace nrxx
