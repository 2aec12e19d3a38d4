#pragma once

#include <cstddef>
#include <vector>

#include "nrxx/hermite.hpp"
#include "nrxx/moments.hpp"

namespace nrxx {

/// Which end of the 1-D domain a wall sits on. The wall-normal is the y axis;
/// all derivations are done for the right (upper) wall with outer normal +y,
/// and the left wall is handled in the reflected frame.
enum class WallSide { left, right };

struct WallSpec {
  double chi = 1.0;           // accommodation coefficient in [0, 1]
  Vec3 u_wall{0.0, 0.0, 0.0}; // u_wall[1] becomes the normal velocity of the boundary state
  double theta_wall = 1.0;
  WallSide side = WallSide::right;
};

/// Half-space integrals
///   S(m, n) = (2 pi)^{-1/2} / m! * int_0^inf He_m He_n exp(-x^2/2) dx
/// for 0 <= m, n <= max_index, filled by the recursion
///   S(0,0) = 1/2, S(0,n) = K(1,n-1), S(m,0) = K(m,0),
///   S(m,n) = K(m,n) + S(m-1,n-1) n/m,
/// with K(m,n) = (2 pi)^{-1/2} / m! He_{m-1}(0) He_n(0).
class HalfSpaceTable {
 public:
  explicit HalfSpaceTable(int max_index);

  int max_index() const { return n_ - 1; }
  double operator()(int m, int n) const {
    return values_[static_cast<std::size_t>(m) * static_cast<std::size_t>(n_) +
                   static_cast<std::size_t>(n)];
  }

  /// Process-wide table large enough for any supported moment order.
  static const HalfSpaceTable& shared();

 private:
  int n_;
  std::vector<double> values_;
};

/// S(m, n) for 0 <= m, n <= M + 1.
HalfSpaceTable s_table(int M);

/// I_{alpha,beta}(theta) = S(alpha_2, beta_2) theta^{(alpha_2-beta_2)/2}
/// delta_{alpha_1 beta_1} delta_{alpha_3 beta_3}.
double half_space_integral(const MultiIndex& alpha, const MultiIndex& beta, double theta);

/// Coefficients (|alpha| <= M + 1, same center as the state) of the
/// distribution restricted to v_2 >= 0.
std::vector<double> half_space_cutoff(const MomentState& s);

/// Density of the re-emitted wall Maxwellian making the wall mass flux vanish:
///   rho^W = sqrt(2 pi / theta^W) sum_k S(1, 2k) theta^{1/2-k} f_{2k e_2}.
double wall_density(const MomentState& s, const WallSpec& wall);

/// J_s(x), s = 0..s_max: full-line moments of the wall Maxwellian,
///   J_s = ((theta^W - theta) J_{s-2} + x J_{s-1}) / s,  J_{-1} = 0, J_0 = 1.
std::vector<double> full_line_moments(int s_max, double theta, double theta_wall, double x);

/// J~_s(x), s = 0..s_max: the same moments over y <= 0,
///   J~_s = ((theta^W - theta) J~_{s-2} + x J~_{s-1}) / s - H_s,
///   H_s = -(s-2)/(s(s-1)) theta H_{s-2},
///   J~_0 = erfc(x / sqrt(2 theta^W)) / 2,  H_1 = sqrt(theta^W / 2 pi) exp(-x^2 / 2 theta^W).
std::vector<double> half_line_moments(int s_max, double theta, double theta_wall, double x);

/// J^_s = J~_s(0), the form used once u_2 = u_2^W.
std::vector<double> half_line_moments_at_wall(int s_max, double theta, double theta_wall);

/// Coefficients p_alpha (|alpha| <= M + 1, center (u, theta) of the state) of
/// the incoming half of the wall Maxwellian:
///   p_alpha = rho^W J_{alpha_1}(u_1^W - u_1) J^_{alpha_2} J_{alpha_3}(u_3^W - u_3).
/// Expects the right-wall frame.
std::vector<double> half_maxwellian_coeffs(const WallSpec& wall, const MomentState& s,
                                           double rho_wall);

/// Counts coefficient products performed while assembling f^b.
struct OpCounter {
  std::size_t products = 0;
};

/// The boundary map F^b: center (u_1, u_2^W, u_3) and theta; coefficients with
/// even alpha_2 are copied, odd alpha_2 are set to
///   2 chi/(2 - chi) [ p_alpha + sum_k S(alpha_2, 2k) theta^{alpha_2/2-k} f_{alpha+(2k-alpha_2)e_2} ].
/// Throws std::invalid_argument for chi outside [0, 1].
MomentState apply_wall_bc(const MomentState& s, const WallSpec& wall, OpCounter* ops = nullptr);

/// Ghost-cell state: coefficients 2 f^b - f about (2 u^b - u, theta).
MomentState ghost_state(const MomentState& s, const WallSpec& wall);

/// Reflection y -> -y: u_2 negated, f_alpha multiplied by (-1)^{alpha_2}.
MomentState mirror(const MomentState& s);

/// The wall seen from the reflected frame.
WallSpec mirror(const WallSpec& wall);

}  // namespace nrxx
