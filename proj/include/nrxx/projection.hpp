#pragma once

#include <span>
#include <vector>

#include "nrxx/moments.hpp"

namespace nrxx {

/// Per-axis coefficients h_0..h_K of the re-expansion kernel for a change of
/// center (u, theta) -> (u', theta'):
///   h_0 = 1,  n h_n = (u_d - u'_d) h_{n-1} + (theta - theta') h_{n-2}.
/// They are the Taylor coefficients of exp((u_d - u'_d) s + (theta - theta') s^2 / 2).
struct ShiftKernel {
  std::array<std::vector<double>, 3> h;
};

ShiftKernel shift_kernel(const Vec3& u_from, double theta_from, const Vec3& u_to,
                         double theta_to, int max_order);

/// Re-expands the coefficients `in` (orders <= in_order, basis centered at
/// (u_from, theta_from)) about (u_to, theta_to), writing orders <= out_order
/// into `out`:  f'_beta = sum_{gamma + delta = beta} f_gamma prod_d h_{delta_d}.
/// Orders above out_order are truncated. `out` may alias `in` only if the
/// spans are identical.
void project_coefficients(std::span<const double> in, int in_order, const Vec3& u_from,
                          double theta_from, const Vec3& u_to, double theta_to,
                          std::span<double> out, int out_order);

/// Same state re-expanded about (u_new, theta_new), truncated at order M + 1.
/// f'_0 = f_0 exactly. Throws std::invalid_argument for theta_new <= 0.
MomentState project(const MomentState& s, const Vec3& u_new, double theta_new);

}  // namespace nrxx
