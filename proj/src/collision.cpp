#include "nrxx/collision.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nrxx {

double relaxation_time(double rho, double theta, double kn) {
  if (!(rho > 0.0) || !(theta > 0.0) || !(kn > 0.0))
    throw std::invalid_argument("relaxation_time: rho, theta and Kn must be positive");
  return 5.0 / 16.0 * std::sqrt(2.0 * std::numbers::pi / theta) * kn / rho;
}

void collide(MomentState& s, const CollisionParams& p) {
  if (!(p.tau > 0.0)) throw std::invalid_argument("collide: tau must be positive");
  if (p.dt < 0.0) throw std::invalid_argument("collide: negative time step");
  const double decay = std::exp(-p.dt / p.tau);
  const double decay_pr = std::exp(-p.prandtl * p.dt / p.tau);

  const Vec3 q0 = heat_flux(s);
  std::array<double, 9> coupled{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      coupled[static_cast<std::size_t>(3 * i + j)] = s[unit_index(i).shifted(j, 2)];

  const std::size_t first = moment_count(1);
  const std::size_t n = s.evolved_size();
  for (std::size_t k = first; k < n; ++k) s.f[k] *= decay;

  for (int i = 0; i < 3; ++i) {
    const double q5 = q0[static_cast<std::size_t>(i)] / 5.0;
    for (int j = 0; j < 3; ++j) {
      const double f0 = coupled[static_cast<std::size_t>(3 * i + j)];
      s[unit_index(i).shifted(j, 2)] = q5 * decay_pr - (q5 - f0) * decay;
    }
  }
}

}  // namespace nrxx
