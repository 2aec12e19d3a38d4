#include "nrxx/moments.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nrxx {

MomentState maxwellian(double rho, const Vec3& u, double theta, int M) {
  if (!(rho > 0.0)) throw std::invalid_argument("maxwellian: density must be positive");
  if (!(theta > 0.0)) throw std::invalid_argument("maxwellian: temperature must be positive");
  if (M < 3) throw std::invalid_argument("maxwellian: moment order M must be >= 3");
  if (M + 1 > kMaxOrder) throw std::invalid_argument("maxwellian: moment order too large");
  MomentState s(M);
  s.u = u;
  s.theta = theta;
  s.set_rho(rho);
  return s;
}

Tensor3 stress(const MomentState& s) {
  Tensor3 sigma{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      sigma[i][j] = i == j ? 2.0 * s.at(unit_index(i, 2))
                           : s.at(unit_index(i).shifted(j, 1));
    }
  }
  return sigma;
}

Vec3 heat_flux(const MomentState& s) {
  Vec3 q{};
  for (int i = 0; i < 3; ++i) {
    double sum = 2.0 * s.at(unit_index(i, 3));
    for (int d = 0; d < 3; ++d) sum += s.at(unit_index(d, 2).shifted(i, 1));
    q[i] = sum;
  }
  return q;
}

std::optional<std::string> validate(const MomentState& s, double tol) {
  std::ostringstream msg;
  if (s.M < 3) return "moment order M < 3";
  if (s.f.size() != moment_count(s.M + 1)) return "coefficient storage does not match M";
  if (!(s.rho() > 0.0) || !std::isfinite(s.rho())) {
    msg << "non-positive density f_0 = " << s.rho();
    return msg.str();
  }
  if (!(s.theta > 0.0) || !std::isfinite(s.theta)) {
    msg << "non-positive temperature theta = " << s.theta;
    return msg.str();
  }
  const double scale = tol * std::max(1.0, s.rho());
  for (int i = 0; i < 3; ++i) {
    const double v = s[unit_index(i)];
    if (std::abs(v) > scale) {
      msg << "f_{e_i} != 0 (i = " << i + 1 << ", value " << v << ")";
      return msg.str();
    }
  }
  const double trace = s[unit_index(0, 2)] + s[unit_index(1, 2)] + s[unit_index(2, 2)];
  if (std::abs(trace) > scale * std::max(1.0, s.theta)) {
    msg << "sum_d f_{2e_d} != 0 (value " << trace << ")";
    return msg.str();
  }
  return std::nullopt;
}

ProfileRow profile_row(double y, const MomentState& s) {
  const Tensor3 sigma = stress(s);
  const Vec3 q = heat_flux(s);
  return {y, s.rho(), s.u, s.theta, sigma[0][0], sigma[0][1], sigma[1][1], q[0], q[1]};
}

}  // namespace nrxx
