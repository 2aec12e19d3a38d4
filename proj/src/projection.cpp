#include "nrxx/projection.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace nrxx {
namespace {

// For every beta with |beta| <= K and every axis d, the flat positions of
// beta - k e_d for k = 0..beta_d. Built once per order.
struct ShiftPlan {
  std::array<std::vector<std::size_t>, 3> start;  // size count + 1
  std::array<std::vector<std::size_t>, 3> source;

  explicit ShiftPlan(int order) {
    const std::size_t n = moment_count(order);
    for (int d = 0; d < 3; ++d) {
      auto& st = start[static_cast<std::size_t>(d)];
      auto& src = source[static_cast<std::size_t>(d)];
      st.reserve(n + 1);
      for (std::size_t i = 0; i < n; ++i) {
        st.push_back(src.size());
        const MultiIndex& b = index_at(i);
        for (int k = 0; k <= b[d]; ++k) src.push_back(index_of(b.shifted(d, -k)));
      }
      st.push_back(src.size());
    }
  }

  static const ShiftPlan& get(int order) {
    static std::array<std::unique_ptr<ShiftPlan>, kMaxOrder + 1> plans;
    static std::array<std::once_flag, kMaxOrder + 1> flags;
    const auto k = static_cast<std::size_t>(order);
    std::call_once(flags[k], [&] { plans[k] = std::make_unique<ShiftPlan>(order); });
    return *plans[k];
  }
};

}  // namespace

ShiftKernel shift_kernel(const Vec3& u_from, double theta_from, const Vec3& u_to,
                         double theta_to, int max_order) {
  ShiftKernel kernel;
  const double dtheta = theta_from - theta_to;
  for (int d = 0; d < 3; ++d) {
    auto& h = kernel.h[static_cast<std::size_t>(d)];
    h.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
    h[0] = 1.0;
    const double du = u_from[static_cast<std::size_t>(d)] - u_to[static_cast<std::size_t>(d)];
    for (int n = 1; n <= max_order; ++n) {
      const double hm2 = n >= 2 ? h[static_cast<std::size_t>(n - 2)] : 0.0;
      h[static_cast<std::size_t>(n)] = (du * h[static_cast<std::size_t>(n - 1)] + dtheta * hm2) / n;
    }
  }
  return kernel;
}

void project_coefficients(std::span<const double> in, int in_order, const Vec3& u_from,
                          double theta_from, const Vec3& u_to, double theta_to,
                          std::span<double> out, int out_order) {
  if (!(theta_to > 0.0)) throw std::invalid_argument("project: target temperature must be positive");
  if (out_order < 0 || out_order > kMaxOrder) throw std::invalid_argument("project: bad order");
  const std::size_t n_out = moment_count(out_order);
  if (out.size() < n_out) throw std::invalid_argument("project: output span too small");

  const std::size_t n_copy = std::min(moment_count(in_order), n_out);
  if (out.data() != in.data()) {
    std::copy_n(in.begin(), n_copy, out.begin());
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(n_copy),
              out.begin() + static_cast<std::ptrdiff_t>(n_out), 0.0);
  } else {
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(n_copy),
              out.begin() + static_cast<std::ptrdiff_t>(n_out), 0.0);
  }
  if (u_from == u_to && theta_from == theta_to) return;

  const ShiftKernel kernel = shift_kernel(u_from, theta_from, u_to, theta_to, out_order);
  const ShiftPlan& plan = ShiftPlan::get(out_order);
  // One axis at a time, in place: beta - k e_d precedes beta in graded order,
  // so sweeping backwards reads only entries not yet overwritten.
  for (std::size_t d = 0; d < 3; ++d) {
    const auto& h = kernel.h[d];
    if (std::all_of(h.begin() + 1, h.end(), [](double x) { return x == 0.0; })) continue;
    const auto& st = plan.start[d];
    const auto& src = plan.source[d];
    for (std::size_t i = n_out; i-- > 0;) {
      double sum = 0.0;
      const std::size_t b = st[i];
      const std::size_t e = st[i + 1];
      for (std::size_t p = b; p < e; ++p) sum += out[src[p]] * h[p - b];
      out[i] = sum;
    }
  }
}

MomentState project(const MomentState& s, const Vec3& u_new, double theta_new) {
  MomentState r(s.M);
  r.u = u_new;
  r.theta = theta_new;
  project_coefficients(s.f, s.M + 1, s.u, s.theta, u_new, theta_new, r.f, s.M + 1);
  return r;
}

}  // namespace nrxx
