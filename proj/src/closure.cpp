#include "nrxx/closure.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace nrxx {
namespace {

constexpr long kAbsent = -1;

// Flat positions of the coefficients read by the closure for every
// |alpha| = M + 1, kAbsent where the index has a negative component.
struct ClosurePlan {
  struct Row {
    long m_e2;                    // alpha - e2
    std::array<long, 3> m_2ed;    // alpha - 2e_d
    std::array<long, 3> m_ed_e2;  // alpha - e_d - e2
    std::array<long, 3> m_2ed_e2; // alpha - 2e_d - e2
    std::array<long, 3> m_2ed_p2; // alpha - 2e_d + e2
    int a2;
  };
  std::vector<Row> rows;

  explicit ClosurePlan(int M) {
    auto pos = [](const MultiIndex& a) {
      return a.valid() ? static_cast<long>(index_of(a)) : kAbsent;
    };
    for (std::size_t i = moment_count(M); i < moment_count(M + 1); ++i) {
      const MultiIndex& a = index_at(i);
      Row r{};
      r.m_e2 = pos(a.shifted(1, -1));
      for (int d = 0; d < 3; ++d) {
        const auto k = static_cast<std::size_t>(d);
        const MultiIndex a_m_2ed = a.shifted(d, -2);
        r.m_2ed[k] = pos(a_m_2ed);
        r.m_ed_e2[k] = pos(a.shifted(d, -1).shifted(1, -1));
        r.m_2ed_e2[k] = pos(a_m_2ed.shifted(1, -1));
        r.m_2ed_p2[k] = pos(a_m_2ed.shifted(1, 1));
      }
      r.a2 = a.a2;
      rows.push_back(r);
    }
  }

  static const ClosurePlan& get(int M) {
    static std::array<std::unique_ptr<ClosurePlan>, kMaxOrder> plans;
    static std::array<std::once_flag, kMaxOrder> flags;
    if (M < 0 || M >= kMaxOrder) throw std::invalid_argument("close: unsupported order");
    const auto k = static_cast<std::size_t>(M);
    std::call_once(flags[k], [&] { plans[k] = std::make_unique<ClosurePlan>(M); });
    return *plans[k];
  }
};

}  // namespace

std::vector<double> close(const GradientStencil& st, double tau) {
  const MomentState& c = st.center;
  const int M = c.M;
  if (st.left.M != M || st.right.M != M)
    throw std::invalid_argument("close: stencil states have different M");
  if (!(st.span > 0.0)) throw std::invalid_argument("close: stencil span must be positive");

  const ClosurePlan& plan = ClosurePlan::get(M);
  std::vector<double> out(plan.rows.size(), 0.0);
  if (tau == 0.0) return out;

  const double inv = 1.0 / st.span;
  const double rho = c.rho();
  const double theta = c.theta;
  const double d_rho_theta = (st.right.rho() * st.right.theta - st.left.rho() * st.left.theta) * inv;
  const double d_theta = (st.right.theta - st.left.theta) * inv;
  Vec3 du{};
  for (std::size_t d = 0; d < 3; ++d) du[d] = (st.right.u[d] - st.left.u[d]) * inv;

  const double* fc = c.f.data();
  const double* fl = st.left.f.data();
  const double* fr = st.right.f.data();
  auto val = [fc](long p) { return p == kAbsent ? 0.0 : fc[p]; };

  for (std::size_t i = 0; i < plan.rows.size(); ++i) {
    const auto& r = plan.rows[i];
    const double grad = r.m_e2 == kAbsent ? 0.0 : (fr[r.m_e2] - fl[r.m_e2]) * inv;
    double trace_sum = 0.0;
    double bracket = theta * grad;
    for (std::size_t d = 0; d < 3; ++d) {
      trace_sum += val(r.m_2ed[d]);
      bracket += du[d] * theta * val(r.m_ed_e2[d]);
      bracket += 0.5 * d_theta * (theta * val(r.m_2ed_e2[d]) + (r.a2 + 1) * val(r.m_2ed_p2[d]));
    }
    const double value = d_rho_theta / rho * val(r.m_e2) + theta / 3.0 * du[1] * trace_sum - bracket;
    out[i] = tau * value;
  }
  return out;
}

void apply_closure(MomentState& target, const GradientStencil& stencil, double tau) {
  const std::vector<double> block = close(stencil, tau);
  auto dst = target.closure_block();
  std::copy(block.begin(), block.end(), dst.begin());
}

}  // namespace nrxx
