#include "nrxx/hermite.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nrxx {

const std::vector<MultiIndex>& all_indices() {
  static const std::vector<MultiIndex> table = [] {
    std::vector<MultiIndex> out;
    out.reserve(moment_count(kMaxOrder));
    for (int k = 0; k <= kMaxOrder; ++k)
      for (int a1 = 0; a1 <= k; ++a1)
        for (int a2 = 0; a2 <= k - a1; ++a2) out.push_back({a1, a2, k - a1 - a2});
    return out;
  }();
  return table;
}

double he_eval(int n, double x) {
  if (n < 0) return 0.0;
  double prev = 0.0;  // He_{-1}
  double cur = 1.0;   // He_0
  for (int k = 0; k < n; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void he_values(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() > 1) out[1] = x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k)
    out[k + 1] = x * out[k] - static_cast<double>(k) * out[k - 1];
}

namespace {

double largest_root_search(int n) {
  if (n == 1) return 0.0;
  // All roots lie below sqrt(4n); He_n > 0 beyond the largest root, so
  // bisect from the right edge down to the first sign change.
  double hi = std::sqrt(4.0 * n + 2.0);
  const double step = 1e-3;
  double lo = hi - step;
  while (he_eval(n, lo) > 0.0) {
    hi = lo;
    lo -= step;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (he_eval(n, mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double he_largest_root(int n) {
  if (n < 1) throw std::invalid_argument("he_largest_root: degree must be >= 1");
  constexpr int kCached = kMaxOrder + 2;
  static const auto roots = [] {
    std::array<double, kCached + 1> r{};
    for (int k = 1; k <= kCached; ++k) r[static_cast<std::size_t>(k)] = largest_root_search(k);
    return r;
  }();
  return n <= kCached ? roots[static_cast<std::size_t>(n)] : largest_root_search(n);
}

HermiteTable::HermiteTable(int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("HermiteTable: negative degree");
  at_zero_.resize(static_cast<std::size_t>(max_degree) + 1);
  he_values(0.0, at_zero_);
}

double basis_eval(const MultiIndex& alpha, double theta, const Vec3& v) {
  if (!(theta > 0.0)) throw std::invalid_argument("basis_eval: theta must be positive");
  if (!alpha.valid()) return 0.0;
  const double inv_sqrt_2pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
  double value = 1.0;
  for (int d = 0; d < 3; ++d) {
    value *= inv_sqrt_2pi * std::pow(theta, -0.5 * (alpha[d] + 1)) * he_eval(alpha[d], v[d]) *
             std::exp(-0.5 * v[d] * v[d]);
  }
  return value;
}

double expansion_eval(std::span<const double> coeffs, int max_order, const Vec3& u,
                      double theta, const Vec3& xi) {
  if (!(theta > 0.0)) throw std::invalid_argument("expansion_eval: theta must be positive");
  const double sqrt_theta = std::sqrt(theta);
  const std::size_t n = std::min(coeffs.size(), moment_count(max_order));
  // Per-axis factors theta^{-(k+1)/2} He_k(v) exp(-v^2/2) / sqrt(2 pi).
  std::array<std::vector<double>, 3> axis;
  for (int d = 0; d < 3; ++d) {
    const double v = (xi[d] - u[d]) / sqrt_theta;
    auto& a = axis[static_cast<std::size_t>(d)];
    a.resize(static_cast<std::size_t>(max_order) + 1);
    he_values(v, a);
    double scale = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2 * std::exp(-0.5 * v * v) /
                   sqrt_theta;
    for (auto& x : a) {
      x *= scale;
      scale /= sqrt_theta;
    }
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const MultiIndex& a = index_at(i);
    sum += coeffs[i] * axis[0][static_cast<std::size_t>(a.a1)] *
           axis[1][static_cast<std::size_t>(a.a2)] * axis[2][static_cast<std::size_t>(a.a3)];
  }
  return sum;
}

}  // namespace nrxx
