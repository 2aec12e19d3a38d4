#pragma once

#include <span>
#include <vector>

#include "nrxx/multi_index.hpp"

namespace nrxx {

/// Probabilists' Hermite polynomial He_n(x) by the upward recursion
/// He_{n+1} = x He_n - n He_{n-1}. He_n is zero for n < 0.
double he_eval(int n, double x);

/// Fills out[k] = He_k(x) for k = 0 .. out.size()-1.
void he_values(double x, std::span<double> out);

/// Largest real root of He_n (n >= 1).
double he_largest_root(int n);

/// He_n(0) for n <= max_degree, built once and immutable afterwards.
class HermiteTable {
 public:
  explicit HermiteTable(int max_degree);

  int max_degree() const { return static_cast<int>(at_zero_.size()) - 1; }

  /// He_n(0); zero for negative or odd n.
  double at_zero(int n) const {
    return (n < 0 || n > max_degree()) ? 0.0 : at_zero_[static_cast<std::size_t>(n)];
  }

 private:
  std::vector<double> at_zero_;
};

/// Basis function H_{theta,alpha}(v) = prod_d (2 pi)^{-1/2} theta^{-(alpha_d+1)/2}
/// He_{alpha_d}(v_d) exp(-v_d^2/2). Zero if any component of alpha is negative.
/// Throws std::invalid_argument for theta <= 0.
double basis_eval(const MultiIndex& alpha, double theta, const Vec3& v);

/// Pointwise value of sum_alpha f_alpha H_{theta,alpha}((xi - u)/sqrt(theta))
/// for the coefficients of all orders <= max_order held in graded order.
double expansion_eval(std::span<const double> coeffs, int max_order, const Vec3& u,
                      double theta, const Vec3& xi);

}  // namespace nrxx
