#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace nrxx {

using Vec3 = std::array<double, 3>;

/// Index alpha in N^3 of a Hermite coefficient f_alpha.
///
/// Components may be negative transiently (e.g. alpha - e_2); such indices
/// address coefficients that are identically zero.
struct MultiIndex {
  int a1 = 0;
  int a2 = 0;
  int a3 = 0;

  constexpr int order() const { return a1 + a2 + a3; }
  constexpr bool valid() const { return a1 >= 0 && a2 >= 0 && a3 >= 0; }

  constexpr int operator[](int d) const { return d == 0 ? a1 : (d == 1 ? a2 : a3); }
  constexpr int& operator[](int d) { return d == 0 ? a1 : (d == 1 ? a2 : a3); }

  constexpr MultiIndex shifted(int d, int k) const {
    MultiIndex r = *this;
    r[d] += k;
    return r;
  }

  friend constexpr bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Unit multi-index e_d (d = 0, 1, 2 for the x, y, z velocity axes).
constexpr MultiIndex unit_index(int d, int k = 1) { return MultiIndex{}.shifted(d, k); }

/// Number of multi-indices with |alpha| <= order, (order+1)(order+2)(order+3)/6.
constexpr std::size_t moment_count(int order) {
  if (order < 0) return 0;
  const auto k = static_cast<std::size_t>(order);
  return (k + 1) * (k + 2) * (k + 3) / 6;
}

/// Position of alpha in the graded ordering: by |alpha|, then lexicographic in
/// (a1, a2). The ordering is the same for every truncation order, so a prefix
/// of length moment_count(k) holds exactly the coefficients of order <= k.
constexpr std::size_t index_of(const MultiIndex& a) {
  const long k = a.order();
  const long a1 = a.a1;
  const long within = a1 * (k + 1) - a1 * (a1 - 1) / 2 + a.a2;
  return moment_count(a.order() - 1) + static_cast<std::size_t>(within);
}

/// Largest truncation order supported by the shared index tables.
inline constexpr int kMaxOrder = 24;

/// All multi-indices with |alpha| <= kMaxOrder in graded order.
const std::vector<MultiIndex>& all_indices();

inline const MultiIndex& index_at(std::size_t i) { return all_indices()[i]; }

}  // namespace nrxx
