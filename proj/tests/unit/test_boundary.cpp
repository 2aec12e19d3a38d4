#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nrxx/boundary.hpp"
#include "support/oracles.hpp"

using namespace nrxx;

namespace {

MomentState at_wall(MomentState s, const WallSpec& w) {
  s.u[1] = w.u_wall[1];
  return s;
}

double mass_flux(const MomentState& s) {
  oracle::VelocityQuadrature Q(s.u, s.theta, 40, 9.0);
  return Q.sum([&](const Vec3& xi) { return (xi[1] - s.u[1]) * expansion_eval(s, xi); });
}

}  // namespace

TEST_CASE("half-space table entries") {
  const auto& S = HalfSpaceTable::shared();
  CHECK(S(0, 0) == 0.5);
  CHECK(S(2, 4) == 0.0);
  CHECK(S(1, 0) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi)));
  for (int n = 0; n <= 13; ++n) CHECK(S(n, n) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s_table(4).max_index() == 5);
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) {
      const double want = oracle::half_space(m, n);
      CHECK(std::abs(S(m, n) - want) <= 1e-10 * std::abs(want) + 1e-14);
    }
}

TEST_CASE("half-space integral sparsity") {
  for (int M : {3, 5})
    for (std::size_t i = 0; i < moment_count(M); ++i)
      for (std::size_t j = 0; j < moment_count(M); ++j) {
        const auto a = index_at(i), b = index_at(j);
        const double v = half_space_integral(a, b, 1.3);
        const int d = a.a2 - b.a2;
        if (a.a1 != b.a1 || a.a3 != b.a3 || (d != 0 && d % 2 == 0)) CHECK(v == 0.0);
        if (a == b) CHECK(v == 0.5);
      }
}

TEST_CASE("cut-off of a Maxwellian") {
  const auto m = maxwellian(1.3, {0.2, 0.0, -0.1}, 1.2, 4);
  const auto q = half_space_cutoff(m);
  CHECK(q[0] == doctest::Approx(0.65));
  for (std::size_t i = 1; i < q.size(); ++i) {
    const auto a = index_at(i);
    if (a.a1 != 0 || a.a3 != 0) CHECK(q[i] == 0.0);
  }
}

TEST_CASE("cut-off diagonal and quadrature") {
  std::mt19937_64 rng(31);
  WallSpec w;
  const auto s = at_wall(oracle::random_state(rng, 4), w);
  const auto q = half_space_cutoff(s);
  oracle::VelocityQuadrature Q(s.u, s.theta, 40, 9.0, oracle::Half::upper);
  auto f = [&](const Vec3& xi) { return expansion_eval(s, xi); };
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double want = Q.coefficient(f, index_at(i), s.u, s.theta);
    CHECK(std::abs(q[i] - want) <= 1e-8);
  }
  // a lone coefficient contributes half of itself to the same slot
  auto lone = maxwellian(1.0, {0, 0, 0}, 1.0, 4);
  lone[{1, 1, 1}] = 0.2;
  CHECK(half_space_cutoff(lone)[index_of({1, 1, 1})] == doctest::Approx(0.1));
}

TEST_CASE("wall density") {
  WallSpec w;
  CHECK(wall_density(maxwellian(1.4, {0, 0, 0}, 1.0, 4), w) == doctest::Approx(1.4));
  w.theta_wall = 0.25;
  CHECK(wall_density(maxwellian(1.4, {0, 0, 0}, 1.0, 4), w) == doctest::Approx(2.8));
}

TEST_CASE("half-Maxwellian coefficients") {
  WallSpec w;
  w.u_wall = {0.3, 0.0, -0.2};
  w.theta_wall = 1.3;
  auto s = maxwellian(1.0, {0.1, 0.0, 0.1}, 0.9, 5);
  const double rw = 1.7;
  const auto p = half_maxwellian_coeffs(w, s, rw);
  CHECK(p[0] == doctest::Approx(rw / 2));
  CHECK(p[index_of({0, 1, 0})] == doctest::Approx(-rw * std::sqrt(w.theta_wall / (2 * std::numbers::pi))));

  oracle::VelocityQuadrature Q(s.u, std::max(s.theta, w.theta_wall), 40, 9.0, oracle::Half::lower);
  auto mw = [&](const Vec3& xi) {
    double e = 0;
    for (int d = 0; d < 3; ++d) e += (xi[d] - w.u_wall[d]) * (xi[d] - w.u_wall[d]);
    return rw * std::pow(2 * std::numbers::pi * w.theta_wall, -1.5) * std::exp(-e / (2 * w.theta_wall));
  };
  for (MultiIndex a : {MultiIndex{1, 1, 0}, MultiIndex{0, 3, 0}, MultiIndex{2, 2, 1}, MultiIndex{1, 0, 4}})
    CHECK(std::abs(p[index_of(a)] - Q.coefficient(mw, a, s.u, s.theta)) <= 1e-9);
}

TEST_CASE("J recursions against their integrals") {
  const double th = 0.8, tw = 1.4, x = 0.3;
  const auto J = full_line_moments(8, th, tw, x);
  const auto Jt = half_line_moments(8, th, tw, x);
  for (int s = 0; s <= 8; ++s) {
    auto g = [&](double v) {
      return oracle::he(s, v / std::sqrt(th)) * std::pow(th, s / 2.0) / oracle::factorial(s) *
             std::exp(-(v - x) * (v - x) / (2 * tw)) / std::sqrt(2 * std::numbers::pi * tw);
    };
    CHECK(std::abs(J[static_cast<std::size_t>(s)] - oracle::integrate(g, -40, 40)) <= 1e-12);
    CHECK(std::abs(Jt[static_cast<std::size_t>(s)] - oracle::integrate(g, -40, 0)) <= 1e-12);
  }
}

TEST_CASE("boundary map") {
  std::mt19937_64 rng(5);
  WallSpec w;
  w.u_wall = {0.4, 0.0, 0.0};
  w.theta_wall = 1.2;

  SUBCASE("specular wall zeroes odd alpha_2") {
    w.chi = 0.0;
    const auto b = apply_wall_bc(at_wall(oracle::random_state(rng, 5), w), w);
    for (std::size_t i = 0; i < b.f.size(); ++i)
      if (index_at(i).a2 % 2) CHECK(b.f[i] == 0.0);
  }
  SUBCASE("conservation and zero mass flux") {
    for (double chi : {1.0, 0.6}) {
      w.chi = chi;
      const auto b = apply_wall_bc(at_wall(oracle::random_state(rng, 4), w), w);
      CHECK(std::abs(b[{1, 0, 0}]) <= 1e-12);
      CHECK(std::abs(b[{0, 1, 0}]) <= 1e-12);
      CHECK(std::abs(b[{0, 0, 1}]) <= 1e-12);
      CHECK(std::abs(b[{2, 0, 0}] + b[{0, 2, 0}] + b[{0, 0, 2}]) <= 1e-12);
      CHECK(std::abs(mass_flux(b)) <= 1e-6);
    }
  }
  SUBCASE("wall equilibrium is a fixed point") {
    const auto m = maxwellian(1.1, w.u_wall, w.theta_wall, 5);
    const auto b = apply_wall_bc(m, w);
    for (std::size_t i = 0; i < b.f.size(); ++i) CHECK(std::abs(b.f[i] - m.f[i]) <= 1e-13);
  }
  SUBCASE("accommodation outside [0, 1]") {
    w.chi = 1.5;
    CHECK_THROWS_AS(apply_wall_bc(maxwellian(1, {0, 0, 0}, 1, 3), w), std::invalid_argument);
  }
}

TEST_CASE("ghost state") {
  std::mt19937_64 rng(77);
  WallSpec w;
  w.u_wall = {0.2, 0.0, 0.0};
  SUBCASE("state already obeying the condition") {
    const auto b = apply_wall_bc(oracle::random_state(rng, 5), w);
    const auto g = ghost_state(b, w);
    for (std::size_t i = 0; i < b.f.size(); ++i) CHECK(std::abs(g.f[i] - b.f[i]) <= 1e-14);
  }
  SUBCASE("density kept, normal velocity reversed") {
    auto s = oracle::random_state(rng, 5);
    const auto g = ghost_state(s, w);
    CHECK(g.rho() == doctest::Approx(s.rho()));
    CHECK(g.u[1] == doctest::Approx(-s.u[1]));
    CHECK(g.theta == s.theta);
  }
  SUBCASE("average of ghost and interior is the boundary state") {
    const auto s = oracle::random_state(rng, 5);
    const auto g = ghost_state(s, w);
    MomentState avg = s;
    for (int d = 0; d < 3; ++d) avg.u[d] = 0.5 * (g.u[d] + s.u[d]);
    for (std::size_t i = 0; i < s.f.size(); ++i) avg.f[i] = 0.5 * (g.f[i] + s.f[i]);
    const auto b = apply_wall_bc(s, w);
    const auto bb = apply_wall_bc(avg, w);
    for (std::size_t i = 0; i < s.f.size(); ++i) {
      CHECK(std::abs(avg.f[i] - b.f[i]) <= 1e-13);
      CHECK(std::abs(bb.f[i] - b.f[i]) <= 1e-13);
    }
  }
}

TEST_CASE("mirror") {
  std::mt19937_64 rng(2);
  const auto s = oracle::random_state(rng, 5);
  const auto mm = mirror(mirror(s));
  CHECK(mm.u == s.u);
  for (std::size_t i = 0; i < s.f.size(); ++i) CHECK(mm.f[i] == s.f[i]);
  const auto eq = mirror(maxwellian(1.0, {0.1, 0.2, 0.3}, 1.1, 4));
  CHECK(eq.u[1] == -0.2);
  CHECK(eq.u[0] == 0.1);
  const auto m = mirror(s);
  for (const Vec3 xi : {Vec3{0.1, 0.5, -0.3}, Vec3{1.2, -0.7, 0.4}})
    CHECK(expansion_eval(m, {xi[0], -xi[1], xi[2]}) == doctest::Approx(expansion_eval(s, xi)).epsilon(1e-13));
  WallSpec w;
  w.side = WallSide::left;
  w.u_wall = {0.3, 0.1, 0.0};
  const auto wm = mirror(w);
  CHECK(wm.side == WallSide::right);
  CHECK(wm.u_wall[1] == -0.1);
}
