#include <doctest.h>

#include <cmath>

#include "nrxx/solver1d.hpp"
#include "support/oracles.hpp"

using namespace nrxx;

namespace {

RunConfig couette(int M) {
  RunConfig cfg;
  cfg.M = M;
  cfg.left.wall.u_wall = {-0.6296, 0, 0};
  cfg.left.wall.side = WallSide::left;
  cfg.right.wall.u_wall = {0.6296, 0, 0};
  cfg.right.wall.side = WallSide::right;
  return cfg;
}

MomentState with_random_closure(std::mt19937_64& rng, int M) {
  auto s = oracle::random_state(rng, M);
  std::uniform_real_distribution<double> U(-0.01, 0.01);
  for (auto& v : s.closure_block()) v = U(rng);
  return s;
}

}  // namespace

TEST_CASE("flux vector") {
  const auto eq = maxwellian(1.0, {0, 0, 0}, 1.0, 4);
  const auto F = flux_vector(eq);
  CHECK(F[0] == 0.0);
  CHECK(F[index_of({0, 1, 0})] == 1.0);
  MomentState zero(4);
  zero.f.assign(zero.f.size(), 0.0);
  for (double v : flux_vector(zero)) CHECK(v == 0.0);

  std::mt19937_64 rng(3);
  const auto s = with_random_closure(rng, 4);
  const auto G = flux_vector(s);
  oracle::VelocityQuadrature Q(s.u, s.theta, 40);
  auto g = [&](const Vec3& xi) { return xi[1] * expansion_eval(s, xi); };
  for (std::size_t i = 0; i < G.size(); ++i)
    CHECK(std::abs(G[i] - Q.coefficient(g, index_at(i), s.u, s.theta)) <= 1e-9);
}

TEST_CASE("HLL flux") {
  std::mt19937_64 rng(8);
  const auto s = with_random_closure(rng, 5);
  const double c = signal_speed_constant(5);
  const auto same = hll_flux(s, s, c);
  const auto F = flux_vector(s);
  for (std::size_t i = 0; i < F.size(); ++i) CHECK(std::abs(same[i] - F[i]) <= 1e-14);

  auto fast = s;
  fast.u[1] = 10.0;
  auto other = fast;
  other.f[0] *= 1.1;
  const auto up = hll_flux(fast, other, c);
  const auto Fl = flux_vector(fast);
  for (std::size_t i = 0; i < Fl.size(); ++i) CHECK(up[i] == Fl[i]);

  // mirror images about a face: opposite extreme speeds
  auto a = s;
  a.u[1] = 0.3;
  auto b = a;
  b.u[1] = -0.3;
  const auto sp = signal_speeds(a, b, c);
  CHECK(sp.lo == doctest::Approx(-sp.hi));
}

TEST_CASE("CFL time step") {
  const double c = signal_speed_constant(5);
  Grid1D g(0.0, 1.0, 50, maxwellian(1.0, {0, 0, 0}, 1.0, 5));
  CHECK(cfl_timestep(g, 0.95, c) == doctest::Approx(0.95 * g.dx() / c));
  Grid1D hot(0.0, 1.0, 50, maxwellian(1.0, {0, 0, 0}, 2.0, 5));
  CHECK(cfl_timestep(hot, 0.95, c) == doctest::Approx(cfl_timestep(g, 0.95, c) / std::sqrt(2.0)));
  auto one = g;
  one.cells[17].theta = 4.0;
  CHECK(cfl_timestep(one, 0.95, c) == doctest::Approx(0.95 * g.dx() / (2.0 * c)));
  CHECK(diffusion_timestep(g, 0.95, c, 0.1) < cfl_timestep(g, 0.95, c));
}

TEST_CASE("reconstruction") {
  const int M = 4;
  Grid1D g(0.0, 1.0, 8, maxwellian(1.0, {0.1, 0, 0}, 1.0, M));
  SUBCASE("uniform") {
    const auto tr = reconstruct(g, g.cells.front(), g.cells.back(), Limiter::minmod);
    REQUIRE(tr.size() == 9);
    for (const auto& [l, r] : tr) {
      CHECK(l.rho() == 1.0);
      CHECK(r.rho() == 1.0);
      CHECK(l.u == r.u);
    }
  }
  SUBCASE("linear ramp is reproduced") {
    for (std::size_t j = 0; j < g.size(); ++j) g.cells[j].set_rho(1.0 + 0.5 * g.center(j));
    auto lo = g.cells.front(), hi = g.cells.back();
    lo.set_rho(1.0 + 0.5 * (g.y_lo - 0.5 * g.dx()));
    hi.set_rho(1.0 + 0.5 * (g.y_hi + 0.5 * g.dx()));
    for (auto lim : {Limiter::none, Limiter::minmod}) {
      const auto tr = reconstruct(g, lo, hi, lim);
      // the outer side of the two end faces belongs to the ghosts
      for (std::size_t f = 0; f < tr.size(); ++f) {
        const double exact = 1.0 + 0.5 * (g.y_lo + f * g.dx());
        if (f > 0) CHECK(tr[f].first.rho() == doctest::Approx(exact).epsilon(1e-14));
        if (f + 1 < tr.size()) CHECK(tr[f].second.rho() == doctest::Approx(exact).epsilon(1e-14));
      }
    }
  }
  SUBCASE("minmod adds no extrema at a step") {
    for (std::size_t j = 0; j < g.size(); ++j) g.cells[j].set_rho(j < 4 ? 1.0 : 2.0);
    const auto tr = reconstruct(g, g.cells.front(), g.cells.back(), Limiter::minmod);
    for (const auto& [l, r] : tr) {
      CHECK(l.rho() >= 1.0);
      CHECK(l.rho() <= 2.0);
      CHECK(r.rho() >= 1.0);
      CHECK(r.rho() <= 2.0);
    }
  }
}

TEST_CASE("free-boundary ghost copies the edge cell") {
  std::mt19937_64 rng(1);
  const auto s = oracle::random_state(rng, 4);
  BoundarySpec b;
  b.kind = BoundaryKind::free;
  const auto g = boundary_ghost(s, b);
  CHECK(g.f == s.f);
}

TEST_CASE("global wall equilibrium is stationary") {
  auto cfg = couette(5);
  cfg.left.wall.u_wall = {0, 0, 0};
  cfg.right.wall.u_wall = {0, 0, 0};
  Grid1D g(-0.5, 0.5, 40, maxwellian(1.0, {0, 0, 0}, 1.0, 5));
  const auto ref = g;
  for (int n = 0; n < 20; ++n) {
    step(g, cfg);
    for (std::size_t j = 0; j < g.size(); ++j) {
      for (std::size_t i = 0; i < g.cells[j].evolved_size(); ++i)
        CHECK(std::abs(g.cells[j].f[i] - ref.cells[j].f[i]) <= 1e-12);
      CHECK(std::abs(g.cells[j].theta - 1.0) <= 1e-12);
      CHECK(std::abs(g.cells[j].u[1]) <= 1e-12);
    }
  }
}

TEST_CASE("force alone accelerates uniformly") {
  RunConfig cfg;
  cfg.M = 4;
  cfg.collisions = false;
  cfg.left.kind = cfg.right.kind = BoundaryKind::free;
  cfg.force = {0.2555, 0, 0};
  Grid1D g(0.0, 1.0, 10, maxwellian(1.0, {0, 0, 0}, 1.0, 4));
  double t = 0;
  for (int n = 0; n < 50; ++n) t += step(g, cfg).dt;
  for (const auto& c : g.cells) CHECK(c.u[0] == doctest::Approx(0.2555 * t).epsilon(1e-12));
}

TEST_CASE("Couette conserves mass and keeps the mirror symmetry") {
  const auto cfg = couette(5);
  Grid1D g(-0.5, 0.5, 40, maxwellian(1.0, {0, 0, 0}, 1.0, 5));
  const double m0 = g.total_mass();
  for (int n = 0; n < 1000; ++n) step(g, cfg);
  CHECK(std::abs(g.total_mass() - m0) <= 1e-12);
  const std::size_t n = g.size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    const auto& a = g.cells[j];
    const auto& b = g.cells[n - 1 - j];
    CHECK(std::abs(a.u[0] + b.u[0]) <= 1e-10);
    CHECK(std::abs(a.u[1] + b.u[1]) <= 1e-10);
    CHECK(std::abs(a.theta - b.theta) <= 1e-10);
  }
}

TEST_CASE("specular walls: the force is the only source of x-momentum") {
  RunConfig cfg;
  cfg.M = 4;
  cfg.left.wall.chi = cfg.right.wall.chi = 0.0;
  cfg.left.wall.side = WallSide::left;
  cfg.force = {0.2555, 0, 0};
  Grid1D g(-0.5, 0.5, 20, maxwellian(1.0, {0, 0, 0}, 1.0, 4));
  auto momentum = [](const Grid1D& gr) {
    double p = 0;
    for (const auto& c : gr.cells) p += c.rho() * c.u[0] * gr.dx();
    return p;
  };
  for (int n = 0; n < 200; ++n) {
    const double p0 = momentum(g), m = g.total_mass();
    const double dt = step(g, cfg).dt;
    CHECK(momentum(g) - p0 == doctest::Approx(m * 0.2555 * dt).epsilon(1e-9));
  }
}

TEST_CASE("run stops at t_end and reports progress") {
  auto cfg = couette(4);
  cfg.t_end = 0.05;
  std::size_t calls = 0;
  const auto res = run(Grid1D(-0.5, 0.5, 20, maxwellian(1.0, {0, 0, 0}, 1.0, 4)), cfg,
                       [&](const Grid1D&, double, std::size_t) { ++calls; });
  CHECK(res.time == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(calls == res.steps);
  CHECK(res.residuals.size() == res.steps);
  CHECK_THROWS_AS(step(*std::make_unique<Grid1D>(), cfg), std::invalid_argument);
}
