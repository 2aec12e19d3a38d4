#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nrxx/collision.hpp"
#include "support/oracles.hpp"

using namespace nrxx;

TEST_CASE("relaxation time") {
  const double t0 = 5.0 / 16.0 * std::sqrt(2 * std::numbers::pi) * 0.5;
  CHECK(relaxation_time(1, 1, 0.5) == doctest::Approx(t0));
  CHECK(t0 == doctest::Approx(0.391661).epsilon(1e-5));
  CHECK(relaxation_time(2, 1, 0.5) == doctest::Approx(t0 / 2));
  CHECK(relaxation_time(1, 4, 0.5) == doctest::Approx(t0 / 2));
  CHECK_THROWS_AS(relaxation_time(0, 1, 1), std::invalid_argument);
}

TEST_CASE("Pr = 1 is BGK decay") {
  std::mt19937_64 rng(4);
  const auto s = oracle::random_state(rng, 6);
  const CollisionParams p{0.3, 1.0, 0.1};
  const auto c = collided(s, p);
  const double r = std::exp(-p.dt / p.tau);
  for (std::size_t i = 0; i < s.evolved_size(); ++i) {
    const double expect = index_at(i).order() >= 2 ? s.f[i] * r : s.f[i];
    CHECK(c.f[i] == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("heat flux decays at rate Pr / tau") {
  std::mt19937_64 rng(8);
  for (int M : {3, 5, 9}) {
    const auto s = oracle::random_state(rng, M);
    const CollisionParams p{0.4, 2.0 / 3.0, 0.25};
    const auto c = collided(s, p);
    const auto q0 = heat_flux(s), q1 = heat_flux(c);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(q1[i] - q0[i] * std::exp(-p.prandtl * p.dt / p.tau)) <= 1e-12);
    CHECK(c.u == s.u);
    CHECK(c.theta == s.theta);
    CHECK(c.f[0] == s.f[0]);
  }
}

TEST_CASE("long times approach the Maxwellian") {
  std::mt19937_64 rng(6);
  const auto s = oracle::random_state(rng, 5);
  const auto c = collided(s, {0.01, 2.0 / 3.0, 100.0});
  for (std::size_t i = 1; i < c.evolved_size(); ++i) CHECK(std::abs(c.f[i]) <= 1e-12);
}

TEST_CASE("semigroup") {
  std::mt19937_64 rng(12);
  const auto s = oracle::random_state(rng, 7);
  const auto once = collided(s, {0.3, 2.0 / 3.0, 0.2});
  const auto twice = collided(collided(s, {0.3, 2.0 / 3.0, 0.07}), {0.3, 2.0 / 3.0, 0.13});
  for (std::size_t i = 0; i < s.evolved_size(); ++i) CHECK(std::abs(once.f[i] - twice.f[i]) <= 1e-12);
}
