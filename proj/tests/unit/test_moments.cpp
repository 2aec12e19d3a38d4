#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "nrxx/collision.hpp"
#include "nrxx/moments.hpp"
#include "support/oracles.hpp"

using namespace nrxx;

TEST_CASE("graded ordering is a bijection") {
  for (int M = 0; M <= 12; ++M) {
    const std::size_t N = moment_count(M + 1);
    CHECK(N == static_cast<std::size_t>((M + 2) * (M + 3) * (M + 4) / 6));
    std::set<std::size_t> seen;
    for (int a1 = 0; a1 <= M + 1; ++a1)
      for (int a2 = 0; a1 + a2 <= M + 1; ++a2)
        for (int a3 = 0; a1 + a2 + a3 <= M + 1; ++a3) {
          const std::size_t i = index_of({a1, a2, a3});
          CHECK(i < N);
          seen.insert(i);
          CHECK(index_at(i) == MultiIndex{a1, a2, a3});
        }
    CHECK(seen.size() == N);
  }
  CHECK(index_of({0, 0, 1}) == 1);
  CHECK(index_of({1, 0, 0}) == 3);
  CHECK(index_of({2, 0, 0}) == 9);
}

TEST_CASE("maxwellian") {
  auto s = maxwellian(1.0, {0, 0, 0}, 1.0, 3);
  CHECK(s.M == 3);
  CHECK(s.f[0] == 1.0);
  for (std::size_t i = 1; i < s.f.size(); ++i) CHECK(s.f[i] == 0.0);
  const auto m = maxwellian(1.7, {0.2, -0.1, 0.4}, 1.4, 5);
  CHECK(expansion_eval(m, m.u) == doctest::Approx(1.7 * std::pow(2 * std::numbers::pi * 1.4, -1.5)));
  for (const auto& row : stress(m))
    for (double v : row) CHECK(v == 0.0);
  CHECK_THROWS_AS(maxwellian(0.0, {0, 0, 0}, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(maxwellian(1.0, {0, 0, 0}, -1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(maxwellian(1.0, {0, 0, 0}, 1.0, 2), std::invalid_argument);
}

TEST_CASE("stress and heat flux from single coefficients") {
  auto s = maxwellian(1.0, {0, 0, 0}, 1.0, 4);
  s[{1, 1, 0}] = 0.3;
  CHECK(stress(s)[0][1] == doctest::Approx(0.3));
  CHECK(stress(s)[1][0] == doctest::Approx(0.3));
  auto t = maxwellian(1.0, {0, 0, 0}, 1.0, 4);
  t[{3, 0, 0}] = 0.1;
  CHECK(heat_flux(t)[0] == doctest::Approx(0.3));
  CHECK(heat_flux(t)[1] == 0.0);
}

TEST_CASE("macroscopic extractors agree with velocity quadrature") {
  std::mt19937_64 rng(11);
  for (int M : {3, 4, 6}) {
    const auto s = oracle::random_state(rng, M);
    oracle::VelocityQuadrature Q(s.u, s.theta);
    auto f = [&](const Vec3& xi) { return expansion_eval(s, xi); };
    const double rho = Q.sum(f);
    CHECK(rho == doctest::Approx(s.rho()).epsilon(1e-8));
    for (int d = 0; d < 3; ++d) {
      const double mom = Q.sum([&](const Vec3& xi) { return (xi[d] - s.u[d]) * f(xi); });
      CHECK(std::abs(mom) <= 1e-8);
    }
    const double theta = Q.sum([&](const Vec3& xi) {
                           double c2 = 0;
                           for (int d = 0; d < 3; ++d) c2 += (xi[d] - s.u[d]) * (xi[d] - s.u[d]);
                           return c2 * f(xi);
                         }) / (3 * rho);
    CHECK(theta == doctest::Approx(s.theta).epsilon(1e-8));

    const auto sigma = stress(s);
    const auto q = heat_flux(s);
    double trace = 0;
    for (int i = 0; i < 3; ++i) {
      trace += sigma[i][i];
      for (int j = 0; j < 3; ++j) {
        CHECK(sigma[i][j] == sigma[j][i]);
        const double P = Q.sum([&](const Vec3& xi) { return (xi[i] - s.u[i]) * (xi[j] - s.u[j]) * f(xi); });
        const double expect = P - (i == j ? rho * s.theta : 0.0);
        CHECK(std::abs(sigma[i][j] - expect) <= 1e-8 * std::max(1.0, std::abs(expect)));
      }
      const double qi = Q.sum([&](const Vec3& xi) {
        double c2 = 0;
        for (int d = 0; d < 3; ++d) c2 += (xi[d] - s.u[d]) * (xi[d] - s.u[d]);
        return 0.5 * c2 * (xi[i] - s.u[i]) * f(xi);
      });
      CHECK(std::abs(q[i] - qi) <= 1e-8 * std::max(1.0, std::abs(qi)));
    }
    CHECK(std::abs(trace) <= 1e-14);
  }
}

TEST_CASE("validate") {
  auto s = maxwellian(1.0, {0, 0, 0}, 1.0, 4);
  CHECK_FALSE(validate(s).has_value());
  s[{0, 1, 0}] = 1e-3;
  REQUIRE(validate(s).has_value());
  CHECK(validate(s)->find("f_{e_i}") != std::string::npos);

  std::mt19937_64 rng(3);
  auto r = oracle::random_state(rng, 5);
  CHECK_FALSE(validate(r).has_value());
  collide(r, {relaxation_time(r.rho(), r.theta, 0.1), 2.0 / 3.0, 0.05});
  CHECK_FALSE(validate(r).has_value());

  auto bad = maxwellian(1.0, {0, 0, 0}, 1.0, 4);
  bad[{2, 0, 0}] = 0.1;
  CHECK(validate(bad).has_value());
  bad = maxwellian(1.0, {0, 0, 0}, 1.0, 4);
  bad.theta = -1.0;
  CHECK(validate(bad).has_value());
}

TEST_CASE("profile row") {
  auto s = maxwellian(1.2, {0.1, 0.2, 0.3}, 1.1, 4);
  s[{1, 1, 0}] = 0.05;
  s[{0, 3, 0}] = 0.01;
  const auto r = profile_row(0.25, s);
  CHECK(r.y == 0.25);
  CHECK(r.rho == 1.2);
  CHECK(r.u[2] == 0.3);
  CHECK(r.theta == 1.1);
  CHECK(r.sigma12 == doctest::Approx(0.05));
  CHECK(r.q2 == doctest::Approx(0.03));
}
