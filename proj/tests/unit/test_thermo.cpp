#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ghlab/thermo.hpp"

using namespace ghlab;
using namespace ghlab::thermo;

namespace {

EdgeFunction vec(std::initializer_list<double> v) {
  EdgeFunction f(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) f[i++] = x;
  return f;
}

Eigen::VectorXd random_vertex_potential(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

// Two vertices, both loops plus a 2-cycle.
MarkovShift two_vertex() {
  return MarkovShift(2, {{0, 0, 0}, {1, 0, 1}, {2, 1, 0}, {3, 1, 1}});
}

}  // namespace

TEST_CASE("shift validation") {
  CHECK_THROWS_AS(MarkovShift(2, {{0, 0, 1}, {1, 1, 0}}), ValidationError);
  CHECK_THROWS_AS(MarkovShift(2, {{0, 0, 0}, {1, 1, 1}}), ValidationError);
  CHECK_THROWS_AS(MarkovShift(1, {{0, 0, 3}}), InvalidArgument);
  CHECK_THROWS_AS(MarkovShift(1, {{0, 0, 0}, {0, 0, 0}}), InvalidArgument);
  CHECK(period(2, {{0, 0, 1}, {1, 1, 0}}) == 2);
  const auto s = two_vertex();
  CHECK(s.index_of(2) == 2);
  CHECK_THROWS_AS(s.index_of(9), InvalidArgument);
  CHECK(s.out_edges(0).size() == 2);
}

TEST_CASE("pressure closed forms") {
  const auto s = full_shift(2);
  CHECK(pressure(s, vec({0, 0})) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  for (auto [a, b] : {std::pair{0.3, -1.2}, {2.0, 5.0}, {-40.0, -41.0}}) {
    CHECK(pressure(s, vec({a, b})) == doctest::Approx(std::log(std::exp(a) + std::exp(b))).epsilon(1e-12));
  }
  // Large potentials stay finite.
  CHECK(pressure(s, vec({800, 800})) == doctest::Approx(800 + std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("pressure is invariant under coboundaries") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_shift(seed, 4, 4);
    EdgeFunction g(s.edge_count());
    for (auto& x : g) x = u(rng);
    const auto cob = coboundary(s, random_vertex_potential(rng, s.vertex_count()));
    REQUIRE(std::abs(pressure(s, g + cob) - pressure(s, g)) <= 1e-12);
  }
}

TEST_CASE("entropy root") {
  const auto s = full_shift(2);
  CHECK(std::abs(entropy_root(s, vec({1, 1})) - std::log(2.0)) <= 1e-10);
  CHECK(std::abs(entropy_root(s, vec({1, 2})) - std::log(std::numbers::phi)) <= 1e-9);
  const auto g = random_shift(3, 4, 3);
  EdgeFunction f = EdgeFunction::Constant(g.edge_count(), 0.7);
  f[0] = 1.9;
  for (double c : {0.5, 3.0}) CHECK(std::abs(entropy_root(g, c * f) - entropy_root(g, f) / c) <= 1e-9);
  CHECK_THROWS_AS(entropy_root(s, vec({1, 0})), InvalidArgument);
}

TEST_CASE("cycle periods") {
  const auto s = two_vertex();
  const auto zero = cycle_periods(s, EdgeFunction::Zero(4), 6);
  CHECK(!zero.empty());
  for (const auto& c : zero) CHECK(c.period == 0);

  const auto loop = MarkovShift(1, {{7, 0, 0}});
  const auto one = cycle_periods(loop, vec({3}), 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].period == 3);
  CHECK(one[0].cycle.edges == std::vector<int>{7});
  CHECK(cycle_periods(loop, vec({3}), 3).size() == 3);
  CHECK_FALSE(cycle_periods(loop, vec({3}), 3)[2].cycle.primitive);

  // Exact, since telescoping sums of dyadic values are exact.
  const EdgeFunction g = vec({0.5, -1.25, 2, 0.75});
  Eigen::VectorXd u(2);
  u << 0.25, -1.5;
  const auto a = cycle_periods(s, g, 8);
  const auto b = cycle_periods(s, g + coboundary(s, u), 8);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].cycle.edges == b[i].cycle.edges);
    REQUIRE(a[i].period == b[i].period);
  }
  CHECK_THROWS_AS(cycle_periods(s, g, 15), InvalidArgument);
}

TEST_CASE("brute-force entropy") {
  const auto s = full_shift(2);
  const double h = brute_force_entropy(s, vec({1, 1}), 12);
  CHECK(std::abs(h - std::log(2.0)) <= 0.05);
  CHECK(periodic_point_count(s, vec({1, 1}), 3) == 2 + 4 + 8);
  CHECK_THROWS_AS(periodic_point_count(s, vec({1, 1}), 40, 1000), Overflow);
  CHECK_THROWS_AS(brute_force_entropy(s, vec({1, 1}), 1.5), InsufficientData);

  const auto g = random_shift(11, 3, 3);
  EdgeFunction f = EdgeFunction::Constant(g.edge_count(), 1.0);
  f[1] = 0.6;
  const double root = entropy_root(g, f);
  const double t = brute_force_horizon(g, f);
  CHECK(periodic_point_count(g, f, t) <= 1'000'000);
  CHECK(std::abs(brute_force_entropy(g, f, t) - root) <= 0.08);
  CHECK(std::abs(brute_force_entropy(g, f, t) - root) <= std::abs(brute_force_entropy(g, f, t / 2) - root) + 0.02);
}

TEST_CASE("pressure form") {
  const auto s = full_shift(2);
  const double l2 = std::log(2.0);
  const EdgeFunction big = vec({-l2, -l2});
  CHECK(std::abs(pressure_form(s, big, vec({1, -1})) - 1 / l2) <= 1e-4);
  CHECK_THROWS_AS(pressure_form(s, big, big), NotTangent);
  CHECK_THROWS_AS(pressure_form(s, vec({0, 0}), vec({1, -1})), NotOnPressureZero);

  const auto g = two_vertex();
  EdgeFunction f = vec({1, 1.5, 0.8, 1.2});
  const EdgeFunction F = -entropy_root(g, f) * f;
  Eigen::VectorXd u(2);
  u << 0, 0.7;
  const double cob = pressure_form(g, F, coboundary(g, u));
  CHECK(std::abs(cob) <= 1e-8);
  const auto t = tangent_projection(g, F, vec({0.3, -0.2, 0.5, 0.1}));
  CHECK(std::abs(pressure_derivative(g, F, t)) <= 1e-12);
  CHECK(pressure_form(g, F, t) > 1e-6);

  const auto m = equilibrium_measure(g, F);
  CHECK(m.sum() == doctest::Approx(1).epsilon(1e-12));
  CHECK(m.minCoeff() > 0);
}

TEST_CASE("coboundary detection") {
  const auto s = two_vertex();
  const auto z = is_coboundary(s, EdgeFunction::Zero(4));
  CHECK(z.flag);
  CHECK(z.witness.cwiseAbs().maxCoeff() == 0);

  std::mt19937_64 rng(2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_shift(seed, 4, 5);
    Eigen::VectorXd u = random_vertex_potential(rng, 4);
    u.array() -= u[0];
    const auto r = is_coboundary(g, coboundary(g, u));
    REQUIRE(r.flag);
    REQUIRE((r.witness - u).cwiseAbs().maxCoeff() <= 1e-12);
  }

  const auto full = is_coboundary(full_shift(2), vec({1, -1}));
  CHECK_FALSE(full.flag);
  REQUIRE(full.violating.has_value());
  CHECK(std::abs(full.violating->period) == 1);
  CHECK(full.violating->cycle.edges.size() == 1);
}
