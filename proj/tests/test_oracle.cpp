#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "girp/check.hpp"
#include "girp/oracle.hpp"
#include "girp/solver.hpp"
#include "test_util.hpp"

using namespace girp;

TEST_CASE("fixtures") {
  auto p = testing::hinge3();
  auto r = grid_optimum(p.data.y, p.dag, LossSpec::hinge(), {-2, 2, 0.5});
  CHECK(r.objective == 0);
  CHECK(is_isotonic(p.dag, r.g_hat).isotonic);

  Eigen::VectorXd one(1);
  one[0] = 1.23;
  auto s = grid_optimum(one, PartialOrderDag(1, {}), LossSpec::huber(0.9), default_grid(one));
  CHECK(s.objective == doctest::Approx(0).scale(1));
  CHECK(s.g_hat[0] == doctest::Approx(1.23));

  Eigen::VectorXd big = Eigen::VectorXd::Zero(kOracleMaxNodes + 1);
  CHECK_THROWS_AS(grid_optimum(big, PartialOrderDag(kOracleMaxNodes + 1, {}), LossSpec::squared(), default_grid(big)),
                  TooLarge);
}

TEST_CASE("grid values include breakpoints") {
  Eigen::Vector2d y(0.013, 1.0);
  auto v = grid_values(default_grid(y), y, LossSpec::huber(0.9));
  CHECK(std::is_sorted(v.begin(), v.end()));
  for (double b : {0.013 - 0.9, 0.013 + 0.9, 1.9, 0.1})
    CHECK(std::any_of(v.begin(), v.end(), [&](double g) { return std::abs(g - b) < 1e-12; }));
}

TEST_CASE("pava") {
  PartialOrderDag chain2(2, {{0, 1}});
  CHECK(pava(Eigen::Vector2d(2, 1), chain2, LossSpec::squared()) == Eigen::Vector2d(1.5, 1.5));
  Eigen::Vector3d sorted(1, 2, 3);
  PartialOrderDag chain3(3, {{0, 1}, {1, 2}});
  CHECK(pava(sorted, chain3, LossSpec::squared()) == sorted);
  CHECK_THROWS_AS(pava(sorted, PartialOrderDag(3, {{0, 1}, {0, 2}}), LossSpec::squared()), NotAChain);
  auto h = pava(Eigen::Vector3d(3, 1, 2), chain3, LossSpec::huber(0.5));
  CHECK(is_isotonic(chain3, h).isotonic);
}

TEST_CASE("refining the grid never hurts") {
  Rng rng(8);
  for (auto spec : {LossSpec::squared(), LossSpec::huber(0.9), LossSpec::eps_insensitive(0.5)}) {
    for (int t = 0; t < 20; ++t) {
      auto inst = random_instance(rng, 3 + t % 4, spec);
      auto g = default_grid(inst.y, 0.1);
      double prev = 1e300;
      for (double step : {0.1, 0.05, 0.025}) {
        g.step = step;
        auto r = grid_optimum(inst.y, inst.dag, spec, g);
        CHECK(is_isotonic(inst.dag, r.g_hat).isotonic);
        CHECK(r.objective <= prev + 1e-12);
        prev = r.objective;
      }
    }
  }
}

TEST_CASE("squared chains converge to pava") {
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    const int n = 3 + t % 4;
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    PartialOrderDag chain(n, e);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = rng.uniform(0, 5);
    const double exact = objective(y, LossSpec::squared(), pava(y, chain, LossSpec::squared()));
    double prev = 1e300;
    for (double step : {0.1, 0.05, 0.025}) {
      auto r = grid_optimum(y, chain, LossSpec::squared(), {y.minCoeff() - 2, y.maxCoeff() + 2, step});
      CHECK(r.objective >= exact - 1e-12);
      CHECK(r.objective - exact <= n * step * step / 8 + 1e-12);
      CHECK(r.objective <= prev + 1e-12);
      prev = r.objective;
    }
  }
}

TEST_CASE("solver matches the oracle on small instances") {
  Rng rng(1234);
  for (auto spec : {LossSpec::huber(0.9), LossSpec::hinge(), LossSpec::eps_insensitive(0.5)}) {
    for (int t = 0; t < 30; ++t) {
      auto c = compare_with_oracle(random_instance(rng, 5, spec), spec);
      CHECK(c.pass());
    }
  }
}
