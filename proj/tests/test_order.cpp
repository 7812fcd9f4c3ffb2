#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "girp/order.hpp"
#include "test_util.hpp"

using namespace girp;

TEST_CASE("validate") {
  CHECK_NOTHROW(validate(testing::example1().dag));
  CHECK_NOTHROW(validate(PartialOrderDag(4, {})));
  try {
    validate(PartialOrderDag(3, {{0, 1}, {1, 2}, {2, 1}}));
    FAIL("expected a cycle");
  } catch (const CycleError& e) {
    CHECK(e.cycle().size() == 2);
  }
  CHECK_THROWS_AS(validate(PartialOrderDag(2, {{0, 1}, {1, 0}})), CycleError);
}

TEST_CASE("edges are normalised") {
  PartialOrderDag d(3, {{0, 1}, {0, 1}, {2, 2}, {1, 2}});
  CHECK(d.edges().size() == 2);
  CHECK(d.successors(0).size() == 1);
  CHECK(d.predecessors(2).size() == 1);
  CHECK_THROWS_AS(PartialOrderDag(2, {{0, 5}}), Error);
}

TEST_CASE("upper and lower sets of the hinge chain") {
  // ids 0,1,2 are the points 1,2,3 with 3 <= 2 <= 1
  auto hinge = testing::hinge3();
  auto set = [](std::vector<int> m) { return NodeSubset::from_members(3, m); };
  CHECK(is_upper_set(hinge.dag, set({0, 1})));
  CHECK(is_upper_set(hinge.dag, set({0})));
  CHECK_FALSE(is_upper_set(hinge.dag, set({1})));
  CHECK(is_upper_set(hinge.dag, set({})));
  CHECK(is_lower_set(hinge.dag, set({2})));
  CHECK_FALSE(is_lower_set(hinge.dag, set({0})));
}

TEST_CASE("isotonicity report") {
  auto ex = testing::example1();
  Eigen::VectorXd g(32);
  g << 3.75, 3.75, 3.75, 3.75, 6.1, 4.1, 3.75, 3.75, 6.1, 3.75, 3.75, 3.75, 4.1, 3.75, 3.75, 3.75, 4, 4, 4, 4, 4, 4, 4,
      4, 5, 4, 4, 4, 5, 4, 5, 4;
  auto r = is_isotonic(ex.dag, g);
  CHECK_FALSE(r.isotonic);
  auto has = [&](int a, int b) {
    return std::find(r.violations.begin(), r.violations.end(), Edge{a - 1, b - 1}) != r.violations.end();
  };
  CHECK(has(6, 30));
  CHECK(has(9, 30));
  CHECK(is_isotonic(ex.dag, Eigen::VectorXd::Constant(32, 2.0)).isotonic);
}

TEST_CASE("induced subgraph") {
  auto ex = testing::example1();
  auto sub = induced_subgraph(ex.dag, NodeSubset::from_members(32, std::vector<int>{4, 5, 8, 12}));
  CHECK(sub.to_parent == std::vector<int>{4, 5, 8, 12});
  // (5,9), (6,13), (9,13) in one-based labels
  CHECK(sub.dag.edges() == std::vector<Edge>{{0, 2}, {1, 3}, {2, 3}});
  auto all = induced_subgraph(ex.dag, NodeSubset(32, true));
  CHECK(all.dag.edges() == ex.dag.edges());
  CHECK(induced_subgraph(ex.dag, NodeSubset::from_members(32, std::vector<int>{7})).dag.edges().empty());
  CHECK_THROWS_AS(induced_subgraph(ex.dag, NodeSubset(32)), EmptySubset);
}

TEST_CASE("dominance order") {
  Eigen::MatrixXd p(3, 2);
  p << 1, 1, 2, 2, 2, 0;
  auto d = dominance_order(p);
  // (1,1) <= (2,2) and (2,0) <= (2,2); (1,1) and (2,0) are incomparable
  CHECK(d.edges() == std::vector<Edge>{{0, 1}, {2, 1}});
  CHECK(dominance_order(Eigen::MatrixXd::Ones(1, 2)).edges().empty());
  Eigen::MatrixXd chain(4, 2);
  chain << 0, 0, 1, 1, 2, 2, 3, 3;
  CHECK(dominance_order(chain).edges().size() == 6);
  Eigen::MatrixXd dup(2, 2);
  dup << 1, 2, 1, 2;
  CHECK_THROWS_AS(dominance_order(dup), DuplicatePoint);
}

TEST_CASE("random orders: complements, level sets, reduction") {
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 15;
    auto dag = testing::random_dag(gen, n, 0.3);
    CHECK_NOTHROW(validate(dag));
    NodeSubset s(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
      if (u(gen) < 0.5) s.insert(x);
    CHECK(is_upper_set(dag, s) == is_lower_set(dag, s.complement()));

    // Longest-path rank is isotonic; its superlevel sets are upper sets.
    auto order = topological_order(dag);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
    for (int x : order)
      for (int y : dag.successors(x)) f[y] = std::max(f[y], f[x] + u(gen));
    REQUIRE(is_isotonic(dag, f).isotonic);
    const double a = f.mean();
    NodeSubset up(static_cast<std::size_t>(n)), down(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      if (f[x] >= a) up.insert(x);
      if (f[x] <= a) down.insert(x);
    }
    CHECK(is_upper_set(dag, up));
    CHECK(is_lower_set(dag, down));

    auto hasse = transitive_reduction(dag);
    CHECK(hasse.edges().size() <= dag.edges().size());
    for (int x = 0; x < n; ++x) {
      NodeSubset single = NodeSubset::from_members(static_cast<std::size_t>(n), std::vector<int>{x});
      CHECK(is_upper_set(dag, single) == is_upper_set(hasse, single));
    }
    CHECK(is_upper_set(dag, s) == is_upper_set(hasse, s));
  }
}

TEST_CASE("dominance orders validate") {
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd p(60, 2);
    for (int i = 0; i < 60; ++i) p(i, 0) = u(gen), p(i, 1) = u(gen);
    auto d = dominance_order(p);
    CHECK_NOTHROW(validate(d));
    for (const auto& e : d.edges()) CHECK((p.row(e.from).array() <= p.row(e.to).array()).all());
  }
}
