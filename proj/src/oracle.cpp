#include "girp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "girp/fitting.hpp"

namespace girp {

GridSpec default_grid(const Eigen::Ref<const Eigen::VectorXd>& responses, double step) {
  if (responses.size() == 0) throw EmptySubset();
  return {responses.minCoeff() - 2.0, responses.maxCoeff() + 2.0, step};
}

std::vector<double> grid_values(const GridSpec& grid, const Eigen::Ref<const Eigen::VectorXd>& responses,
                                const LossSpec& spec) {
  if (!(grid.step > 0) || !(grid.lo <= grid.hi)) throw DomainError("invalid grid");
  std::vector<double> v;
  const auto steps = static_cast<long>(std::floor((grid.hi - grid.lo) / grid.step + 1e-9));
  for (long k = 0; k <= steps; ++k) v.push_back(grid.lo + static_cast<double>(k) * grid.step);
  v.push_back(grid.hi);
  for (Eigen::Index i = 0; i < responses.size(); ++i) {
    for (double p : breakpoints(spec, responses[i])) v.push_back(p);
    auto cf = constant_fit_interval(responses.segment(i, 1), spec);
    if (!cf.attained) continue;
    for (double e : {cf.interval.lo(), cf.interval.hi()})
      if (std::isfinite(e)) v.push_back(e);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end(), [](double a, double b) { return std::abs(a - b) <= 1e-12; }), v.end());
  return v;
}

namespace {

struct Search {
  const PartialOrderDag& dag;
  const std::vector<int>& order;
  const std::vector<double>& values;
  std::vector<std::vector<double>> cost;  // cost[x][k] = loss of node x at values[k]
  std::vector<double> suffix_bound;       // sum over order[i..] of min_k cost
  std::vector<int> level;                 // chosen value index per node, -1 if unassigned
  std::vector<int> best_level;
  double best = std::numeric_limits<double>::infinity();

  void run(std::size_t i, double partial) {
    if (partial + suffix_bound[i] >= best) return;
    if (i == order.size()) {
      best = partial;
      best_level = level;
      return;
    }
    const int x = order[i];
    int first = 0;
    for (int p : dag.predecessors(x)) first = std::max(first, level[static_cast<std::size_t>(p)]);
    const auto& c = cost[static_cast<std::size_t>(x)];
    // Past the first minimiser above `first` the node's own cost is
    // nondecreasing and successors only get tighter, so stop there.
    int last = first;
    for (int k = first + 1; k < static_cast<int>(values.size()); ++k) {
      if (c[static_cast<std::size_t>(k)] < c[static_cast<std::size_t>(last)]) last = k;
      else if (c[static_cast<std::size_t>(k)] > c[static_cast<std::size_t>(last)]) break;
    }
    for (int k = first; k <= last; ++k) {
      level[static_cast<std::size_t>(x)] = k;
      run(i + 1, partial + c[static_cast<std::size_t>(k)]);
    }
    level[static_cast<std::size_t>(x)] = -1;
  }
};

}  // namespace

OracleResult grid_optimum(const Eigen::Ref<const Eigen::VectorXd>& responses, const PartialOrderDag& dag,
                          const LossSpec& spec, const GridSpec& grid) {
  const int n = dag.size();
  if (n > kOracleMaxNodes) throw TooLarge("oracle is limited to " + std::to_string(kOracleMaxNodes) + " nodes");
  if (responses.size() != n) throw Error("response vector does not match the node count");
  if (n == 0) throw EmptySubset();
  validate(dag);
  validate_responses(spec, responses);

  const auto values = grid_values(grid, responses, spec);
  const auto order = topological_order(dag);
  Search s{dag, order, values, {}, {}, std::vector<int>(static_cast<std::size_t>(n), -1), {}};
  s.cost.resize(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    for (double v : values) s.cost[static_cast<std::size_t>(x)].push_back(loss_value(spec, responses[x], v));
  s.suffix_bound.assign(order.size() + 1, 0.0);
  for (std::size_t i = order.size(); i-- > 0;) {
    const auto& c = s.cost[static_cast<std::size_t>(order[i])];
    s.suffix_bound[i] = s.suffix_bound[i + 1] + *std::min_element(c.begin(), c.end());
  }
  s.run(0, 0.0);

  OracleResult r{Eigen::VectorXd(n), 0.0};
  for (int x = 0; x < n; ++x) r.g_hat[x] = values[static_cast<std::size_t>(s.best_level[static_cast<std::size_t>(x)])];
  double total = 0;
  for (int x = 0; x < n; ++x) total += loss_value(spec, responses[x], r.g_hat[x]);
  r.objective = total;
  return r;
}

Eigen::VectorXd pava(const Eigen::Ref<const Eigen::VectorXd>& responses, const PartialOrderDag& dag,
                     const LossSpec& spec) {
  const int n = dag.size();
  if (responses.size() != n) throw Error("response vector does not match the node count");
  validate(dag);
  validate_responses(spec, responses);
  const auto order = topological_order(dag);
  auto succ_has = [&](int x, int y) {
    auto s = dag.successors(x);
    return std::find(s.begin(), s.end(), y) != s.end();
  };
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    if (!succ_has(order[i], order[i + 1])) throw NotAChain();

  struct Block {
    std::size_t begin, end;  // positions in `order`
    double value;
  };
  auto block_cf = [&](std::size_t begin, std::size_t end) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(end - begin));
    for (std::size_t i = begin; i < end; ++i) y[static_cast<Eigen::Index>(i - begin)] = responses[order[i]];
    return constant_fit_interval(y, spec);
  };

  std::vector<Block> blocks;
  for (std::size_t i = 0; i < order.size(); ++i) {
    Block cur{i, i + 1, root_fit(block_cf(i, i + 1), RootPolicy::Midpoint)};
    while (!blocks.empty() && blocks.back().value > cur.value) {
      const Block prev = blocks.back();
      blocks.pop_back();
      cur = {prev.begin, cur.end, closest_fit(prev.value, block_cf(prev.begin, cur.end))};
    }
    blocks.push_back(cur);
  }

  Eigen::VectorXd g(n);
  for (const auto& b : blocks)
    for (std::size_t i = b.begin; i < b.end; ++i) g[order[i]] = b.value;
  return g;
}

}  // namespace girp
