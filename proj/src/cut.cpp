#include "girp/cut.hpp"

#include <cmath>
#include <numeric>

#include "girp/maxflow.hpp"

namespace girp {

CutWeights cut_weights(const Eigen::Ref<const Eigen::VectorXd>& responses, const LossSpec& spec, double b) {
  CutWeights w{Eigen::VectorXd(responses.size()), Eigen::VectorXd(responses.size())};
  for (Eigen::Index i = 0; i < responses.size(); ++i) {
    auto s = detail::subdifferential_unchecked(spec, responses[i], b);
    w.upper[i] = s.hi();
    w.lower[i] = s.lo();
  }
  return w;
}

IntervalD sigma(const NodeSubset& s, double b, const Eigen::Ref<const Eigen::VectorXd>& responses,
                const LossSpec& spec) {
  IntervalD total(0.0);
  for (int x : s.members()) total += subdifferential(spec, responses[x], b);
  return -total;
}

namespace {

// Nodes 0..n-1 are the DAG nodes, n is the source and n+1 the sink. An arc
// x -> y of infinite capacity encodes "x selected implies y selected".
template <typename ArcList>
FlowNetwork closure_network(int n, std::span<const double> weights, const ArcList& implications) {
  double big = 1.0;
  for (double w : weights) big += std::abs(w);
  FlowNetwork net(n + 2, kCutTol);
  for (int x = 0; x < n; ++x) {
    double w = weights[static_cast<std::size_t>(x)];
    if (w > 0) net.add_arc(n, x, w);
    else if (w < 0) net.add_arc(x, n + 1, -w);
  }
  for (const auto& [x, y] : implications) net.add_arc(x, y, big);
  return net;
}

struct Extremes {
  std::vector<std::uint8_t> minimal;    // source side of the canonical min cut
  std::vector<std::uint8_t> excluded;   // nodes that reach the sink: outside every optimal set
  std::vector<std::pair<int, int>> free_arcs;  // residual implications among the undecided nodes
};

Extremes solve_closure(int n, std::span<const double> weights, const std::vector<std::pair<int, int>>& arcs,
                       bool want_free_arcs) {
  auto net = closure_network(n, weights, arcs);
  net.max_flow(n, n + 1);
  Extremes ex{net.reachable_from(n), net.reaching(n + 1), {}};
  ex.minimal.resize(static_cast<std::size_t>(n));
  ex.excluded.resize(static_cast<std::size_t>(n));
  if (want_free_arcs) {
    auto undecided = [&](int x) {
      return x < n && !ex.minimal[static_cast<std::size_t>(x)] && !ex.excluded[static_cast<std::size_t>(x)];
    };
    net.for_each_residual_arc([&](int from, int to) {
      if (undecided(from) && undecided(to)) ex.free_arcs.emplace_back(from, to);
    });
  }
  return ex;
}

}  // namespace

ClosureResult max_closure(const PartialOrderDag& dag, std::span<const double> weights, ClosureSide side,
                          TieBreak ties, std::span<const double> priority) {
  const int n = dag.size();
  if (static_cast<int>(weights.size()) != n) throw Error("weight vector does not match the node count");
  if (!priority.empty() && static_cast<int>(priority.size()) != n)
    throw Error("priority vector does not match the node count");

  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(dag.edges().size());
  for (const auto& e : dag.edges()) {
    if (side == ClosureSide::UpperSet) arcs.emplace_back(e.from, e.to);
    else arcs.emplace_back(e.to, e.from);
  }

  auto ex = solve_closure(n, weights, arcs, ties != TieBreak::Minimal && ties != TieBreak::Maximal);

  NodeSubset chosen(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    bool in = ties == TieBreak::Maximal ? !ex.excluded[static_cast<std::size_t>(x)]
                                         : ex.minimal[static_cast<std::size_t>(x)] != 0;
    if (in) chosen.insert(x);
  }

  if (ties == TieBreak::Positional || ties == TieBreak::PositionalNonempty) {
    // Second closure over the undecided nodes; residual arcs keep the result
    // inside the optimal face.
    std::vector<int> free_nodes, local(static_cast<std::size_t>(n), -1);
    for (int x = 0; x < n; ++x)
      if (!ex.minimal[static_cast<std::size_t>(x)] && !ex.excluded[static_cast<std::size_t>(x)]) {
        local[static_cast<std::size_t>(x)] = static_cast<int>(free_nodes.size());
        free_nodes.push_back(x);
      }
    if (!free_nodes.empty()) {
      auto position = [&](int x) { return priority.empty() ? static_cast<double>(x) : priority[static_cast<std::size_t>(x)]; };
      double mean = 0;
      for (int x = 0; x < n; ++x) mean += position(x);
      mean /= n;
      const double sign = side == ClosureSide::UpperSet ? 1.0 : -1.0;
      std::vector<double> secondary;
      for (int x : free_nodes) secondary.push_back(sign * (position(x) - mean));
      std::vector<std::pair<int, int>> free_arcs;
      for (auto [x, y] : ex.free_arcs) free_arcs.emplace_back(local[static_cast<std::size_t>(x)], local[static_cast<std::size_t>(y)]);
      const int m = static_cast<int>(free_nodes.size());
      auto second = solve_closure(m, secondary, free_arcs, false);
      for (int i = 0; i < m; ++i)
        if (second.minimal[static_cast<std::size_t>(i)]) chosen.insert(free_nodes[static_cast<std::size_t>(i)]);
    }
  }

  if ((ties == TieBreak::MinimalNonempty || ties == TieBreak::PositionalNonempty) && chosen.empty()) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [x, y] : ex.free_arcs) adj[static_cast<std::size_t>(x)].push_back(y);
    auto position = [&](int x) { return priority.empty() ? static_cast<double>(x) : priority[static_cast<std::size_t>(x)]; };
    std::vector<int> best;
    int best_root = -1;
    std::vector<int> seen(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
      if (ex.minimal[static_cast<std::size_t>(v)] || ex.excluded[static_cast<std::size_t>(v)]) continue;
      std::vector<int> reach{v};
      seen[static_cast<std::size_t>(v)] = v;
      for (std::size_t h = 0; h < reach.size(); ++h)
        for (int y : adj[static_cast<std::size_t>(reach[h])])
          if (seen[static_cast<std::size_t>(y)] != v) {
            seen[static_cast<std::size_t>(y)] = v;
            reach.push_back(y);
          }
      if (best_root < 0 || reach.size() < best.size() ||
          (reach.size() == best.size() && position(v) < position(best_root))) {
        best = std::move(reach);
        best_root = v;
      }
    }
    for (int x : best) chosen.insert(x);
  }

  double value = 0;
  for (int x = 0; x < n; ++x)
    if (chosen.contains(x)) value += weights[static_cast<std::size_t>(x)];
  return {std::move(chosen), value};
}

PartitionResult find_partition(const PartialOrderDag& dag, const Eigen::Ref<const Eigen::VectorXd>& responses,
                               const LossSpec& spec, double b, const PartitionOptions& options) {
  if (!std::isfinite(b)) throw DomainError("partition level b must be finite");
  if (responses.size() != dag.size()) throw Error("response vector does not match the node count");
  auto w = cut_weights(responses, spec, b);

  std::vector<double> upper_gain(static_cast<std::size_t>(dag.size())), lower_gain(upper_gain.size());
  for (int x = 0; x < dag.size(); ++x) {
    upper_gain[static_cast<std::size_t>(x)] = -w.upper[x];
    lower_gain[static_cast<std::size_t>(x)] = w.lower[x];
  }

  auto up = max_closure(dag, upper_gain, ClosureSide::UpperSet, options.ties, options.priority);
  auto low = max_closure(dag, lower_gain, ClosureSide::LowerSet, options.ties, options.priority);

  PartitionResult r;
  r.upper = std::move(up.set);
  r.lower = low.set.intersects(r.upper) ? r.upper.complement() : std::move(low.set);
  r.min_sigma_upper = 0;
  r.max_sigma_lower = 0;
  for (int x = 0; x < dag.size(); ++x) {
    if (r.upper.contains(x)) r.min_sigma_upper -= w.upper[x];
    if (r.lower.contains(x)) r.max_sigma_lower -= w.lower[x];
  }
  r.objective = r.min_sigma_upper - r.max_sigma_lower;
  return r;
}

}  // namespace girp
