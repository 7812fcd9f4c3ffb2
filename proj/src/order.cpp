#include "girp/order.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace girp {

CycleError::CycleError(std::vector<int> cycle)
    : Error([&] {
        std::ostringstream os;
        os << "order relation has a cycle:";
        for (int x : cycle) os << ' ' << x;
        return os.str();
      }()),
      cycle_(std::move(cycle)) {}

NodeSubset NodeSubset::from_members(std::size_t universe, std::span<const int> members) {
  NodeSubset s(universe);
  for (int x : members) s.insert(x);
  return s;
}

std::size_t NodeSubset::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<int> NodeSubset::members() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(static_cast<int>(i));
  return out;
}

NodeSubset NodeSubset::complement() const {
  NodeSubset c(universe());
  for (std::size_t i = 0; i < bits_.size(); ++i) c.bits_[i] = bits_[i] ? 0 : 1;
  return c;
}

bool NodeSubset::intersects(const NodeSubset& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && other.bits_[i]) return true;
  return false;
}

namespace {

void build_csr(int n, const std::vector<Edge>& edges, bool forward, std::vector<int>& offsets,
               std::vector<int>& targets) {
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges) ++offsets[static_cast<std::size_t>(forward ? e.from : e.to) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  targets.resize(edges.size());
  std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& e : edges) {
    int src = forward ? e.from : e.to;
    targets[static_cast<std::size_t>(cursor[static_cast<std::size_t>(src)]++)] = forward ? e.to : e.from;
  }
}

}  // namespace

PartialOrderDag::PartialOrderDag(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) throw Error("node count must be nonnegative");
  for (const auto& e : edges)
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) throw Error("edge endpoint out of range");
  std::erase_if(edges, [](const Edge& e) { return e.from == e.to; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  build_csr(n_, edges_, true, succ_offsets_, succ_);
  build_csr(n_, edges_, false, pred_offsets_, pred_);
}

std::span<const int> PartialOrderDag::successors(int x) const {
  auto i = static_cast<std::size_t>(x);
  return {succ_.data() + succ_offsets_[i], succ_.data() + succ_offsets_[i + 1]};
}

std::span<const int> PartialOrderDag::predecessors(int x) const {
  auto i = static_cast<std::size_t>(x);
  return {pred_.data() + pred_offsets_[i], pred_.data() + pred_offsets_[i + 1]};
}

std::vector<int> topological_order(const PartialOrderDag& dag) {
  const int n = dag.size();
  std::vector<int> indegree(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) indegree[static_cast<std::size_t>(x)] = static_cast<int>(dag.predecessors(x).size());
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    if (indegree[static_cast<std::size_t>(x)] == 0) order.push_back(x);
  for (std::size_t head = 0; head < order.size(); ++head)
    for (int y : dag.successors(order[head]))
      if (--indegree[static_cast<std::size_t>(y)] == 0) order.push_back(y);
  return order;  // shorter than n iff there is a cycle
}

void validate(const PartialOrderDag& dag) {
  const int n = dag.size();
  if (static_cast<int>(topological_order(dag).size()) == n) return;

  // Iterative DFS to extract one cycle.
  enum : std::uint8_t { White, Grey, Black };
  std::vector<std::uint8_t> colour(static_cast<std::size_t>(n), White);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  for (int root = 0; root < n; ++root) {
    if (colour[static_cast<std::size_t>(root)] != White) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    colour[static_cast<std::size_t>(root)] = Grey;
    while (!stack.empty()) {
      auto& [x, next] = stack.back();
      auto succ = dag.successors(x);
      if (next == succ.size()) {
        colour[static_cast<std::size_t>(x)] = Black;
        stack.pop_back();
        continue;
      }
      int y = succ[next++];
      auto& cy = colour[static_cast<std::size_t>(y)];
      if (cy == Grey) {
        std::vector<int> cycle{y};
        for (int v = x; v != y; v = parent[static_cast<std::size_t>(v)]) cycle.push_back(v);
        std::reverse(cycle.begin() + 1, cycle.end());
        throw CycleError(std::move(cycle));
      }
      if (cy == White) {
        cy = Grey;
        parent[static_cast<std::size_t>(y)] = x;
        stack.emplace_back(y, 0);
      }
    }
  }
  throw CycleError({});
}

bool is_upper_set(const PartialOrderDag& dag, const NodeSubset& s) {
  for (const auto& e : dag.edges())
    if (s.contains(e.from) && !s.contains(e.to)) return false;
  return true;
}

bool is_lower_set(const PartialOrderDag& dag, const NodeSubset& s) {
  for (const auto& e : dag.edges())
    if (s.contains(e.to) && !s.contains(e.from)) return false;
  return true;
}

IsotonicReport is_isotonic(const PartialOrderDag& dag, const Eigen::Ref<const Eigen::VectorXd>& f,
                           double tol) {
  if (f.size() != dag.size()) throw Error("function size does not match the node count");
  IsotonicReport report;
  for (const auto& e : dag.edges())
    if (f[e.from] > f[e.to] + tol) report.violations.push_back(e);
  report.isotonic = report.violations.empty();
  return report;
}

InducedSubgraph induced_subgraph(const PartialOrderDag& dag, std::span<const int> sorted_members) {
  if (sorted_members.empty()) throw EmptySubset();
  std::vector<int> local(static_cast<std::size_t>(dag.size()), -1);
  for (std::size_t i = 0; i < sorted_members.size(); ++i)
    local[static_cast<std::size_t>(sorted_members[i])] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < sorted_members.size(); ++i)
    for (int y : dag.successors(sorted_members[i]))
      if (int ly = local[static_cast<std::size_t>(y)]; ly >= 0) edges.push_back({static_cast<int>(i), ly});
  return {PartialOrderDag(static_cast<int>(sorted_members.size()), std::move(edges)),
          std::vector<int>(sorted_members.begin(), sorted_members.end())};
}

InducedSubgraph induced_subgraph(const PartialOrderDag& dag, const NodeSubset& s) {
  auto members = s.members();
  return induced_subgraph(dag, members);
}

PartialOrderDag dominance_order(const Eigen::Ref<const Eigen::MatrixXd>& points) {
  const auto n = points.rows();
  if (points.cols() < 1) throw Error("dominance order needs at least one coordinate");
  std::vector<Edge> edges;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      bool le = (points.row(i).array() <= points.row(j).array()).all();
      bool ge = (points.row(i).array() >= points.row(j).array()).all();
      if (le && ge) throw DuplicatePoint(static_cast<int>(i), static_cast<int>(j));
      if (le) edges.push_back({static_cast<int>(i), static_cast<int>(j)});
      if (ge) edges.push_back({static_cast<int>(j), static_cast<int>(i)});
    }
  }
  return PartialOrderDag(static_cast<int>(n), std::move(edges));
}

}  // namespace girp

namespace girp {

DuplicatePoint::DuplicatePoint(int a, int b)
    : Error("points " + std::to_string(a) + " and " + std::to_string(b) + " have identical covariates"),
      first(a),
      second(b) {}

PartialOrderDag transitive_reduction(const PartialOrderDag& dag) {
  const int n = dag.size();
  const auto order = topological_order(dag);
  if (static_cast<int>(order.size()) != n) validate(dag);
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  // reach[x]: nodes strictly above x.
  std::vector<std::uint64_t> reach(static_cast<std::size_t>(n) * words, 0);
  auto row = [&](int x) { return reach.data() + static_cast<std::size_t>(x) * words; };
  auto test = [&](const std::uint64_t* r, int y) { return (r[y / 64] >> (y % 64)) & 1U; };
  std::vector<std::uint64_t> via(words);
  std::vector<Edge> kept;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int x = *it;
    std::fill(via.begin(), via.end(), 0);
    for (int z : dag.successors(x)) {
      const auto* rz = row(z);
      for (std::size_t w = 0; w < words; ++w) via[w] |= rz[w];
    }
    auto* rx = row(x);
    for (int y : dag.successors(x)) {
      if (!test(via.data(), y)) kept.push_back({x, y});
      rx[static_cast<std::size_t>(y) / 64] |= std::uint64_t{1} << (y % 64);
    }
    for (std::size_t w = 0; w < words; ++w) rx[w] |= via[w];
  }
  return PartialOrderDag(n, std::move(kept));
}

}  // namespace girp
