#pragma once

#include <Eigen/Core>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "girp/errors.hpp"

namespace girp {

// x <= y in the partial order.
struct Edge {
  int from = 0;
  int to = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Indicator set over the dense node ids 0..n-1 of a DAG.
class NodeSubset {
 public:
  NodeSubset() = default;
  explicit NodeSubset(std::size_t universe, bool full = false) : bits_(universe, full ? 1 : 0) {}
  static NodeSubset from_members(std::size_t universe, std::span<const int> members);

  std::size_t universe() const { return bits_.size(); }
  bool contains(int x) const { return bits_[static_cast<std::size_t>(x)] != 0; }
  void insert(int x) { bits_[static_cast<std::size_t>(x)] = 1; }
  void erase(int x) { bits_[static_cast<std::size_t>(x)] = 0; }

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool full() const { return count() == universe(); }
  std::vector<int> members() const;
  NodeSubset complement() const;
  bool intersects(const NodeSubset& other) const;

  friend bool operator==(const NodeSubset&, const NodeSubset&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Finite partial order given by a generating edge set. Self loops are dropped
// and duplicate edges collapsed; acyclicity is checked by validate().
class PartialOrderDag {
 public:
  PartialOrderDag() = default;
  PartialOrderDag(int n, std::vector<Edge> edges);

  int size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const int> successors(int x) const;
  std::span<const int> predecessors(int x) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> succ_offsets_, succ_;
  std::vector<int> pred_offsets_, pred_;
};

// Throws CycleError carrying one cycle if the relation is not antisymmetric.
void validate(const PartialOrderDag& dag);
std::vector<int> topological_order(const PartialOrderDag& dag);

bool is_upper_set(const PartialOrderDag& dag, const NodeSubset& s);
bool is_lower_set(const PartialOrderDag& dag, const NodeSubset& s);

struct IsotonicReport {
  bool isotonic = true;
  std::vector<Edge> violations;  // every edge (x, y) with f(x) > f(y) + tol
};

IsotonicReport is_isotonic(const PartialOrderDag& dag, const Eigen::Ref<const Eigen::VectorXd>& f,
                           double tol = 0.0);

struct InducedSubgraph {
  PartialOrderDag dag;
  std::vector<int> to_parent;  // local id -> parent id, ascending
};

InducedSubgraph induced_subgraph(const PartialOrderDag& dag, const NodeSubset& s);
InducedSubgraph induced_subgraph(const PartialOrderDag& dag, std::span<const int> sorted_members);

// Hasse diagram: the same order generated by its covering edges only.
PartialOrderDag transitive_reduction(const PartialOrderDag& dag);

// Componentwise dominance on the rows of `points`: edge (i, j) iff
// points.row(i) <= points.row(j). Identical rows throw DuplicatePoint.
PartialOrderDag dominance_order(const Eigen::Ref<const Eigen::MatrixXd>& points);

}  // namespace girp
