#pragma once

#include <cstdint>
#include <vector>

namespace girp {

// Dinic max-flow on real capacities. Residual capacities at or below `tol`
// count as saturated.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes, double tol = 1e-9);

  int add_arc(int from, int to, double capacity);
  double max_flow(int source, int sink);

  // Nodes reachable from `source` in the residual graph.
  std::vector<std::uint8_t> reachable_from(int source) const;
  // Nodes that can reach `sink` in the residual graph.
  std::vector<std::uint8_t> reaching(int sink) const;

  // Residual arcs (from, to) with positive residual capacity.
  template <typename F>
  void for_each_residual_arc(F&& f) const {
    for (std::size_t a = 0; a < arcs_.size(); ++a)
      if (arcs_[a].capacity > tol_) f(arcs_[a ^ 1].to, arcs_[a].to);
  }

  int size() const { return static_cast<int>(head_.size()); }

 private:
  struct Arc {
    int to;
    int next;
    double capacity;  // residual
  };

  bool build_levels(int source, int sink);
  double push(int x, int sink, double limit);

  double tol_;
  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_, cursor_;
};

}  // namespace girp
