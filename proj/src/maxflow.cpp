#include "girp/maxflow.hpp"

#include <algorithm>
#include <limits>

namespace girp {

FlowNetwork::FlowNetwork(int nodes, double tol) : tol_(tol), head_(static_cast<std::size_t>(nodes), -1) {}

int FlowNetwork::add_arc(int from, int to, double capacity) {
  int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, head_[static_cast<std::size_t>(from)], capacity});
  head_[static_cast<std::size_t>(from)] = id;
  arcs_.push_back({from, head_[static_cast<std::size_t>(to)], 0.0});
  head_[static_cast<std::size_t>(to)] = id + 1;
  return id;
}

bool FlowNetwork::build_levels(int source, int sink) {
  level_.assign(head_.size(), -1);
  std::vector<int> queue{source};
  level_[static_cast<std::size_t>(source)] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int x = queue[i];
    for (int a = head_[static_cast<std::size_t>(x)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
      const auto& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.capacity > tol_ && level_[static_cast<std::size_t>(arc.to)] < 0) {
        level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(x)] + 1;
        queue.push_back(arc.to);
      }
    }
  }
  return level_[static_cast<std::size_t>(sink)] >= 0;
}

double FlowNetwork::push(int x, int sink, double limit) {
  if (x == sink) return limit;
  double sent = 0;
  for (int& a = cursor_[static_cast<std::size_t>(x)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
    auto& arc = arcs_[static_cast<std::size_t>(a)];
    if (arc.capacity <= tol_ || level_[static_cast<std::size_t>(arc.to)] != level_[static_cast<std::size_t>(x)] + 1)
      continue;
    double pushed = push(arc.to, sink, std::min(limit - sent, arc.capacity));
    if (pushed > 0) {
      arc.capacity -= pushed;
      arcs_[static_cast<std::size_t>(a ^ 1)].capacity += pushed;
      sent += pushed;
      if (limit - sent <= tol_) return sent;
    }
  }
  return sent;
}

double FlowNetwork::max_flow(int source, int sink) {
  double total = 0;
  while (build_levels(source, sink)) {
    cursor_ = head_;
    while (true) {
      double f = push(source, sink, std::numeric_limits<double>::infinity());
      if (f <= tol_) break;
      total += f;
    }
  }
  return total;
}

std::vector<std::uint8_t> FlowNetwork::reachable_from(int source) const {
  std::vector<std::uint8_t> seen(head_.size(), 0);
  std::vector<int> stack{source};
  seen[static_cast<std::size_t>(source)] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int a = head_[static_cast<std::size_t>(x)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
      const auto& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.capacity > tol_ && !seen[static_cast<std::size_t>(arc.to)]) {
        seen[static_cast<std::size_t>(arc.to)] = 1;
        stack.push_back(arc.to);
      }
    }
  }
  return seen;
}

std::vector<std::uint8_t> FlowNetwork::reaching(int sink) const {
  std::vector<std::uint8_t> seen(head_.size(), 0);
  std::vector<int> stack{sink};
  seen[static_cast<std::size_t>(sink)] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    // arc a enters x; its partner a^1 leaves x, so arc a starts at arcs_[a^1].to
    for (int b = head_[static_cast<std::size_t>(x)]; b >= 0; b = arcs_[static_cast<std::size_t>(b)].next) {
      const auto& incoming = arcs_[static_cast<std::size_t>(b ^ 1)];
      int from = arcs_[static_cast<std::size_t>(b)].to;
      if (incoming.capacity > tol_ && !seen[static_cast<std::size_t>(from)]) {
        seen[static_cast<std::size_t>(from)] = 1;
        stack.push_back(from);
      }
    }
  }
  return seen;
}

}  // namespace girp
