#pragma once

#include <Eigen/Core>
#include <span>

#include "girp/interval.hpp"
#include "girp/losses.hpp"
#include "girp/order.hpp"

namespace girp {

// Zero test for the partition objective and for cut values.
inline constexpr double kCutTol = 1e-9;

// u_x = max and l_x = min of the coordinate subdifferential at b.
struct CutWeights {
  Eigen::VectorXd upper;
  Eigen::VectorXd lower;
};

CutWeights cut_weights(const Eigen::Ref<const Eigen::VectorXd>& responses, const LossSpec& spec, double b);

// -sum_{x in S} subdifferential(l(g(x), .), b); [0, 0] for the empty set.
IntervalD sigma(const NodeSubset& s, double b, const Eigen::Ref<const Eigen::VectorXd>& responses,
                const LossSpec& spec);

enum class ClosureSide { UpperSet, LowerSet };

// Selection among optimal closures.
//   Minimal, Maximal: the inclusion-extreme optimal set.
//   Positional: among optimal sets, maximise sum (p_x - mean p) for upper sets
//     (sum (mean p - p_x) for lower sets), where p is the node priority (node
//     position by default); remaining ties go to the inclusion-minimal set.
//   MinimalNonempty: the inclusion-minimal set when it is nonempty, else the
//     smallest nonempty optimal set (lowest priority first among equals).
enum class TieBreak { Minimal, Maximal, Positional, MinimalNonempty, PositionalNonempty };

struct ClosureResult {
  NodeSubset set;
  double value = 0;
};

// Maximise sum_{x in S} w_x over upper (or lower) sets S, by one minimum s-t
// cut on the project-selection network.
ClosureResult max_closure(const PartialOrderDag& dag, std::span<const double> weights, ClosureSide side,
                          TieBreak ties = TieBreak::Minimal, std::span<const double> priority = {});

struct PartitionResult {
  NodeSubset upper;
  NodeSubset lower;
  double min_sigma_upper = 0;  // -sum_{x in U} u_x
  double max_sigma_lower = 0;  // -sum_{x in L} l_x
  double objective = 0;        // min_sigma_upper - max_sigma_lower
};

struct PartitionOptions {
  TieBreak ties = TieBreak::Positional;
  std::span<const double> priority = {};
};

// Maximal upper set and minimal lower set at b, made disjoint by replacing
// L with the complement of U when the two optima overlap.
PartitionResult find_partition(const PartialOrderDag& dag, const Eigen::Ref<const Eigen::VectorXd>& responses,
                               const LossSpec& spec, double b, const PartitionOptions& options = {});

}  // namespace girp
