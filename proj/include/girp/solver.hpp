#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "girp/cut.hpp"
#include "girp/fitting.hpp"
#include "girp/losses.hpp"
#include "girp/order.hpp"

namespace girp {

enum class Mode { Modified, Original };

struct FitOptions {
  Mode mode = Mode::Modified;
  RootPolicy root = RootPolicy::Midpoint;
  std::optional<int> max_depth;
  // Unset: Positional in modified mode, PositionalNonempty in original mode.
  std::optional<TieBreak> ties;
  double tol = kCutTol;
};

struct TreeNode {
  std::vector<int> subset;  // ascending node ids
  double fit = 0;
  IntervalD cf{0.0};        // constant-fit interval of the subset
  int depth = 0;
  int lower = -1;           // child indices into PartitionTree::nodes, -1 for leaves
  int upper = -1;
  double objective = 0;     // partition objective at `fit`; 0 when not evaluated

  bool leaf() const { return lower < 0; }
};

// Root is nodes[0]; children always follow their parent.
struct PartitionTree {
  std::vector<TreeNode> nodes;
  int height() const;
};

struct FitResult {
  Eigen::VectorXd g_hat;
  PartitionTree tree;
  Mode mode = Mode::Modified;
  double objective = 0;
  bool isotonic = true;
  std::vector<Edge> violations;
};

TieBreak default_ties(Mode mode);

// Recursive partitioning fit. Throws NoMinimizer (with the offending subset)
// if some visited subset has no constant fit.
FitResult fit(const Eigen::Ref<const Eigen::VectorXd>& responses, const PartialOrderDag& dag, const LossSpec& spec,
              const FitOptions& options = {});

// Cut the tree below `depth`: nodes at that depth become leaves with their own fit.
FitResult truncate(const FitResult& result, int depth, const PartialOrderDag& dag,
                   const Eigen::Ref<const Eigen::VectorXd>& responses, const LossSpec& spec);

// Fitted function assembled from the leaves of `tree`.
Eigen::VectorXd assemble(const PartitionTree& tree, int n);

double objective(const Eigen::Ref<const Eigen::VectorXd>& responses, const LossSpec& spec,
                 const Eigen::Ref<const Eigen::VectorXd>& g_hat);

}  // namespace girp
