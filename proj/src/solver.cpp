#include "girp/solver.hpp"

#include <algorithm>
#include <cmath>

namespace girp {

namespace {

constexpr double kDegenerate = 1e-12;

Eigen::VectorXd gather(const Eigen::Ref<const Eigen::VectorXd>& v, const std::vector<int>& ids) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[ids[i]];
  return out;
}

struct Pending {
  int node;
  std::optional<double> parent_b;
};

void finish(FitResult& r, const PartialOrderDag& dag, const Eigen::Ref<const Eigen::VectorXd>& responses,
            const LossSpec& spec, double tol) {
  r.g_hat = assemble(r.tree, dag.size());
  r.objective = objective(responses, spec, r.g_hat);
  auto report = is_isotonic(dag, r.g_hat, tol);
  r.isotonic = report.isotonic;
  r.violations = std::move(report.violations);
}

}  // namespace

TieBreak default_ties(Mode mode) {
  return mode == Mode::Original ? TieBreak::PositionalNonempty : TieBreak::Positional;
}

int PartitionTree::height() const {
  int h = 0;
  for (const auto& n : nodes) h = std::max(h, n.depth);
  return h;
}

double objective(const Eigen::Ref<const Eigen::VectorXd>& responses, const LossSpec& spec,
                 const Eigen::Ref<const Eigen::VectorXd>& g_hat) {
  double total = 0;
  for (Eigen::Index i = 0; i < responses.size(); ++i) total += loss_value(spec, responses[i], g_hat[i]);
  return total;
}

Eigen::VectorXd assemble(const PartitionTree& tree, int n) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  if (tree.nodes.empty()) return g;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const auto& node = tree.nodes[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    if (node.leaf()) {
      for (int x : node.subset) g[x] = node.fit;
    } else {
      stack.push_back(node.lower);
      stack.push_back(node.upper);
    }
  }
  return g;
}

FitResult fit(const Eigen::Ref<const Eigen::VectorXd>& responses, const PartialOrderDag& dag, const LossSpec& spec,
              const FitOptions& options) {
  if (responses.size() != dag.size()) throw Error("response vector does not match the node count");
  if (dag.size() == 0) throw EmptySubset();
  validate(dag);
  validate_responses(spec, responses);
  // Every visited subset is convex, so covering edges give the same cuts.
  const PartialOrderDag hasse = transitive_reduction(dag);

  FitResult result;
  result.mode = options.mode;
  auto& nodes = result.tree.nodes;
  {
    TreeNode root;
    root.subset.resize(static_cast<std::size_t>(dag.size()));
    for (int i = 0; i < dag.size(); ++i) root.subset[static_cast<std::size_t>(i)] = i;
    nodes.push_back(std::move(root));
  }

  const TieBreak ties = options.ties.value_or(default_ties(options.mode));
  std::vector<Pending> stack{{0, std::nullopt}};
  std::vector<double> priority;
  while (!stack.empty()) {
    const Pending job = stack.back();
    stack.pop_back();

    const std::vector<int> members = nodes[static_cast<std::size_t>(job.node)].subset;
    const int depth = nodes[static_cast<std::size_t>(job.node)].depth;
    Eigen::VectorXd y = gather(responses, members);

    auto cf = constant_fit_interval(y, spec);
    double b = 0;
    try {
      if (options.mode == Mode::Original) {
        if (!cf.attained) throw NoMinimizer();
        b = std::isfinite(cf.interval.hi()) ? cf.interval.hi() : cf.interval.lo();
      } else {
        b = job.parent_b ? closest_fit(*job.parent_b, cf) : root_fit(cf, options.root);
      }
    } catch (const NoMinimizer&) {
      throw NoMinimizer(members);
    }
    {
      auto& node = nodes[static_cast<std::size_t>(job.node)];
      node.fit = b;
      node.cf = cf.interval;
    }

    if (members.size() == 1) continue;
    if (options.max_depth && depth >= *options.max_depth) continue;

    auto local = induced_subgraph(hasse, members);
    priority.assign(members.begin(), members.end());
    auto part = find_partition(local.dag, y, spec, b, {ties, priority});
    nodes[static_cast<std::size_t>(job.node)].objective = part.objective;

    bool split = false;
    if (options.mode == Mode::Modified) {
      split = std::abs(part.min_sigma_upper) > options.tol || std::abs(part.max_sigma_lower) > options.tol;
    } else {
      split = part.objective > options.tol || cf.interval.hi() - cf.interval.lo() > kDegenerate;
    }
    if (!split) continue;

    const std::size_t count = members.size();
    NodeSubset upper;
    if (!part.upper.empty() && part.upper.count() < count) {
      upper = part.upper;
    } else if (!part.lower.empty() && part.lower.count() < count) {
      upper = part.lower.complement();
    } else {
      continue;
    }

    TreeNode lo_child, hi_child;
    lo_child.depth = hi_child.depth = depth + 1;
    for (std::size_t i = 0; i < count; ++i)
      (upper.contains(static_cast<int>(i)) ? hi_child : lo_child).subset.push_back(members[i]);

    const int lo_index = static_cast<int>(nodes.size());
    nodes.push_back(std::move(lo_child));
    nodes.push_back(std::move(hi_child));
    nodes[static_cast<std::size_t>(job.node)].lower = lo_index;
    nodes[static_cast<std::size_t>(job.node)].upper = lo_index + 1;

    const std::optional<double> pass_b = options.mode == Mode::Modified ? std::optional<double>(b) : std::nullopt;
    stack.push_back({lo_index + 1, pass_b});
    stack.push_back({lo_index, pass_b});
  }

  finish(result, dag, responses, spec, options.tol);
  return result;
}

FitResult truncate(const FitResult& result, int depth, const PartialOrderDag& dag,
                   const Eigen::Ref<const Eigen::VectorXd>& responses, const LossSpec& spec) {
  if (depth < 0) throw Error("truncation depth must be nonnegative");
  FitResult out;
  out.mode = result.mode;
  if (result.tree.nodes.empty()) return out;

  // Re-index the kept nodes so that children still follow parents.
  std::vector<std::pair<int, int>> stack{{0, -1}};
  while (!stack.empty()) {
    auto [src, parent] = stack.back();
    stack.pop_back();
    TreeNode node = result.tree.nodes[static_cast<std::size_t>(src)];
    const bool cut = node.depth >= depth;
    const int lower = node.lower, upper = node.upper;
    node.lower = node.upper = -1;
    const int index = static_cast<int>(out.tree.nodes.size());
    out.tree.nodes.push_back(std::move(node));
    if (parent >= 0) {
      auto& p = out.tree.nodes[static_cast<std::size_t>(parent)];
      (p.lower < 0 ? p.lower : p.upper) = index;
    }
    if (!cut && lower >= 0) {
      stack.push_back({upper, index});
      stack.push_back({lower, index});
    }
  }
  finish(out, dag, responses, spec, kCutTol);
  return out;
}

}  // namespace girp
