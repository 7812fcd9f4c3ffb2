#include "girp/check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "girp/oracle.hpp"
#include "girp/solver.hpp"

namespace girp {

Instance random_instance(Rng& rng, int size, const LossSpec& spec, double density) {
  if (size < 1) throw DomainError("instance size must be positive");
  std::vector<int> perm(static_cast<std::size_t>(size));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = size - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  std::vector<Edge> edges;
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j)
      if (rng.uniform() < density) edges.push_back({perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]});
  Eigen::VectorXd y(size);
  for (int i = 0; i < size; ++i) y[i] = spec.classification() ? (rng.uniform() < 0.5 ? -1.0 : 1.0) : rng.uniform(0, 5);
  return {std::move(y), PartialOrderDag(size, std::move(edges))};
}

double oracle_tolerance(const LossSpec& spec, int size, double step) {
  switch (spec.kind) {
    case LossKind::Huber: return 2.0 * spec.delta * step;
    case LossKind::Squared: return size * step * step / 8.0;
    case LossKind::Logistic: return size * step * step / 8.0;  // curvature at most 1/4 < 1
    case LossKind::EpsInsensitive:
    case LossKind::Hinge: return 1e-6;
  }
  return 0;
}

bool OracleComparison::pass() const {
  if (no_minimizer) return true;
  return isotonic && solver_objective <= oracle_objective + 1e-9 && gap() <= tolerance;
}

OracleComparison compare_with_oracle(const Instance& inst, const LossSpec& spec, double step) {
  OracleComparison c;
  c.tolerance = oracle_tolerance(spec, inst.dag.size(), step);
  try {
    auto r = fit(inst.y, inst.dag, spec);
    c.solver_objective = r.objective;
    c.isotonic = r.isotonic;
  } catch (const NoMinimizer&) {
    c.no_minimizer = true;
    return c;
  }
  c.oracle_objective = grid_optimum(inst.y, inst.dag, spec, default_grid(inst.y, step)).objective;
  return c;
}

}  // namespace girp
