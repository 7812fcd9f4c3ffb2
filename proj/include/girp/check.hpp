#pragma once

#include <Eigen/Core>
#include <string>

#include "girp/losses.hpp"
#include "girp/order.hpp"
#include "girp/simulate.hpp"

namespace girp {

struct Instance {
  Eigen::VectorXd y;
  PartialOrderDag dag;
};

// Random DAG on `size` nodes (edges follow a random permutation, each pair
// with probability `density`) and responses valid for `spec`: +-1 for
// classification losses, else uniform on [0, 5].
Instance random_instance(Rng& rng, int size, const LossSpec& spec, double density = 0.35);

// Allowed excess of the grid optimum over the exact optimum at grid `step`.
double oracle_tolerance(const LossSpec& spec, int size, double step);

struct OracleComparison {
  double solver_objective = 0;
  double oracle_objective = 0;
  double tolerance = 0;
  bool isotonic = true;
  bool no_minimizer = false;  // fit threw NoMinimizer; not a failure
  bool pass() const;
  double gap() const { return oracle_objective - solver_objective; }
};

OracleComparison compare_with_oracle(const Instance& inst, const LossSpec& spec, double step = 0.05);

}  // namespace girp
