#pragma once

#include <Eigen/Core>
#include <vector>

#include "girp/losses.hpp"
#include "girp/order.hpp"

namespace girp {

inline constexpr int kOracleMaxNodes = 10;

// {lo, lo + step, ...} capped at hi, with hi always included.
struct GridSpec {
  double lo = 0;
  double hi = 0;
  double step = 0.05;
};

// step 0.05 over [min a - 2, max a + 2].
GridSpec default_grid(const Eigen::Ref<const Eigen::VectorXd>& responses, double step = 0.05);

// Grid points plus loss breakpoints and finite singleton constant-fit endpoints, sorted and unique.
std::vector<double> grid_values(const GridSpec& grid, const Eigen::Ref<const Eigen::VectorXd>& responses,
                                const LossSpec& spec);

struct OracleResult {
  Eigen::VectorXd g_hat;
  double objective = 0;
};

// Exhaustive search over isotonic grid-valued functions. Throws TooLarge above
// kOracleMaxNodes nodes.
OracleResult grid_optimum(const Eigen::Ref<const Eigen::VectorXd>& responses, const PartialOrderDag& dag,
                          const LossSpec& spec, const GridSpec& grid);

// Pool-adjacent-violators on a total order. Throws NotAChain otherwise.
Eigen::VectorXd pava(const Eigen::Ref<const Eigen::VectorXd>& responses, const PartialOrderDag& dag,
                     const LossSpec& spec);

}  // namespace girp
