#pragma once

#include <Eigen/Core>

#include "girp/interval.hpp"
#include "girp/losses.hpp"

namespace girp {

// Logistic fits bracket the minimizer in [-kMaxFit, kMaxFit] and bisect to kFitTol.
inline constexpr double kFitTol = 1e-10;
inline constexpr double kMaxFit = 1e6;

// argmin_y sum_i l(a_i, y). When the infimum is not attained (logistic with
// single-signed responses) `attained` is false and `interval` is the point at
// infinity the minimizing sequence escapes to.
struct ConstantFitResult {
  IntervalD interval;
  bool attained = true;
};

ConstantFitResult constant_fit_interval(const Eigen::Ref<const Eigen::VectorXd>& responses,
                                        const LossSpec& spec);

// Total subdifferential of y -> sum_i l(a_i, y).
IntervalD total_subdifferential(const Eigen::Ref<const Eigen::VectorXd>& responses, const LossSpec& spec,
                                double y);

double total_loss(const Eigen::Ref<const Eigen::VectorXd>& responses, const LossSpec& spec, double y);

enum class RootPolicy { Midpoint, Lo, Hi };

// Point of the fit interval nearest parent_b. Throws NoMinimizer if not attained.
double closest_fit(double parent_b, const ConstantFitResult& cf);

double root_fit(const ConstantFitResult& cf, RootPolicy policy);

}  // namespace girp
