#pragma once

#include <Eigen/Core>
#include <string>
#include <string_view>
#include <vector>

#include "girp/interval.hpp"

namespace girp {

enum class LossKind { Squared, Huber, EpsInsensitive, Logistic, Hinge };

// Coordinate loss l(a, y): a is the observed response, y the fitted value.
struct LossSpec {
  LossKind kind = LossKind::Squared;
  double delta = 1.0;    // Huber threshold, > 0
  double epsilon = 0.0;  // insensitivity width, >= 0

  static LossSpec squared() { return {LossKind::Squared}; }
  static LossSpec huber(double delta);
  static LossSpec eps_insensitive(double epsilon);
  static LossSpec logistic() { return {LossKind::Logistic}; }
  static LossSpec hinge() { return {LossKind::Hinge}; }

  bool classification() const { return kind == LossKind::Logistic || kind == LossKind::Hinge; }
  bool differentiable() const {
    return kind == LossKind::Squared || kind == LossKind::Huber || kind == LossKind::Logistic;
  }
  // Largest |subgradient| over all (a, y), or +inf for the squared loss.
  double lipschitz() const;
};

// Grammar: "squared" | "huber:<delta>" | "eps:<epsilon>" | "logistic" | "hinge".
LossSpec parse_loss(std::string_view text);
std::string to_string(const LossSpec& spec);

// Throws DomainError if a classification loss sees a response other than +-1.
void validate_responses(const LossSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& a);

double loss_value(const LossSpec& spec, double a, double y);

// Subdifferential of y -> l(a, y). Kinks are detected by exact comparison.
IntervalD subdifferential(const LossSpec& spec, double a, double y);

// Points where the derivative of y -> l(a, y) changes form (kinks and the
// squared/Huber pieces); empty for the logistic loss.
std::vector<double> breakpoints(const LossSpec& spec, double a);

namespace detail {
// Unchecked variants for hot loops; responses are validated once per data set.
double loss_value_unchecked(const LossSpec& spec, double a, double y);
IntervalD subdifferential_unchecked(const LossSpec& spec, double a, double y);
}  // namespace detail

}  // namespace girp
