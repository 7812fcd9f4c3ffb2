#include "girp/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace girp {

NoMinimizer::NoMinimizer(std::vector<int> subset)
    : Error("summed loss has no minimizer (perfectly separable data?)"), subset_(std::move(subset)) {}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Derivative {
  double lo = 0, hi = 0;  // left and right derivative of the summed loss
  double scale = 0;       // sum of |terms|, for roundoff-aware zero tests
};

Derivative derivative_at(const Eigen::Ref<const Eigen::VectorXd>& a, const LossSpec& spec, double y) {
  Derivative d;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    auto s = detail::subdifferential_unchecked(spec, a[i], y);
    d.lo += s.lo();
    d.hi += s.hi();
    d.scale += std::max(std::abs(s.lo()), std::abs(s.hi()));
  }
  return d;
}

// Treat values within accumulated roundoff of zero as zero.
int sign(double v, double scale) {
  double tol = 64 * std::numeric_limits<double>::epsilon() * scale;
  return v > tol ? 1 : (v < -tol ? -1 : 0);
}

ConstantFitResult logistic_fit(const Eigen::Ref<const Eigen::VectorXd>& a, const LossSpec& spec) {
  auto slope = [&](double y) { return derivative_at(a, spec, y).lo; };
  double lo = -kMaxFit, hi = kMaxFit;
  double dlo = slope(lo), dhi = slope(hi);
  if (!(dlo < 0)) return {IntervalD(-kInf), false};
  if (!(dhi > 0)) return {IntervalD(kInf), false};
  while (hi - lo > kFitTol) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (slope(mid) < 0 ? lo : hi) = mid;
  }
  return {IntervalD(0.5 * (lo + hi)), true};
}

}  // namespace

IntervalD total_subdifferential(const Eigen::Ref<const Eigen::VectorXd>& responses, const LossSpec& spec,
                                double y) {
  auto d = derivative_at(responses, spec, y);
  return {d.lo, d.hi};
}

double total_loss(const Eigen::Ref<const Eigen::VectorXd>& responses, const LossSpec& spec, double y) {
  double sum = 0;
  for (Eigen::Index i = 0; i < responses.size(); ++i) sum += detail::loss_value_unchecked(spec, responses[i], y);
  return sum;
}

// The summed subgradient is piecewise affine between the sorted breakpoints,
// so the argmin endpoints are found by locating the sign change of the left
// and right derivatives and interpolating inside the bracketing segment.
ConstantFitResult constant_fit_interval(const Eigen::Ref<const Eigen::VectorXd>& a, const LossSpec& spec) {
  if (a.size() == 0) throw EmptySubset();
  validate_responses(spec, a);
  if (spec.kind == LossKind::Logistic) return logistic_fit(a, spec);

  std::vector<double> knots;
  knots.reserve(static_cast<std::size_t>(2 * a.size()));
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (double t : breakpoints(spec, a[i])) knots.push_back(t);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::vector<Derivative> d(knots.size());
  for (std::size_t k = 0; k < knots.size(); ++k) d[k] = derivative_at(a, spec, knots[k]);
  auto neg_lo = [&](std::size_t k) { return sign(d[k].lo, d[k].scale); };
  auto neg_hi = [&](std::size_t k) { return sign(d[k].hi, d[k].scale); };

  // Slope of the derivative beyond the outermost knots.
  const double tail_slope = spec.kind == LossKind::Squared ? static_cast<double>(a.size()) : 0.0;
  const std::size_t last = knots.size() - 1;

  // lo = inf { y : right derivative(y) >= 0 }
  double lo = 0;
  {
    std::size_t k = 0;
    while (k < knots.size() && neg_hi(k) < 0) ++k;
    if (k == knots.size()) {
      if (tail_slope <= 0) return {IntervalD(kInf), false};
      lo = knots[last] - d[last].hi / tail_slope;
    } else if (k == 0) {
      int s = neg_lo(0);
      if (s < 0) lo = knots[0];
      else if (s == 0) lo = tail_slope > 0 ? knots[0] : -kInf;
      else if (tail_slope > 0) lo = knots[0] - d[0].lo / tail_slope;
      else return {IntervalD(-kInf), false};
    } else if (neg_lo(k) <= 0) {
      lo = knots[k];
    } else {
      double left = d[k - 1].hi, right = d[k].lo;
      lo = knots[k - 1] + (-left) * (knots[k] - knots[k - 1]) / (right - left);
    }
  }

  // hi = sup { y : left derivative(y) <= 0 }
  double hi = 0;
  {
    std::size_t k = knots.size();
    while (k > 0 && neg_lo(k - 1) > 0) --k;
    if (k == 0) {
      if (tail_slope <= 0) return {IntervalD(-kInf), false};
      hi = knots[0] - d[0].lo / tail_slope;
    } else {
      --k;
      if (k == last) {
        int s = neg_hi(last);
        if (s > 0) hi = knots[last];
        else if (s == 0) hi = tail_slope > 0 ? knots[last] : kInf;
        else if (tail_slope > 0) hi = knots[last] - d[last].hi / tail_slope;
        else return {IntervalD(kInf), false};
      } else if (neg_hi(k) >= 0) {
        hi = knots[k];
      } else {
        double left = d[k].hi, right = d[k + 1].lo;
        hi = knots[k] + (-left) * (knots[k + 1] - knots[k]) / (right - left);
      }
    }
  }

  if (hi < lo) hi = lo;  // both ends interpolated inside one affine segment
  return {IntervalD(lo, hi), true};
}

double closest_fit(double parent_b, const ConstantFitResult& cf) {
  if (!cf.attained) throw NoMinimizer();
  return cf.interval.clamp(parent_b);
}

double root_fit(const ConstantFitResult& cf, RootPolicy policy) {
  if (!cf.attained) throw NoMinimizer();
  const double lo = cf.interval.lo(), hi = cf.interval.hi();
  const bool lo_ok = std::isfinite(lo), hi_ok = std::isfinite(hi);
  if (!lo_ok && !hi_ok) return 0.0;
  switch (policy) {
    case RootPolicy::Midpoint:
      if (lo_ok && hi_ok) return 0.5 * (lo + hi);
      return lo_ok ? lo : hi;
    case RootPolicy::Lo: return lo_ok ? lo : hi;
    case RootPolicy::Hi: return hi_ok ? hi : lo;
  }
  return lo;
}

}  // namespace girp
