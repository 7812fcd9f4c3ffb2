#include "girp/losses.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace girp {

namespace {

void check_label(const LossSpec& spec, double a) {
  if (spec.classification() && a != 1.0 && a != -1.0)
    throw DomainError("classification loss requires responses in {-1, +1}, got " + std::to_string(a));
}

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("invalid " + std::string(what) + " parameter '" + std::string(text) + "'");
  return value;
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

LossSpec LossSpec::huber(double delta) {
  if (!(delta > 0)) throw DomainError("huber loss requires delta > 0");
  LossSpec s{LossKind::Huber};
  s.delta = delta;
  return s;
}

LossSpec LossSpec::eps_insensitive(double epsilon) {
  if (!(epsilon >= 0)) throw DomainError("eps-insensitive loss requires epsilon >= 0");
  LossSpec s{LossKind::EpsInsensitive};
  s.epsilon = epsilon;
  return s;
}

double LossSpec::lipschitz() const {
  switch (kind) {
    case LossKind::Squared: return std::numeric_limits<double>::infinity();
    case LossKind::Huber: return delta;
    default: return 1.0;
  }
}

LossSpec parse_loss(std::string_view text) {
  auto colon = text.find(':');
  auto name = text.substr(0, colon);
  auto arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  bool has_arg = colon != std::string_view::npos;

  if (name == "squared" && !has_arg) return LossSpec::squared();
  if (name == "logistic" && !has_arg) return LossSpec::logistic();
  if (name == "hinge" && !has_arg) return LossSpec::hinge();
  if (name == "huber" && has_arg) return LossSpec::huber(parse_number(arg, "huber"));
  if (name == "eps" && has_arg) return LossSpec::eps_insensitive(parse_number(arg, "eps"));
  throw ParseError("unknown loss '" + std::string(text) +
                   "' (expected squared, huber:<delta>, eps:<epsilon>, logistic or hinge)");
}

std::string to_string(const LossSpec& spec) {
  std::ostringstream os;
  switch (spec.kind) {
    case LossKind::Squared: os << "squared"; break;
    case LossKind::Huber: os << "huber:" << spec.delta; break;
    case LossKind::EpsInsensitive: os << "eps:" << spec.epsilon; break;
    case LossKind::Logistic: os << "logistic"; break;
    case LossKind::Hinge: os << "hinge"; break;
  }
  return os.str();
}

void validate_responses(const LossSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i])) throw DomainError("responses must be finite");
    check_label(spec, a[i]);
  }
}

double loss_value(const LossSpec& spec, double a, double y) {
  check_label(spec, a);
  return detail::loss_value_unchecked(spec, a, y);
}

IntervalD subdifferential(const LossSpec& spec, double a, double y) {
  check_label(spec, a);
  return detail::subdifferential_unchecked(spec, a, y);
}

std::vector<double> breakpoints(const LossSpec& spec, double a) {
  switch (spec.kind) {
    case LossKind::Squared: return {a};
    case LossKind::Huber: return {a - spec.delta, a + spec.delta};
    case LossKind::EpsInsensitive: return {a - spec.epsilon, a + spec.epsilon};
    case LossKind::Hinge: return {a};  // a*y = 1 at y = a for a in {-1, +1}
    case LossKind::Logistic: return {};
  }
  return {};
}

namespace detail {

double loss_value_unchecked(const LossSpec& spec, double a, double y) {
  switch (spec.kind) {
    case LossKind::Squared: return 0.5 * (a - y) * (a - y);
    case LossKind::Huber: {
      double r = std::abs(a - y);
      return r <= spec.delta ? 0.5 * r * r : spec.delta * r - 0.5 * spec.delta * spec.delta;
    }
    case LossKind::EpsInsensitive: return std::max(0.0, std::abs(a - y) - spec.epsilon);
    case LossKind::Logistic: return softplus(-a * y);
    case LossKind::Hinge: return std::max(0.0, 1.0 - a * y);
  }
  return 0.0;
}

IntervalD subdifferential_unchecked(const LossSpec& spec, double a, double y) {
  switch (spec.kind) {
    case LossKind::Squared: return IntervalD(y - a);
    case LossKind::Huber: {
      // Saturate by comparing with the breakpoints: y - a misses +-delta by
      // roundoff proportional to |a| when y = a +- delta.
      if (y >= a + spec.delta) return IntervalD(spec.delta);
      if (y <= a - spec.delta) return IntervalD(-spec.delta);
      return IntervalD(std::clamp(y - a, -spec.delta, spec.delta));
    }
    case LossKind::EpsInsensitive: {
      // Compare against the kink locations themselves so that a breakpoint
      // a +- eps fed back in as y is recognised exactly.
      const double left_kink = a - spec.epsilon, right_kink = a + spec.epsilon;
      double left = y <= left_kink ? -1.0 : (y <= right_kink ? 0.0 : 1.0);
      double right = y < left_kink ? -1.0 : (y < right_kink ? 0.0 : 1.0);
      return {left, right};
    }
    case LossKind::Logistic: {
      // -a / (1 + exp(a y)), written to avoid overflow
      double z = a * y;
      double s = z > 0 ? std::exp(-z) / (1.0 + std::exp(-z)) : 1.0 / (1.0 + std::exp(z));
      return IntervalD(-a * s);
    }
    case LossKind::Hinge: {
      double margin = a * y;
      if (margin < 1.0) return IntervalD(-a);
      if (margin > 1.0) return IntervalD(0.0);
      return a > 0 ? IntervalD(-a, 0.0) : IntervalD(0.0, -a);
    }
  }
  return IntervalD(0.0);
}

}  // namespace detail

}  // namespace girp
