#pragma once

#include <cmath>
#include <limits>
#include <ostream>

#include "girp/errors.hpp"

namespace girp {

// Closed interval [lo, hi] over the extended reals. Never empty.
template <typename Scalar>
class Interval {
 public:
  static constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();

  constexpr Interval() : lo_(0), hi_(0) {}
  constexpr explicit Interval(Scalar v) : Interval(v, v) {}
  constexpr Interval(Scalar lo, Scalar hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw DomainError("interval requires lo <= hi");
  }

  static constexpr Interval whole() { return Interval(-inf, inf); }

  constexpr Scalar lo() const { return lo_; }
  constexpr Scalar hi() const { return hi_; }

  constexpr bool is_point() const { return lo_ == hi_; }
  constexpr bool is_bounded() const { return std::isfinite(lo_) && std::isfinite(hi_); }
  constexpr bool contains(Scalar v) const { return lo_ <= v && v <= hi_; }
  constexpr bool contains(Scalar v, Scalar tol) const { return lo_ - tol <= v && v <= hi_ + tol; }

  // Nearest point of the interval to v.
  constexpr Scalar clamp(Scalar v) const { return v < lo_ ? lo_ : (v > hi_ ? hi_ : v); }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;

 private:
  Scalar lo_, hi_;
};

namespace detail {

template <typename Scalar>
constexpr Scalar extended_add(Scalar a, Scalar b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) != (b > 0))
    throw DomainError("extended-real sum of opposite infinities");
  return a + b;
}

}  // namespace detail

// Minkowski sum.
template <typename Scalar>
constexpr Interval<Scalar> operator+(const Interval<Scalar>& p, const Interval<Scalar>& q) {
  return {detail::extended_add(p.lo(), q.lo()), detail::extended_add(p.hi(), q.hi())};
}

template <typename Scalar>
constexpr Interval<Scalar> operator-(const Interval<Scalar>& p) {
  return {-p.hi(), -p.lo()};
}

template <typename Scalar>
constexpr Interval<Scalar> operator-(const Interval<Scalar>& p, const Interval<Scalar>& q) {
  return p + (-q);
}

template <typename Scalar>
constexpr Interval<Scalar>& operator+=(Interval<Scalar>& p, const Interval<Scalar>& q) {
  return p = p + q;
}

template <typename Scalar>
std::ostream& operator<<(std::ostream& os, const Interval<Scalar>& p) {
  if (p.is_point()) return os << p.lo();
  return os << '[' << p.lo() << ", " << p.hi() << ']';
}

template <typename Scalar>
constexpr Interval<Scalar> interval_add(const Interval<Scalar>& p, const Interval<Scalar>& q) {
  return p + q;
}

template <typename Scalar>
constexpr Interval<Scalar> interval_negate(const Interval<Scalar>& p) {
  return -p;
}

using IntervalD = Interval<double>;

}  // namespace girp
