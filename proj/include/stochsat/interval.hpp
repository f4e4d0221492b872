#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stochsat/errors.hpp"

namespace stochsat {

namespace rounding {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMax = std::numeric_limits<double>::max();
// Below this magnitude the fma error term may itself be inexact (gradual underflow).
inline constexpr double kTiny = 0x1p-960;

inline double next_down(double v) { return std::nextafter(v, -kInf); }
inline double next_up(double v) { return std::nextafter(v, kInf); }

// Error-free transforms (TwoSum / fma) tell whether the rounded result is
// above or below the exact value; endpoints move one ulp only when needed.

inline double add_down(double a, double b) {
  const double s = a + b;
  if (std::isinf(s)) {
    if (std::isinf(a) || std::isinf(b)) return s;
    return s > 0 ? kMax : s;
  }
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err < 0 ? next_down(s) : s;
}

inline double add_up(double a, double b) {
  const double s = a + b;
  if (std::isinf(s)) {
    if (std::isinf(a) || std::isinf(b)) return s;
    return s < 0 ? -kMax : s;
  }
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err > 0 ? next_up(s) : s;
}

// Endpoint products use the closed-interval convention 0 * inf = 0.
inline double mul_down(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (std::isinf(p)) {
    if (std::isinf(a) || std::isinf(b)) return p;
    return p > 0 ? kMax : p;
  }
  if (std::fabs(p) < kTiny) return next_down(p);
  const double err = std::fma(a, b, -p);
  return err < 0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (std::isinf(p)) {
    if (std::isinf(a) || std::isinf(b)) return p;
    return p < 0 ? -kMax : p;
  }
  if (std::fabs(p) < kTiny) return next_up(p);
  const double err = std::fma(a, b, -p);
  return err > 0 ? next_up(p) : p;
}

// v^k for v >= 0, rounded toward -inf / +inf.
inline double pow_down(double v, unsigned k) {
  double r = 1.0;
  for (unsigned i = 0; i < k; ++i) r = mul_down(r, v);
  return r;
}

inline double pow_up(double v, unsigned k) {
  double r = 1.0;
  for (unsigned i = 0; i < k; ++i) r = mul_up(r, v);
  return r;
}

} // namespace rounding

// Closed interval [lo, hi] over the extended reals.
class Interval {
public:
  constexpr Interval() noexcept = default;

  Interval(double point) : Interval(point, point) {} // NOLINT(google-explicit-constructor)

  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi)) throw std::invalid_argument("Interval: NaN endpoint");
    if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
  }

  static Interval entire() { return {-rounding::kInf, rounding::kInf}; }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  double width() const noexcept { return hi_ - lo_; }
  double mid() const noexcept { return 0.5 * lo_ + 0.5 * hi_; }
  bool is_finite() const noexcept { return std::isfinite(lo_) && std::isfinite(hi_); }
  bool is_point() const noexcept { return lo_ == hi_; }

  bool contains(double v) const noexcept { return lo_ <= v && v <= hi_; }
  bool contains(const Interval& o) const noexcept { return lo_ <= o.lo_ && o.hi_ <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;

private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  return os << '[' << iv.lo() << ", " << iv.hi() << ']';
}

inline Interval operator-(const Interval& a) { return {-a.hi(), -a.lo()}; }

inline Interval operator+(const Interval& a, const Interval& b) {
  return {rounding::add_down(a.lo(), b.lo()), rounding::add_up(a.hi(), b.hi())};
}

inline Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

inline Interval operator*(const Interval& a, const Interval& b) {
  using namespace rounding;
  const double lo = std::min({mul_down(a.lo(), b.lo()), mul_down(a.lo(), b.hi()),
                              mul_down(a.hi(), b.lo()), mul_down(a.hi(), b.hi())});
  const double hi = std::max({mul_up(a.lo(), b.lo()), mul_up(a.lo(), b.hi()),
                              mul_up(a.hi(), b.lo()), mul_up(a.hi(), b.hi())});
  return {lo, hi};
}

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

// Integer power. Even powers of sign-spanning intervals start at 0.
inline Interval pow(const Interval& a, unsigned k) {
  using namespace rounding;
  if (k == 0) return {1.0, 1.0};
  if (k == 1) return a;
  const double lo = a.lo();
  const double hi = a.hi();
  if (k % 2 == 1) {
    const double new_lo = lo >= 0 ? pow_down(lo, k) : -pow_up(-lo, k);
    const double new_hi = hi >= 0 ? pow_up(hi, k) : -pow_down(-hi, k);
    return {new_lo, new_hi};
  }
  if (lo >= 0) return {pow_down(lo, k), pow_up(hi, k)};
  if (hi <= 0) return {pow_down(-hi, k), pow_up(-lo, k)};
  return {0.0, pow_up(std::max(-lo, hi), k)};
}

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

// Axis-aligned product of closed intervals.
class Box {
public:
  Box() = default;
  explicit Box(std::vector<Interval> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("Box: no dimensions");
  }
  Box(std::initializer_list<Interval> dims) : Box(std::vector<Interval>(dims)) {}

  std::size_t size() const noexcept { return dims_.size(); }
  const Interval& operator[](std::size_t i) const { return dims_[i]; }
  std::span<const Interval> dims() const noexcept { return dims_; }

  bool is_finite() const noexcept {
    return std::all_of(dims_.begin(), dims_.end(), [](const Interval& iv) { return iv.is_finite(); });
  }

  bool contains(std::span<const double> point) const noexcept {
    if (point.size() != dims_.size()) return false;
    for (std::size_t i = 0; i < dims_.size(); ++i)
      if (!dims_[i].contains(point[i])) return false;
    return true;
  }

  bool contains(const Box& other) const noexcept {
    if (other.size() != size()) return false;
    for (std::size_t i = 0; i < dims_.size(); ++i)
      if (!dims_[i].contains(other[i])) return false;
    return true;
  }

  // Split at the midpoint of `dim`. The children share the midpoint endpoint
  // and reuse the parent's outer endpoints verbatim.
  std::pair<Box, Box> bisect(std::size_t dim) const {
    if (dim >= dims_.size()) throw std::out_of_range("Box::bisect: dimension out of range");
    const Interval& iv = dims_[dim];
    if (!iv.is_finite()) throw DegenerateSplit("Box::bisect: unbounded dimension");
    const double m = iv.mid();
    if (!(iv.lo() < m && m < iv.hi())) throw DegenerateSplit("Box::bisect: dimension has no interior midpoint");
    Box left = *this;
    Box right = *this;
    left.dims_[dim] = Interval(iv.lo(), m);
    right.dims_[dim] = Interval(m, iv.hi());
    return {std::move(left), std::move(right)};
  }

  std::size_t widest_dim() const noexcept {
    std::size_t best = 0;
    for (std::size_t i = 1; i < dims_.size(); ++i)
      if (dims_[i].width() > dims_[best].width()) best = i;
    return best;
  }

  // Uniform draw from the box.
  template <class URBG>
  std::vector<double> sample(URBG& rng) const {
    if (!is_finite()) throw std::domain_error("Box::sample: unbounded dimension");
    std::vector<double> point(dims_.size());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      const Interval& iv = dims_[i];
      const double t = unit(rng);
      point[i] = iv.is_point() ? iv.lo() : std::clamp(iv.lo() + t * iv.width(), iv.lo(), iv.hi());
    }
    return point;
  }

  friend bool operator==(const Box&, const Box&) = default;

private:
  std::vector<Interval> dims_;
};

inline std::ostream& operator<<(std::ostream& os, const Box& b) {
  for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " x " : "") << b[i];
  return os;
}

} // namespace stochsat
