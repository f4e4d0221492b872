#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "stochsat/errors.hpp"
#include "stochsat/interval.hpp"

namespace stochsat {

struct Uniform {
  double a = 0.0;
  double b = 1.0;
  friend bool operator==(const Uniform&, const Uniform&) = default;
};

struct Normal {
  double mu = 0.0;
  double sigma = 1.0;
  friend bool operator==(const Normal&, const Normal&) = default;
};

struct Exponential {
  double lambda = 1.0;
  friend bool operator==(const Exponential&, const Exponential&) = default;
};

using DistributionSpec = std::variant<Uniform, Normal, Exponential>;

inline void validate(const DistributionSpec& d) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          if (!(std::isfinite(v.a) && std::isfinite(v.b) && v.a < v.b))
            throw ConfigError("uniform(a, b) requires finite a < b");
        } else if constexpr (std::is_same_v<T, Normal>) {
          if (!(std::isfinite(v.mu) && std::isfinite(v.sigma) && v.sigma > 0))
            throw ConfigError("normal(mu, sigma) requires sigma > 0");
        } else {
          if (!(std::isfinite(v.lambda) && v.lambda > 0))
            throw ConfigError("exponential(lambda) requires lambda > 0");
        }
      },
      d);
}

inline std::string to_string(const DistributionSpec& d) {
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) return "uniform(" + num(v.a) + ", " + num(v.b) + ")";
        else if constexpr (std::is_same_v<T, Normal>) return "normal(" + num(v.mu) + ", " + num(v.sigma) + ")";
        else return "exponential(" + num(v.lambda) + ")";
      },
      d);
}

namespace detail {

// Standard normal lower / upper tail via erfc; accurate to a few ulps in both tails.
inline double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
inline double std_normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

inline double std_normal_quantile(double p) {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

} // namespace detail

inline double cdf(const DistributionSpec& d, double t) {
  return std::visit(
      [t](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          if (t <= v.a) return 0.0;
          if (t >= v.b) return 1.0;
          return (t - v.a) / (v.b - v.a);
        } else if constexpr (std::is_same_v<T, Normal>) {
          if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
          return detail::std_normal_cdf((t - v.mu) / v.sigma);
        } else {
          if (t <= 0) return 0.0;
          return -std::expm1(-v.lambda * t);
        }
      },
      d);
}

// 1 - cdf, computed without cancellation in the upper tail.
inline double survival(const DistributionSpec& d, double t) {
  return std::visit(
      [t](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          if (t <= v.a) return 1.0;
          if (t >= v.b) return 0.0;
          return (v.b - t) / (v.b - v.a);
        } else if constexpr (std::is_same_v<T, Normal>) {
          if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
          return detail::std_normal_sf((t - v.mu) / v.sigma);
        } else {
          if (t <= 0) return 1.0;
          return std::exp(-v.lambda * t);
        }
      },
      d);
}

inline double pdf(const DistributionSpec& d, double t) {
  return std::visit(
      [t](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          return (t < v.a || t > v.b) ? 0.0 : 1.0 / (v.b - v.a);
        } else if constexpr (std::is_same_v<T, Normal>) {
          const double z = (t - v.mu) / v.sigma;
          return std::exp(-0.5 * z * z) / (v.sigma * std::sqrt(2.0 * std::numbers::pi));
        } else {
          return t < 0 ? 0.0 : v.lambda * std::exp(-v.lambda * t);
        }
      },
      d);
}

// Largest density value attained on [iv.lo, iv.hi].
inline double max_pdf(const DistributionSpec& d, const Interval& iv) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          return (iv.hi() < v.a || iv.lo() > v.b) ? 0.0 : 1.0 / (v.b - v.a);
        } else if constexpr (std::is_same_v<T, Normal>) {
          return pdf(d, std::clamp(v.mu, iv.lo(), iv.hi()));
        } else {
          return iv.hi() < 0 ? 0.0 : pdf(d, std::max(0.0, iv.lo()));
        }
      },
      d);
}

inline Interval support(const DistributionSpec& d) {
  return std::visit(
      [](const auto& v) -> Interval {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) return {v.a, v.b};
        else if constexpr (std::is_same_v<T, Normal>) return Interval::entire();
        else return {0.0, rounding::kInf};
      },
      d);
}

inline double quantile(const DistributionSpec& d, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: probability must lie in (0, 1)");
  return std::visit(
      [p](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) return v.a + p * (v.b - v.a);
        else if constexpr (std::is_same_v<T, Normal>) return v.mu + v.sigma * detail::std_normal_quantile(p);
        else return -std::log1p(-p) / v.lambda;
      },
      d);
}

// Point t with survival(t) = q, for small upper-tail probabilities q.
inline double upper_quantile(const DistributionSpec& d, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("upper_quantile: probability must lie in (0, 1)");
  return std::visit(
      [q](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) return v.b - q * (v.b - v.a);
        else if constexpr (std::is_same_v<T, Normal>) return v.mu - v.sigma * detail::std_normal_quantile(q);
        else return -std::log(q) / v.lambda;
      },
      d);
}

template <class URBG>
double sample(const DistributionSpec& d, URBG& rng) {
  return std::visit(
      [&rng](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) return std::uniform_real_distribution<double>(v.a, v.b)(rng);
        else if constexpr (std::is_same_v<T, Normal>) return std::normal_distribution<double>(v.mu, v.sigma)(rng);
        else return std::exponential_distribution<double>(v.lambda)(rng);
      },
      d);
}

// P(lo <= Y <= hi) for one component, using whichever tail avoids cancellation.
inline double interval_mass(const DistributionSpec& d, const Interval& iv) {
  const double lower = cdf(d, iv.lo());
  double m;
  if (lower > 0.5) {
    m = survival(d, iv.lo()) - survival(d, iv.hi());
  } else {
    m = cdf(d, iv.hi()) - lower;
  }
  return std::clamp(m, 0.0, 1.0);
}

// Probability of the box under the product of independent marginals.
inline double box_mass(std::span<const DistributionSpec> dists, const Box& box) {
  if (box.size() != dists.size()) throw DimensionError("box_mass: box arity does not match distributions");
  double m = 1.0;
  for (std::size_t i = 0; i < dists.size(); ++i) m *= interval_mass(dists[i], box[i]);
  return std::clamp(m, 0.0, 1.0);
}

// Finite box holding at least 1 - budget of the probability. Bounded supports
// are kept exactly; each unbounded side gives up at most budget / (2m).
inline Box truncation_box(std::span<const DistributionSpec> dists, double budget) {
  if (!(budget > 0.0 && budget < 1.0)) throw ConfigError("truncation_box: budget must lie in (0, 1)");
  if (dists.empty()) throw DimensionError("truncation_box: no random variables");
  // Slightly under-spend so quantile round-off cannot overshoot the budget.
  const double tail = budget / (2.0 * static_cast<double>(dists.size())) * (1.0 - 1e-6);
  std::vector<Interval> dims;
  dims.reserve(dists.size());
  for (const auto& d : dists) {
    const Interval s = support(d);
    const double lo = std::isfinite(s.lo()) ? s.lo() : quantile(d, tail);
    const double hi = std::isfinite(s.hi()) ? s.hi() : upper_quantile(d, tail);
    dims.emplace_back(lo, hi);
  }
  return Box(std::move(dims));
}

} // namespace stochsat
