#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "stochsat/errors.hpp"
#include "stochsat/formula.hpp"
#include "stochsat/problem.hpp"
#include "stochsat/rng.hpp"

namespace stochsat {

// Hyper-parameters of the Monte Carlo value and gradient estimators.
struct OracleConfig {
  std::size_t n_samples = 100;    // |S|
  std::size_t n_directions = 50;  // |U|
  double smoothing_radius = 0.1;  // sigma
  double epsilon_w = 0.03;        // value-estimate tolerance used in the acceptance test

  void validate() const {
    if (n_samples < 1) throw ConfigError("n_samples must be at least 1");
    if (n_directions < 1) throw ConfigError("n_directions must be at least 1");
    if (!(smoothing_radius > 0.0 && std::isfinite(smoothing_radius))) throw ConfigError("smoothing_radius must be positive");
    if (!(epsilon_w > 0.0 && std::isfinite(epsilon_w))) throw ConfigError("epsilon_w must be positive");
  }
};

// Mean-absolute-error tolerance of the N-sample indicator average.
inline double epsilon_w_default(std::size_t n) {
  if (n < 1) throw ConfigError("epsilon_w_default: n must be at least 1");
  return 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));
}

// A loss is sampled at a parameter point with caller-provided randomness and
// returns a value in [0, 1].
template <class L>
concept LossEvaluator = requires(L& loss, std::span<const double> x, Rng& rng) {
  { loss(x, rng) } -> std::convertible_to<double>;
};

// 0-1 loss of the negated constraint: 1 when a fresh draw of y violates phi(x, y).
class IndicatorLoss {
public:
  explicit IndicatorLoss(const Problem& p)
      : problem_(&p), violated_(negate(p.formula)), point_(p.num_vars()) {}

  double operator()(std::span<const double> x, Rng& rng) {
    const Problem& p = *problem_;
    std::copy(x.begin(), x.end(), point_.begin());
    for (std::size_t j = 0; j < p.num_rand(); ++j) point_[p.num_det() + j] = sample(p.dists[j], rng);
    return eval_formula_point(violated_, point_) ? 1.0 : 0.0;
  }

private:
  const Problem* problem_;
  Formula violated_;
  std::vector<double> point_;
};

// Mean of n independent loss draws at x.
template <LossEvaluator Loss>
double estimate_w(Loss& loss, std::span<const double> x, std::size_t n, Rng& rng) {
  if (n < 1) throw ConfigError("estimate_w: n must be at least 1");
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += loss(x, rng);
  return sum / static_cast<double>(n);
}

// Gaussian-smoothed forward-difference gradient estimate:
//   g = 1/|U| * sum_u (W(x + sigma u, S'_u) - W(x, S)) / sigma * u,   u ~ N(0, I)
// with one shared base sample set S and a fresh set S'_u per direction.
template <LossEvaluator Loss>
std::vector<double> estimate_grad(Loss& loss, std::span<const double> x, const OracleConfig& cfg, Rng& rng) {
  cfg.validate();
  const std::size_t n = x.size();
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double base = estimate_w(loss, x, cfg.n_samples, rng);
  std::vector<double> g(n, 0.0);
  std::vector<double> u(n);
  std::vector<double> shifted(n);
  for (std::size_t d = 0; d < cfg.n_directions; ++d) {
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = gauss(rng);
      shifted[i] = x[i] + cfg.smoothing_radius * u[i];
    }
    const double slope = (estimate_w(loss, shifted, cfg.n_samples, rng) - base) / cfg.smoothing_radius;
    for (std::size_t i = 0; i < n; ++i) g[i] += slope * u[i];
  }
  for (double& gi : g) gi /= static_cast<double>(cfg.n_directions);
  return g;
}

} // namespace stochsat
