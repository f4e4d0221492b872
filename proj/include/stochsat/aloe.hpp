#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "stochsat/errors.hpp"
#include "stochsat/interval.hpp"
#include "stochsat/oracles.hpp"
#include "stochsat/problem.hpp"
#include "stochsat/rng.hpp"

namespace stochsat {

struct AloeParams {
  double alpha0 = 1.0;
  double alpha_max = 4.0;
  double gamma = 0.8;  // step decay on rejection; growth is 1 / gamma
  double theta = 0.2;  // sufficient-decrease constant
  double epsilon_w = 0.03;
  std::size_t k_max = 50;

  void validate() const {
    if (!(alpha0 > 0.0 && alpha0 < alpha_max && std::isfinite(alpha_max)))
      throw ConfigError("step sizes must satisfy 0 < alpha0 < alpha_max");
    if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
    if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("theta must lie in (0, 1)");
    if (!(epsilon_w >= 0.0 && std::isfinite(epsilon_w))) throw ConfigError("epsilon_w must be nonnegative");
  }
};

struct AloeStep {
  std::size_t k = 0;
  std::vector<double> x;  // iterate before the step
  double alpha = 0.0;     // step size used for the proposal
  double grad_norm = 0.0;
  double w_current = 0.0;
  double w_proposal = 0.0;
  bool in_domain = false;
  bool accepted = false;
};

struct AloeTrace {
  std::vector<AloeStep> steps;
};

struct AloeOutcome {
  std::vector<double> x_plus;
  AloeTrace trace;
};

// Adaptive-step stochastic descent on a sampled loss. Runs exactly k_max
// propose/test cycles and returns the last iterate.
//
// A proposal x - alpha g is accepted when it stays in `domain` and
//   W(x+, S+) <= W(x, S) - alpha * theta * |g|^2 + 2 * epsilon_w
// with fresh sample sets for both estimates. Acceptance grows alpha by
// 1/gamma (capped at alpha_max); rejection keeps x and shrinks alpha by gamma.
template <LossEvaluator Loss>
AloeOutcome aloe_minimize(Loss& loss, const Box& domain, std::span<const double> x0, const AloeParams& params,
                          const OracleConfig& oracle, Rng& rng) {
  params.validate();
  oracle.validate();
  if (x0.size() != domain.size()) throw DimensionError("aloe: start point arity mismatch");
  if (!domain.contains(x0)) throw DomainError("aloe: start point lies outside the domain");

  AloeOutcome out;
  out.trace.steps.reserve(params.k_max);
  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> proposal(x.size());
  double alpha = params.alpha0;

  for (std::size_t k = 0; k < params.k_max; ++k) {
    const std::vector<double> g = estimate_grad(loss, x, oracle, rng);
    double g2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      proposal[i] = x[i] - alpha * g[i];
      g2 += g[i] * g[i];
    }
    AloeStep step;
    step.k = k;
    step.x = x;
    step.alpha = alpha;
    step.grad_norm = std::sqrt(g2);
    step.w_proposal = estimate_w(loss, proposal, oracle.n_samples, rng);
    step.w_current = estimate_w(loss, x, oracle.n_samples, rng);
    step.in_domain = domain.contains(proposal);
    step.accepted =
        step.in_domain && step.w_proposal <= step.w_current - alpha * params.theta * g2 + 2.0 * params.epsilon_w;
    if (step.accepted) {
      x = proposal;
      alpha = std::min(params.alpha_max, alpha / params.gamma);
    } else {
      alpha *= params.gamma;
    }
    out.trace.steps.push_back(std::move(step));
  }
  out.x_plus = std::move(x);
  return out;
}

// ALOE on the violation probability of a problem's constraint.
inline AloeOutcome aloe_run(const Problem& p, std::span<const double> x0, const AloeParams& params,
                            const OracleConfig& oracle, Rng& rng) {
  if (x0.size() != p.num_det()) throw DimensionError("aloe: start point arity mismatch");
  if (!p.in_domain(x0)) throw DomainError("aloe: start point lies outside the parameter domain");
  IndicatorLoss loss(p);
  return aloe_minimize(loss, p.domain, x0, params, oracle, rng);
}

} // namespace stochsat
