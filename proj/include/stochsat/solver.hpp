#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "stochsat/aloe.hpp"
#include "stochsat/certify.hpp"
#include "stochsat/errors.hpp"
#include "stochsat/oracles.hpp"
#include "stochsat/problem.hpp"
#include "stochsat/rng.hpp"

namespace stochsat {

struct SolveConfig {
  std::size_t trials = 30;
  AloeParams aloe{};
  OracleConfig oracle{};
  CertifyConfig certify{};
  std::uint64_t seed = 7;
  std::size_t workers = 1;

  void validate() const {
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (workers < 1) throw ConfigError("workers must be at least 1");
    aloe.validate();
    oracle.validate();
    certify.validate();
  }
};

struct TrialRecord {
  std::size_t index = 0;
  std::vector<double> x0;
  std::vector<double> x_plus;
  CertificationResult certificate;
  std::size_t accepted_steps = 0;
  double wall_time_s = 0.0;
};

struct SolveResult {
  std::optional<std::vector<double>> x_plus;  // empty when no trial certified l > 0
  double lower_bound = 0.0;
  std::optional<std::size_t> best_trial;
  std::vector<TrialRecord> per_trial;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
};

// One multi-start trial: uniform start in the sampling box, ALOE descent,
// certification of the returned candidate. Depends only on (seed, index).
inline TrialRecord run_trial(const Problem& p, const SolveConfig& cfg, std::size_t index) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng = substream(cfg.seed, index);
  TrialRecord rec;
  rec.index = index;
  rec.x0 = p.sample_box.sample(rng);
  AloeOutcome run = aloe_run(p, rec.x0, cfg.aloe, cfg.oracle, rng);
  rec.x_plus = std::move(run.x_plus);
  rec.accepted_steps = static_cast<std::size_t>(
      std::count_if(run.trace.steps.begin(), run.trace.steps.end(), [](const AloeStep& s) { return s.accepted; }));
  rec.certificate = certify_lower_bound(p, rec.x_plus, cfg.certify);
  rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

// Multi-start lower bounding: keeps the largest certified bound over all
// trials. Trials are independent and may run on several threads; the result
// does not depend on the number of workers.
inline SolveResult solve(const Problem& p, const SolveConfig& cfg) {
  cfg.validate();
  if (!p.sample_box.is_finite()) throw ConfigError("solve: the sampling box must be bounded");
  const auto t0 = std::chrono::steady_clock::now();

  SolveResult res;
  res.seed = cfg.seed;
  res.per_trial.resize(cfg.trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t m = next++; m < cfg.trials; m = next++) {
      try {
        res.per_trial[m] = run_trial(p, cfg, m);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::min(cfg.workers, cfg.trials);
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  // Sequential reduction in trial order: strict improvement keeps the
  // earliest trial on ties.
  for (const auto& rec : res.per_trial) {
    if (rec.certificate.lower_bound > res.lower_bound) {
      res.lower_bound = rec.certificate.lower_bound;
      res.x_plus = rec.x_plus;
      res.best_trial = rec.index;
    }
  }
  res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

} // namespace stochsat
