#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stochsat/distributions.hpp"
#include "stochsat/errors.hpp"
#include "stochsat/formula.hpp"
#include "stochsat/problem.hpp"

namespace stochsat {

struct CertifyConfig {
  double epsilon0 = 1e-3;
  // Share of epsilon0 given up to domain truncation; the rest bounds the
  // probability left in undecided boxes.
  double truncation_fraction = 0.5;
  std::size_t max_boxes = 4'000'000;
  std::size_t max_depth = 160;

  void validate() const {
    if (!(epsilon0 > 0.0 && epsilon0 < 1.0)) throw ConfigError("epsilon0 must lie in (0, 1)");
    if (!(truncation_fraction > 0.0 && truncation_fraction < 1.0))
      throw ConfigError("truncation_fraction must lie in (0, 1)");
    if (max_boxes == 0) throw ConfigError("max_boxes must be positive");
    if (max_depth == 0) throw ConfigError("max_depth must be positive");
  }
};

// Per inner box allowance for CDF round-off in the reported lower bound.
inline constexpr double kCdfSlackPerBox = 2e-12;

struct CertificationResult {
  double lower_bound = 0.0;     // certified: lower_bound <= V(x)
  double boundary_mass = 0.0;   // probability of undecided boxes
  double truncated_budget = 0.0;  // probability outside the truncation box
  double local_upper_bound = 1.0;
  double inner_mass = 0.0;      // before fp slack
  double discarded_mass = 0.0;  // boxes proven to violate the constraint
  double truncation_box_mass = 1.0;
  std::size_t inner_count = 0;
  std::size_t boundary_count = 0;
  std::size_t boxes_processed = 0;
  bool converged = false;
  double fp_slack = 0.0;
};

namespace detail {

struct PendingBox {
  double mass;
  std::uint64_t seq;
  std::size_t depth;
  Box box;
};

struct LighterFirst {
  bool operator()(const PendingBox& a, const PendingBox& b) const {
    if (a.mass != b.mass) return a.mass < b.mass;
    return a.seq > b.seq;
  }
};

// Dimension whose width times the largest marginal density is maximal, i.e.
// the split that removes the most undecided mass per cut. Returns size() when
// no dimension can be split.
inline std::size_t split_dimension(const Box& box, std::span<const DistributionSpec> dists) {
  std::size_t best = box.size();
  double best_score = -1.0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const Interval& iv = box[i];
    const double m = iv.mid();
    if (!iv.is_finite() || !(iv.lo() < m && m < iv.hi())) continue;
    const double score = iv.width() * max_pdf(dists[i], iv);
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

} // namespace detail

// Certified lower bound on P_y(phi(x, y)) by branch-and-prune over the
// random-variable space.
//
// Boxes are classified with the three-valued interval evaluation of the
// formula with x substituted: proven boxes contribute their mass, refuted
// boxes are dropped, undecided boxes are bisected heaviest-first until the
// undecided mass is at most epsilon0 * (1 - truncation_fraction).
inline CertificationResult certify_lower_bound(const Problem& p, std::span<const double> x, const CertifyConfig& cfg) {
  cfg.validate();
  if (x.size() != p.num_det())
    throw DimensionError("certify: point has " + std::to_string(x.size()) + " coordinates, problem has " +
                         std::to_string(p.num_det()) + " parameters");
  if (!p.in_domain(x) && !p.in_sample_box(x)) throw DomainError("certify: point lies outside the parameter domain");

  CertificationResult r;
  const IntervalFormula fy = substitute_det(p.formula, x);

  if (fy.is_constant()) {
    // Decided for every y, so no truncation is needed.
    const bool sat = fy.kind() == IntervalFormula::Kind::True;
    r.inner_count = sat ? 1 : 0;
    r.inner_mass = sat ? 1.0 : 0.0;
    r.discarded_mass = sat ? 0.0 : 1.0;
    r.fp_slack = static_cast<double>(r.inner_count) * kCdfSlackPerBox;
    r.lower_bound = std::max(0.0, r.inner_mass - r.fp_slack);
    r.local_upper_bound = std::min(1.0, r.lower_bound + r.fp_slack);
    r.converged = true;
    return r;
  }

  const std::span<const DistributionSpec> dists = p.dists;
  const Box root = truncation_box(dists, cfg.epsilon0 * cfg.truncation_fraction);
  r.truncation_box_mass = box_mass(dists, root);
  r.truncated_budget = std::clamp(1.0 - r.truncation_box_mass, 0.0, 1.0);
  const double target = cfg.epsilon0 * (1.0 - cfg.truncation_fraction);

  std::priority_queue<detail::PendingBox, std::vector<detail::PendingBox>, detail::LighterFirst> queue;
  std::uint64_t seq = 0;
  double pending_mass = 0.0;
  double stuck_mass = 0.0;
  std::size_t stuck_count = 0;

  auto admit = [&](Box b, double mass, std::size_t depth) {
    ++r.boxes_processed;
    switch (eval_formula_box(fy, b)) {
      case Truth::True:
        r.inner_mass += mass;
        ++r.inner_count;
        break;
      case Truth::False:
        r.discarded_mass += mass;
        break;
      case Truth::Unknown:
        if (mass <= 0.0) break;
        if (depth >= cfg.max_depth || detail::split_dimension(b, dists) == b.size()) {
          stuck_mass += mass;
          ++stuck_count;
        } else {
          pending_mass += mass;
          queue.push({mass, seq++, depth, std::move(b)});
        }
        break;
    }
  };

  admit(root, r.truncation_box_mass, 0);
  while (!queue.empty() && pending_mass + stuck_mass > target && r.boxes_processed < cfg.max_boxes) {
    detail::PendingBox top = queue.top();
    queue.pop();
    pending_mass -= top.mass;
    const std::size_t dim = detail::split_dimension(top.box, dists);
    auto [left, right] = top.box.bisect(dim);
    const double ml = box_mass(dists, left);
    const double mr = box_mass(dists, right);
    admit(std::move(left), ml, top.depth + 1);
    admit(std::move(right), mr, top.depth + 1);
  }

  // Recompute the undecided mass from scratch; the running total drifts.
  double boundary = stuck_mass;
  r.boundary_count = stuck_count + queue.size();
  while (!queue.empty()) {
    boundary += queue.top().mass;
    queue.pop();
  }
  r.boundary_mass = std::min(1.0, boundary);
  r.fp_slack = static_cast<double>(r.inner_count) * kCdfSlackPerBox;
  r.lower_bound = std::clamp(r.inner_mass - r.fp_slack, 0.0, 1.0);
  r.local_upper_bound = std::min(1.0, r.lower_bound + r.boundary_mass + r.truncated_budget + r.fp_slack);
  r.converged = r.boundary_mass <= target && r.boundary_mass + r.truncated_budget <= cfg.epsilon0;
  return r;
}

// Plain Monte Carlo estimate of P_y(phi(x, y)) with a conservative
// 3-sigma radius; an independent check on certified bounds.
struct McEstimate {
  double estimate = 0.0;
  double radius = 0.0;
};

template <class URBG>
McEstimate mc_reference(const Problem& p, std::span<const double> x, std::size_t n, URBG& rng) {
  if (n == 0) throw ConfigError("mc_reference: n must be at least 1");
  if (x.size() != p.num_det()) throw DimensionError("mc_reference: point arity mismatch");
  std::vector<double> point(p.num_vars());
  std::copy(x.begin(), x.end(), point.begin());
  std::size_t hits = 0;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t j = 0; j < p.num_rand(); ++j) point[p.num_det() + j] = sample(p.dists[j], rng);
    if (eval_formula_point(p.formula, point)) ++hits;
  }
  const double nn = static_cast<double>(n);
  const double est = static_cast<double>(hits) / nn;
  return {est, 3.0 * std::sqrt(est * (1.0 - est) / nn + 1.0 / nn)};
}

} // namespace stochsat
