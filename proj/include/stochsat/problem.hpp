#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stochsat/distributions.hpp"
#include "stochsat/formula.hpp"
#include "stochsat/interval.hpp"

namespace stochsat {

// exists x in D, rand y ~ mu : phi(x, y).
//
// Variables are indexed as one combined list: the existential parameters
// first (declaration order), then the random variables (declaration order).
struct Problem {
  std::string name;
  std::vector<std::string> det_names;
  Box domain;
  // Region for drawing initial points; differs from `domain` only when the
  // source declared a `sample [a, b]` override.
  Box sample_box;
  std::vector<std::string> rand_names;
  std::vector<DistributionSpec> dists;
  Formula formula;
  std::map<std::string, std::string> metadata;

  std::size_t num_det() const noexcept { return det_names.size(); }
  std::size_t num_rand() const noexcept { return rand_names.size(); }
  std::size_t num_vars() const noexcept { return det_names.size() + rand_names.size(); }

  std::vector<std::string> all_names() const {
    std::vector<std::string> names = det_names;
    names.insert(names.end(), rand_names.begin(), rand_names.end());
    return names;
  }

  bool in_domain(std::span<const double> x) const { return domain.contains(x); }
  bool in_sample_box(std::span<const double> x) const { return sample_box.contains(x); }

  // Structural equality of the mathematical content (ignores name/metadata).
  bool same_content(const Problem& o) const {
    return det_names == o.det_names && domain == o.domain && sample_box == o.sample_box &&
           rand_names == o.rand_names && dists == o.dists && formula == o.formula;
  }
};

} // namespace stochsat
