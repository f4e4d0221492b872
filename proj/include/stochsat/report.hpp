#pragma once

// JSON encoding of configurations and results. Requires nlohmann/json.

#include <chrono>
#include <ctime>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stochsat/certify.hpp"
#include "stochsat/distributions.hpp"
#include "stochsat/problem.hpp"
#include "stochsat/solver.hpp"

namespace stochsat {

inline constexpr int kReportSchemaVersion = 1;

#ifdef STOCHSAT_VERSION
inline constexpr const char* kVersion = STOCHSAT_VERSION;
#else
inline constexpr const char* kVersion = "0.1.0";
#endif

using json = nlohmann::json;

inline void to_json(json& j, const CertifyConfig& c) {
  j = json{{"epsilon0", c.epsilon0},
           {"truncation_fraction", c.truncation_fraction},
           {"max_boxes", c.max_boxes},
           {"max_depth", c.max_depth}};
}

inline void from_json(const json& j, CertifyConfig& c) {
  j.at("epsilon0").get_to(c.epsilon0);
  j.at("truncation_fraction").get_to(c.truncation_fraction);
  j.at("max_boxes").get_to(c.max_boxes);
  j.at("max_depth").get_to(c.max_depth);
}

inline void to_json(json& j, const OracleConfig& c) {
  j = json{{"samples", c.n_samples},
           {"directions", c.n_directions},
           {"sigma", c.smoothing_radius},
           {"epsilon_w", c.epsilon_w}};
}

inline void from_json(const json& j, OracleConfig& c) {
  j.at("samples").get_to(c.n_samples);
  j.at("directions").get_to(c.n_directions);
  j.at("sigma").get_to(c.smoothing_radius);
  j.at("epsilon_w").get_to(c.epsilon_w);
}

inline void to_json(json& j, const AloeParams& a) {
  j = json{{"alpha0", a.alpha0}, {"alpha_max", a.alpha_max}, {"gamma", a.gamma},
           {"theta", a.theta},   {"epsilon_w", a.epsilon_w}, {"steps", a.k_max}};
}

inline void from_json(const json& j, AloeParams& a) {
  j.at("alpha0").get_to(a.alpha0);
  j.at("alpha_max").get_to(a.alpha_max);
  j.at("gamma").get_to(a.gamma);
  j.at("theta").get_to(a.theta);
  j.at("epsilon_w").get_to(a.epsilon_w);
  j.at("steps").get_to(a.k_max);
}

inline void to_json(json& j, const SolveConfig& c) {
  j = json{{"trials", c.trials}, {"aloe", c.aloe},  {"oracle", c.oracle},
           {"certify", c.certify}, {"seed", c.seed}, {"workers", c.workers}};
}

inline void from_json(const json& j, SolveConfig& c) {
  j.at("trials").get_to(c.trials);
  j.at("aloe").get_to(c.aloe);
  j.at("oracle").get_to(c.oracle);
  j.at("certify").get_to(c.certify);
  j.at("seed").get_to(c.seed);
  j.at("workers").get_to(c.workers);
}

inline void to_json(json& j, const CertificationResult& r) {
  j = json{{"lower_bound", r.lower_bound},
           {"boundary_mass", r.boundary_mass},
           {"truncated_budget", r.truncated_budget},
           {"local_upper_bound", r.local_upper_bound},
           {"inner_mass", r.inner_mass},
           {"discarded_mass", r.discarded_mass},
           {"truncation_box_mass", r.truncation_box_mass},
           {"inner_count", r.inner_count},
           {"boundary_count", r.boundary_count},
           {"boxes_processed", r.boxes_processed},
           {"converged", r.converged},
           {"fp_slack", r.fp_slack}};
}

inline void from_json(const json& j, CertificationResult& r) {
  j.at("lower_bound").get_to(r.lower_bound);
  j.at("boundary_mass").get_to(r.boundary_mass);
  j.at("truncated_budget").get_to(r.truncated_budget);
  j.at("local_upper_bound").get_to(r.local_upper_bound);
  j.at("inner_mass").get_to(r.inner_mass);
  j.at("discarded_mass").get_to(r.discarded_mass);
  j.at("truncation_box_mass").get_to(r.truncation_box_mass);
  j.at("inner_count").get_to(r.inner_count);
  j.at("boundary_count").get_to(r.boundary_count);
  j.at("boxes_processed").get_to(r.boxes_processed);
  j.at("converged").get_to(r.converged);
  j.at("fp_slack").get_to(r.fp_slack);
}

inline void to_json(json& j, const TrialRecord& t) {
  j = json{{"index", t.index},
           {"x0", t.x0},
           {"x_plus", t.x_plus},
           {"lower_bound", t.certificate.lower_bound},
           {"converged", t.certificate.converged},
           {"accepted_steps", t.accepted_steps},
           {"certificate", t.certificate},
           {"wall_time_s", t.wall_time_s}};
}

inline void from_json(const json& j, TrialRecord& t) {
  j.at("index").get_to(t.index);
  j.at("x0").get_to(t.x0);
  j.at("x_plus").get_to(t.x_plus);
  j.at("accepted_steps").get_to(t.accepted_steps);
  j.at("certificate").get_to(t.certificate);
  j.at("wall_time_s").get_to(t.wall_time_s);
}

inline void to_json(json& j, const SolveResult& r) {
  j = json{{"lower_bound", r.lower_bound},
           {"x_plus", r.x_plus ? json(*r.x_plus) : json(nullptr)},
           {"best_trial", r.best_trial ? json(*r.best_trial) : json(nullptr)},
           {"per_trial", r.per_trial},
           {"seed", r.seed},
           {"wall_time_s", r.wall_time_s}};
}

inline void from_json(const json& j, SolveResult& r) {
  j.at("lower_bound").get_to(r.lower_bound);
  if (j.at("x_plus").is_null()) r.x_plus.reset();
  else r.x_plus = j.at("x_plus").get<std::vector<double>>();
  if (j.at("best_trial").is_null()) r.best_trial.reset();
  else r.best_trial = j.at("best_trial").get<std::size_t>();
  j.at("per_trial").get_to(r.per_trial);
  j.at("seed").get_to(r.seed);
  j.at("wall_time_s").get_to(r.wall_time_s);
}

inline json problem_summary(const Problem& p) {
  json rand = json::array();
  for (std::size_t i = 0; i < p.num_rand(); ++i)
    rand.push_back({{"name", p.rand_names[i]}, {"distribution", to_string(p.dists[i])}});
  json domain = json::array();
  for (std::size_t i = 0; i < p.num_det(); ++i)
    domain.push_back({{"name", p.det_names[i]},
                      {"domain", {detail::format_number(p.domain[i].lo()), detail::format_number(p.domain[i].hi())}},
                      {"sample", {p.sample_box[i].lo(), p.sample_box[i].hi()}}});
  return json{{"name", p.name},
              {"det_vars", domain},
              {"rand_vars", rand},
              {"atoms", p.formula.atom_count()},
              {"metadata", p.metadata}};
}

inline std::string utc_timestamp(std::chrono::system_clock::time_point tp = std::chrono::system_clock::now()) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Copy of a report without timestamps and wall-clock measurements; two runs
// with the same configuration and seed agree on this payload exactly.
inline json strip_timing(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      if (k == "timing" || k == "wall_time_s" || k == "started_at" || k == "finished_at") continue;
      out[k] = strip_timing(it.value());
    }
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(strip_timing(v));
    return out;
  }
  return j;
}

} // namespace stochsat
