#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stochsat/errors.hpp"
#include "stochsat/formula.hpp"
#include "stochsat/problem.hpp"

namespace stochsat {

namespace bench_detail {

// Variables are addressed by index into the problem's combined list.
struct PolyBuilder {
  std::size_t n;
  Polynomial var(std::size_t i) const { return Polynomial::variable(n, i); }
  Polynomial c(double v) const { return Polynomial::constant(n, v); }
};

inline Formula ge(Polynomial p) { return Formula::atom(std::move(p), false); }
inline Formula gt(Polynomial p) { return Formula::atom(std::move(p), true); }
inline Formula all(std::vector<Formula> f) { return Formula::conjunction(std::move(f)); }
inline Formula any(std::vector<Formula> f) { return Formula::disjunction(std::move(f)); }

inline Problem skeleton(std::string name, std::vector<std::string> det, std::vector<Interval> domain,
                        std::vector<Interval> sample, std::vector<std::string> rand,
                        std::vector<DistributionSpec> dists) {
  Problem p;
  p.name = std::move(name);
  p.det_names = std::move(det);
  p.domain = Box(std::move(domain));
  p.sample_box = Box(std::move(sample));
  p.rand_names = std::move(rand);
  p.dists = std::move(dists);
  return p;
}

} // namespace bench_detail

enum class SsmtId { Phi1 = 1, Phi2 = 2, Phi3 = 3, Phi4 = 4 };

// Hand-derived optimum of each SSMT benchmark.
inline double ssmt_known_value(SsmtId id) {
  switch (id) {
    case SsmtId::Phi1: return (std::sqrt(5.0) - 1.0) / 4.0;
    case SsmtId::Phi2: return 0.8;
    case SsmtId::Phi3: return 1.0;
    case SsmtId::Phi4: return 23.0 / 32.0;
  }
  return 0.0;
}

inline Problem make_ssmt(SsmtId id) {
  using namespace bench_detail;
  const double inf = rounding::kInf;
  switch (id) {
    case SsmtId::Phi1: {
      // exists x in [-1,1], y ~ U(-1,1): x^2 + y^2 <= 1 and (y >= 1/2 or y >= x/2 + 1/2)
      Problem p = skeleton("phi1", {"x"}, {{-1, 1}}, {{-1, 1}}, {"y"}, {Uniform{-1, 1}});
      const PolyBuilder b{2};
      const auto x = b.var(0), y = b.var(1);
      p.formula = all({ge(b.c(1) - x * x - y * y), any({ge(y - b.c(0.5)), ge(y - x.scaled(0.5) - b.c(0.5))})});
      return p;
    }
    case SsmtId::Phi2: {
      // exists x, w in [0,3], y ~ U(0,5), z ~ U(0,4):
      //   (x + y >= z or w + y >= z) and x - y <= z and w - y <= z
      Problem p = skeleton("phi2", {"x", "w"}, {{0, 3}, {0, 3}}, {{0, 3}, {0, 3}}, {"y", "z"},
                           {Uniform{0, 5}, Uniform{0, 4}});
      const PolyBuilder b{4};
      const auto x = b.var(0), w = b.var(1), y = b.var(2), z = b.var(3);
      p.formula = all({any({ge(x + y - z), ge(w + y - z)}), ge(z - x + y), ge(z - w + y)});
      return p;
    }
    case SsmtId::Phi3: {
      // exists x in [-1,1], a, b in R, y ~ N(0,1):
      //   (x^2 <= 1/9 or a^3 + 2b >= 0) and (y > 0 or a^3 + 2b < -1)
      Problem p = skeleton("phi3", {"x", "a", "b"}, {{-1, 1}, {-inf, inf}, {-inf, inf}}, {{-1, 1}, {-5, 5}, {-5, 5}},
                           {"y"}, {Normal{0, 1}});
      p.metadata["sample_override.a"] = "true";
      p.metadata["sample_override.b"] = "true";
      const PolyBuilder b{4};
      const auto x = b.var(0), a = b.var(1), bb = b.var(2), y = b.var(3);
      const auto cubic = a.pow(3) + bb.scaled(2);
      p.formula = all({any({ge(b.c(1.0 / 9.0) - x * x), ge(cubic)}), any({gt(y), gt(b.c(-1) - cubic)})});
      return p;
    }
    case SsmtId::Phi4: {
      // exists x in [-10,10], y ~ U(5,25), z ~ U(-10,10):
      //   (x > 3 or y < 1) and (z > x^2 + 2 or y <= 20)
      //   and (x^2 > 49 or y > 7x) and (x < 6 or y >= z)
      Problem p = skeleton("phi4", {"x"}, {{-10, 10}}, {{-10, 10}}, {"y", "z"}, {Uniform{5, 25}, Uniform{-10, 10}});
      const PolyBuilder b{3};
      const auto x = b.var(0), y = b.var(1), z = b.var(2);
      p.formula = all({any({gt(x - b.c(3)), gt(b.c(1) - y)}),
                       any({gt(z - x * x - b.c(2)), ge(b.c(20) - y)}),
                       any({gt(x * x - b.c(49)), gt(y - x.scaled(7))}),
                       any({gt(b.c(6) - x), ge(y - z)})});
      return p;
    }
  }
  throw std::invalid_argument("make_ssmt: unknown benchmark");
}

struct ObstacleSpec {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 1.0;
};

struct TrajectoryConfig {
  std::size_t steps = 1;
  std::vector<ObstacleSpec> obstacles;
  double step_length = 3.0;
  double domain_halfwidth = 12.0;
  // Parameter of the additive N(0, .) wind noise and how to read it.
  double noise_param = 0.5;
  bool noise_param_is_variance = false;
  std::string name = "trajectory";

  void validate() const {
    if (steps < 1) throw ConfigError("trajectory: steps must be at least 1");
    if (!(step_length > 0.0)) throw ConfigError("trajectory: step_length must be positive");
    if (!(domain_halfwidth > 0.0 && std::isfinite(domain_halfwidth)))
      throw ConfigError("trajectory: domain_halfwidth must be positive and finite");
    if (!(noise_param > 0.0)) throw ConfigError("trajectory: noise parameter must be positive");
    for (const auto& o : obstacles)
      if (!(o.radius > 0.0)) throw ConfigError("trajectory: obstacle radius must be positive");
  }
};

// Waypoints p_1..p_N from the origin, wind (w1, w2) and propulsion factor w3:
//   safety_{i,m}:  |p_i + (w1, w2) - o_m|^2 - R_m^2 >= 0
//   reach_i:       (L w3)^2 - |p_i - p_{i-1}|^2 >= 0
inline Problem make_trajectory(const TrajectoryConfig& cfg) {
  cfg.validate();
  const std::size_t n_det = 2 * cfg.steps;
  Problem p;
  p.name = cfg.name;
  std::vector<Interval> dom;
  for (std::size_t i = 1; i <= cfg.steps; ++i) {
    p.det_names.push_back("px" + std::to_string(i));
    p.det_names.push_back("py" + std::to_string(i));
    dom.emplace_back(-cfg.domain_halfwidth, cfg.domain_halfwidth);
    dom.emplace_back(-cfg.domain_halfwidth, cfg.domain_halfwidth);
  }
  p.domain = Box(dom);
  p.sample_box = Box(dom);
  const double sd = cfg.noise_param_is_variance ? std::sqrt(cfg.noise_param) : cfg.noise_param;
  p.rand_names = {"w1", "w2", "w3"};
  p.dists = {Normal{0.0, sd}, Normal{0.0, sd}, Uniform{0.8, 1.2}};
  p.metadata["noise_param"] = detail::format_number(cfg.noise_param);
  p.metadata["noise_param_meaning"] = cfg.noise_param_is_variance ? "variance" : "standard_deviation";
  p.metadata["domain_halfwidth"] = detail::format_number(cfg.domain_halfwidth);
  p.metadata["step_length"] = detail::format_number(cfg.step_length);

  const bench_detail::PolyBuilder b{n_det + 3};
  const auto w1 = b.var(n_det), w2 = b.var(n_det + 1), w3 = b.var(n_det + 2);
  std::vector<Formula> conj;
  for (std::size_t i = 0; i < cfg.steps; ++i) {
    const auto px = b.var(2 * i), py = b.var(2 * i + 1);
    for (const auto& o : cfg.obstacles) {
      const auto dx = px + w1 - b.c(o.cx);
      const auto dy = py + w2 - b.c(o.cy);
      conj.push_back(bench_detail::ge(dx * dx + dy * dy - b.c(o.radius * o.radius)));
    }
    const auto sx = i == 0 ? px : px - b.var(2 * i - 2);
    const auto sy = i == 0 ? py : py - b.var(2 * i - 1);
    conj.push_back(bench_detail::ge((w3 * w3).scaled(cfg.step_length * cfg.step_length) - sx * sx - sy * sy));
  }
  p.formula = Formula::conjunction(std::move(conj));
  return p;
}

struct TrajectoryInstance {
  std::string id;
  TrajectoryConfig config;
  double reported_lower_bound;  // literature value, for comparison only
};

// The twelve obstacle fields (N in {4, 5, 6}, one to four obstacles).
inline std::vector<TrajectoryInstance> trajectory_table() {
  auto inst = [](std::string id, std::size_t n, std::vector<ObstacleSpec> obs, double l) {
    TrajectoryConfig c;
    c.steps = n;
    c.obstacles = std::move(obs);
    c.name = id;
    return TrajectoryInstance{std::move(id), std::move(c), l};
  };
  return {
      inst("T1", 4, {{6, 2, 2.5}}, 0.99733),
      inst("T2", 4, {{2, -2, 2}, {5, 5, 3}}, 0.99672),
      inst("T3", 4, {{1, 1, 1}, {4, -4, 2}, {-7, 1, 1.5}}, 0.99209),
      inst("T4", 4, {{2, -7, 2.5}, {-5, -4, 2}, {-8, 2, 2}, {6, 3, 1}}, 0.99999),
      inst("T5", 5, {{5, 5, 2}}, 0.99417),
      inst("T6", 5, {{2, 3, 2}, {5, 4, 3}}, 0.99295),
      inst("T7", 5, {{-3, 3, 2}, {6, 1, 2}, {1, -6, 2}}, 0.99929),
      inst("T8", 5, {{2, 2, 3}, {8, 3, 2}, {5, 8, 2.5}, {-2, 8, 1.5}}, 0.99066),
      inst("T9", 6, {{5, 5, 3}}, 0.97648),
      inst("T10", 6, {{3, 3, 2}, {6, 6, 2.5}}, 0.99547),
      inst("T11", 6, {{8, 3, 2}, {-5, -6, 3}, {1, -2, 3}}, 0.96605),
      inst("T12", 6, {{2, -8, 2}, {-5, -3, 1}, {-8, -3, 3}, {4, 5, 1.5}}, 0.99999),
  };
}

} // namespace stochsat
