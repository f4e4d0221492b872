#pragma once

// Helpers shared by the unit tests and the acceptance driver: an exact
// rational reference evaluator and random instance generators.

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stochsat/stochsat.hpp"

namespace stochsat::testing {

using Exact = boost::multiprecision::cpp_rational;

inline Exact exact(double v) {
  // Every finite double is a dyadic rational; decompose it without rounding.
  int e = 0;
  const double m = std::frexp(v, &e);
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  Exact r(mant);
  const int shift = e - 53;
  if (shift >= 0) r *= boost::multiprecision::pow(boost::multiprecision::cpp_int(2), static_cast<unsigned>(shift));
  else r /= boost::multiprecision::pow(boost::multiprecision::cpp_int(2), static_cast<unsigned>(-shift));
  return r;
}

inline bool encloses(const Interval& iv, const Exact& v) {
  const bool lo_ok = std::isinf(iv.lo()) ? iv.lo() < 0 : exact(iv.lo()) <= v;
  const bool hi_ok = std::isinf(iv.hi()) ? iv.hi() > 0 : v <= exact(iv.hi());
  return lo_ok && hi_ok;
}

inline Exact exact_eval(const Polynomial& p, std::span<const double> point) {
  Exact sum = 0;
  for (const auto& t : p.terms()) {
    Exact v = exact(t.coeff);
    for (std::size_t i = 0; i < point.size(); ++i)
      for (unsigned k = 0; k < t.exponents[i]; ++k) v *= exact(point[i]);
    sum += v;
  }
  return sum;
}

inline bool exact_eval_formula(const Formula& f, std::span<const double> point) {
  switch (f.kind()) {
    case Formula::Kind::False: return false;
    case Formula::Kind::True: return true;
    case Formula::Kind::Atom: return exact_eval(f.atom().poly, point) >= 0;
    case Formula::Kind::And:
      return std::all_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return exact_eval_formula(c, point); });
    case Formula::Kind::Or:
      return std::any_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return exact_eval_formula(c, point); });
  }
  return false;
}

// Doubles spread over many binades, including exact small integers.
inline double random_scalar(Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  switch (kind(rng)) {
    case 0: return static_cast<double>(std::uniform_int_distribution<int>(-4, 4)(rng));
    case 1: return unit(rng);
    case 2: return std::ldexp(unit(rng), std::uniform_int_distribution<int>(-20, 20)(rng));
    default: return unit(rng) * 10.0;
  }
}

inline Interval random_interval(Rng& rng) {
  double a = random_scalar(rng);
  double b = std::bernoulli_distribution(0.2)(rng) ? a : random_scalar(rng);
  if (a > b) std::swap(a, b);
  return {a, b};
}

inline double random_point_in(const Interval& iv, Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 4);
  switch (kind(rng)) {
    case 0: return iv.lo();
    case 1: return iv.hi();
    default: {
      const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      return std::clamp(iv.lo() + t * (iv.hi() - iv.lo()), iv.lo(), iv.hi());
    }
  }
}

inline Polynomial random_polynomial(std::size_t n, Rng& rng, std::size_t max_terms = 5, unsigned max_exp = 3) {
  std::uniform_int_distribution<std::size_t> nterms(1, max_terms);
  std::uniform_int_distribution<unsigned> expo(0, max_exp);
  std::vector<Monomial<double>> terms;
  const std::size_t m = nterms(rng);
  for (std::size_t t = 0; t < m; ++t) {
    Exponents e(n);
    for (auto& ei : e) ei = expo(rng);
    terms.push_back({random_scalar(rng), std::move(e)});
  }
  return Polynomial::from_terms(n, std::move(terms));
}

inline Box random_box(std::size_t n, Rng& rng) {
  std::vector<Interval> dims;
  for (std::size_t i = 0; i < n; ++i) dims.push_back(random_interval(rng));
  return Box(std::move(dims));
}

inline std::vector<double> random_point_in(const Box& b, Rng& rng) {
  std::vector<double> x(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) x[i] = random_point_in(b[i], rng);
  return x;
}

// Random (problem, x) instance for certification checks: one or two
// deterministic variables, one to three random variables of mixed laws, and
// an and/or formula of low-degree atoms.
inline Problem random_problem(Rng& rng) {
  std::uniform_int_distribution<std::size_t> ndet(1, 2), nrand(1, 3), law(0, 2);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Problem p;
  p.name = "random";
  const std::size_t nd = ndet(rng), nr = nrand(rng);
  std::vector<Interval> dom;
  for (std::size_t i = 0; i < nd; ++i) {
    p.det_names.push_back("x" + std::to_string(i));
    dom.emplace_back(-2.0, 2.0);
  }
  p.domain = Box(dom);
  p.sample_box = Box(dom);
  for (std::size_t j = 0; j < nr; ++j) {
    p.rand_names.push_back("y" + std::to_string(j));
    switch (law(rng)) {
      case 0: {
        const double a = unit(rng) * 2.0;
        p.dists.push_back(Uniform{a, a + 0.5 + std::abs(unit(rng)) * 2.0});
        break;
      }
      case 1: p.dists.push_back(Normal{unit(rng), 0.3 + std::abs(unit(rng))}); break;
      default: p.dists.push_back(Exponential{0.5 + std::abs(unit(rng)) * 2.0}); break;
    }
  }
  const std::size_t n = nd + nr;
  auto atom = [&] {
    std::vector<Monomial<double>> terms;
    const std::size_t m = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
    for (std::size_t t = 0; t < m; ++t) {
      Exponents e(n, 0);
      e[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = std::uniform_int_distribution<unsigned>(0, 2)(rng);
      if (std::bernoulli_distribution(0.4)(rng))
        e[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] += 1;
      terms.push_back({std::round(unit(rng) * 40.0) / 20.0, std::move(e)});
    }
    return Formula::atom(Polynomial::from_terms(n, std::move(terms)), std::bernoulli_distribution(0.5)(rng));
  };
  std::vector<Formula> clauses;
  const std::size_t nclauses = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  for (std::size_t c = 0; c < nclauses; ++c) {
    std::vector<Formula> lits;
    const std::size_t nl = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    for (std::size_t l = 0; l < nl; ++l) lits.push_back(atom());
    clauses.push_back(Formula::disjunction(std::move(lits)));
  }
  p.formula = Formula::conjunction(std::move(clauses));
  return p;
}

} // namespace stochsat::testing
