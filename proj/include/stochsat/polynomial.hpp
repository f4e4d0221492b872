#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "stochsat/interval.hpp"

namespace stochsat {

using Exponents = std::vector<unsigned>;

template <class Coeff>
struct Monomial {
  Coeff coeff{};
  Exponents exponents;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

namespace detail {

inline bool is_zero(double c) noexcept { return c == 0.0; }
inline bool is_zero(const Interval& c) noexcept { return c.lo() == 0.0 && c.hi() == 0.0; }

inline Interval to_interval(double c) { return Interval(c); }
inline Interval to_interval(const Interval& c) { return c; }

} // namespace detail

// Sparse multivariate polynomial over a fixed, ordered variable list.
//
// Terms are kept sorted by exponent vector in descending lexicographic order
// with unique exponent vectors and no zero coefficients, so structural
// equality is semantic equality.
template <class Coeff>
class BasicPolynomial {
public:
  using coeff_type = Coeff;
  using term_type = Monomial<Coeff>;

  BasicPolynomial() = default;
  explicit BasicPolynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static BasicPolynomial constant(std::size_t num_vars, Coeff c) {
    BasicPolynomial p(num_vars);
    if (!detail::is_zero(c)) p.terms_.push_back({c, Exponents(num_vars, 0u)});
    return p;
  }

  static BasicPolynomial variable(std::size_t num_vars, std::size_t index) {
    if (index >= num_vars) throw std::out_of_range("BasicPolynomial::variable: index out of range");
    BasicPolynomial p(num_vars);
    Exponents e(num_vars, 0u);
    e[index] = 1;
    p.terms_.push_back({Coeff(1.0), std::move(e)});
    return p;
  }

  // Builds a canonical polynomial from arbitrary (possibly repeated) terms.
  static BasicPolynomial from_terms(std::size_t num_vars, std::vector<term_type> terms) {
    std::map<Exponents, Coeff, std::greater<>> acc;
    for (auto& t : terms) {
      if (t.exponents.size() != num_vars) throw std::invalid_argument("BasicPolynomial: exponent arity mismatch");
      auto [it, inserted] = acc.try_emplace(std::move(t.exponents), t.coeff);
      if (!inserted) it->second = it->second + t.coeff;
    }
    BasicPolynomial p(num_vars);
    for (auto& [e, c] : acc)
      if (!detail::is_zero(c)) p.terms_.push_back({c, e});
    return p;
  }

  std::size_t num_vars() const noexcept { return num_vars_; }
  std::span<const term_type> terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_[0].exponents.begin(),
                                                                 terms_[0].exponents.end(),
                                                                 [](unsigned e) { return e == 0; }));
  }

  Coeff constant_value() const {
    if (!is_constant()) throw std::logic_error("BasicPolynomial::constant_value: not constant");
    return terms_.empty() ? Coeff(0.0) : terms_[0].coeff;
  }

  unsigned degree_in(std::size_t var) const noexcept {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exponents[var]);
    return d;
  }

  BasicPolynomial operator-() const {
    BasicPolynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }

  friend BasicPolynomial operator+(const BasicPolynomial& a, const BasicPolynomial& b) {
    check_arity(a, b);
    std::vector<term_type> all(a.terms_.begin(), a.terms_.end());
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return from_terms(a.num_vars_, std::move(all));
  }

  friend BasicPolynomial operator-(const BasicPolynomial& a, const BasicPolynomial& b) { return a + (-b); }

  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    check_arity(a, b);
    std::vector<term_type> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        Exponents e(a.num_vars_);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ta.exponents[i] + tb.exponents[i];
        prod.push_back({ta.coeff * tb.coeff, std::move(e)});
      }
    return from_terms(a.num_vars_, std::move(prod));
  }

  BasicPolynomial scaled(Coeff c) const { return *this * constant(num_vars_, c); }

  BasicPolynomial pow(unsigned k) const {
    BasicPolynomial r = constant(num_vars_, Coeff(1.0));
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  // Floating-point value at a point.
  double evaluate(std::span<const double> point) const
    requires std::is_same_v<Coeff, double>
  {
    double sum = 0.0;
    for (const auto& t : terms_) {
      double v = t.coeff;
      for (std::size_t i = 0; i < num_vars_; ++i)
        for (unsigned k = 0; k < t.exponents[i]; ++k) v *= point[i];
      sum += v;
    }
    return sum;
  }

  // Enclosure of the range over a box: terms are grouped by the power of each
  // variable in declaration order, p = sum_k X_v^k * p_k(rest), and each X_v^k
  // is evaluated with the tight interval power.
  Interval enclose(const Box& box) const {
    if (box.size() != num_vars_) throw DimensionError("BasicPolynomial::enclose: box arity mismatch");
    if (terms_.empty()) return Interval(0.0);
    return enclose_range(box, 0, terms_.size(), 0);
  }

  Interval enclose(std::span<const Interval> dims) const { return enclose(Box(std::vector(dims.begin(), dims.end()))); }

  friend bool operator==(const BasicPolynomial&, const BasicPolynomial&) = default;

private:
  static void check_arity(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("BasicPolynomial: arity mismatch");
  }

  Interval enclose_range(const Box& box, std::size_t begin, std::size_t end, std::size_t var) const {
    if (var == num_vars_) return detail::to_interval(terms_[begin].coeff);
    Interval sum(0.0);
    std::size_t i = begin;
    while (i < end) {
      const unsigned e = terms_[i].exponents[var];
      std::size_t j = i + 1;
      while (j < end && terms_[j].exponents[var] == e) ++j;
      const Interval inner = enclose_range(box, i, j, var + 1);
      sum += e == 0 ? inner : stochsat::pow(box[var], e) * inner;
      i = j;
    }
    return sum;
  }

  std::size_t num_vars_ = 0;
  std::vector<term_type> terms_;
};

using Polynomial = BasicPolynomial<double>;
using IntervalPolynomial = BasicPolynomial<Interval>;

// Fixes the leading variables to `prefix` and returns a polynomial over the
// remaining ones. Coefficients become rigorous enclosures of the folded values.
template <class Coeff>
IntervalPolynomial substitute_prefix(const BasicPolynomial<Coeff>& p, std::span<const double> prefix) {
  const std::size_t k = prefix.size();
  if (k > p.num_vars()) throw DimensionError("substitute_prefix: too many values");
  const std::size_t rest = p.num_vars() - k;
  std::vector<Monomial<Interval>> terms;
  terms.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    Interval c = detail::to_interval(t.coeff);
    for (std::size_t i = 0; i < k; ++i)
      if (t.exponents[i] != 0) c = c * pow(Interval(prefix[i]), t.exponents[i]);
    terms.push_back({c, Exponents(t.exponents.begin() + static_cast<std::ptrdiff_t>(k), t.exponents.end())});
  }
  return IntervalPolynomial::from_terms(rest, std::move(terms));
}

namespace detail {

inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

} // namespace detail

// Infix rendering accepted back by the problem parser.
inline std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const double mag = std::fabs(t.coeff);
    if (first) {
      if (t.coeff < 0) out += "-";
    } else {
      out += t.coeff < 0 ? " - " : " + ";
    }
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += names[i];
      if (t.exponents[i] > 1) factors += "^" + std::to_string(t.exponents[i]);
    }
    if (factors.empty()) {
      out += detail::format_number(mag);
    } else if (mag == 1.0) {
      out += factors;
    } else {
      out += detail::format_number(mag) + "*" + factors;
    }
  }
  return out;
}

inline std::string to_string(const IntervalPolynomial& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t n = 0; n < p.terms().size(); ++n) {
    const auto& t = p.terms()[n];
    if (n) out += " + ";
    std::ostringstream os;
    os.precision(17);
    if (t.coeff.is_point()) os << t.coeff.lo();
    else os << t.coeff;
    out += os.str();
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      out += "*" + names[i];
      if (t.exponents[i] > 1) out += "^" + std::to_string(t.exponents[i]);
    }
  }
  return out;
}

} // namespace stochsat
