#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stochsat/interval.hpp"
#include "stochsat/polynomial.hpp"

namespace stochsat {

// Three-valued truth for box classification (strong Kleene logic).
enum class Truth { False, True, Unknown };

inline const char* to_string(Truth t) {
  switch (t) {
    case Truth::False: return "false";
    case Truth::True: return "true";
    case Truth::Unknown: return "unknown";
  }
  return "?";
}

// poly >= 0. `strict_origin` only remembers that the source used < or >;
// strict and non-strict atoms differ on a null set and are treated alike.
template <class Coeff>
struct BasicAtom {
  BasicPolynomial<Coeff> poly;
  bool strict_origin = false;

  friend bool operator==(const BasicAtom&, const BasicAtom&) = default;
};

// Negation-free AND/OR tree over atoms. Constant atoms fold into True/False
// leaves, nested connectives of the same kind are flattened, and negation is
// pushed to the leaves by flipping atom polarity.
template <class Coeff>
class BasicFormula {
public:
  enum class Kind { False, True, Atom, And, Or };
  using atom_type = BasicAtom<Coeff>;

  BasicFormula() = default;

  static BasicFormula constant(bool value) {
    BasicFormula f;
    f.kind_ = value ? Kind::True : Kind::False;
    return f;
  }

  static BasicFormula atom(BasicPolynomial<Coeff> poly, bool strict_origin = false) {
    if (poly.is_constant()) {
      const Interval c = detail::to_interval(poly.constant_value());
      if (c.lo() >= 0.0) return constant(true);
      if (c.hi() < 0.0) return constant(false);
    }
    BasicFormula f;
    f.kind_ = Kind::Atom;
    f.atom_ = atom_type{std::move(poly), strict_origin};
    return f;
  }

  static BasicFormula conjunction(std::vector<BasicFormula> children) { return combine(Kind::And, std::move(children)); }
  static BasicFormula disjunction(std::vector<BasicFormula> children) { return combine(Kind::Or, std::move(children)); }

  Kind kind() const noexcept { return kind_; }
  bool is_constant() const noexcept { return kind_ == Kind::True || kind_ == Kind::False; }
  const atom_type& atom() const noexcept { return atom_; }
  std::span<const BasicFormula> children() const noexcept { return children_; }

  std::size_t atom_count() const noexcept {
    if (kind_ == Kind::Atom) return 1;
    std::size_t n = 0;
    for (const auto& c : children_) n += c.atom_count();
    return n;
  }

  template <class Fn>
  void for_each_atom(Fn&& fn) const {
    if (kind_ == Kind::Atom) {
      fn(atom_);
      return;
    }
    for (const auto& c : children_) c.for_each_atom(fn);
  }

  friend bool operator==(const BasicFormula&, const BasicFormula&) = default;

private:
  static BasicFormula combine(Kind kind, std::vector<BasicFormula> children) {
    const Kind absorbing = kind == Kind::And ? Kind::False : Kind::True;
    const Kind neutral = kind == Kind::And ? Kind::True : Kind::False;
    std::vector<BasicFormula> flat;
    for (auto& c : children) {
      if (c.kind_ == absorbing) return constant(absorbing == Kind::True);
      if (c.kind_ == neutral) continue;
      if (c.kind_ == kind) {
        for (auto& g : c.children_) flat.push_back(std::move(g));
      } else {
        flat.push_back(std::move(c));
      }
    }
    if (flat.empty()) return constant(neutral == Kind::True);
    if (flat.size() == 1) return std::move(flat.front());
    BasicFormula f;
    f.kind_ = kind;
    f.children_ = std::move(flat);
    return f;
  }

  Kind kind_ = Kind::True;
  atom_type atom_{};
  std::vector<BasicFormula> children_;
};

using Atom = BasicAtom<double>;
using Formula = BasicFormula<double>;
using IntervalFormula = BasicFormula<Interval>;

// De Morgan dual; P >= 0 becomes -P >= 0 with the strictness flag toggled.
template <class Coeff>
BasicFormula<Coeff> negate(const BasicFormula<Coeff>& f) {
  using F = BasicFormula<Coeff>;
  switch (f.kind()) {
    case F::Kind::False: return F::constant(true);
    case F::Kind::True: return F::constant(false);
    case F::Kind::Atom: return F::atom(-f.atom().poly, !f.atom().strict_origin);
    case F::Kind::And:
    case F::Kind::Or: {
      std::vector<F> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(negate(c));
      return f.kind() == F::Kind::And ? F::disjunction(std::move(kids)) : F::conjunction(std::move(kids));
    }
  }
  return f;
}

// Truth value at a point; ties (poly == 0) satisfy the atom.
inline bool eval_formula_point(const Formula& f, std::span<const double> point) {
  switch (f.kind()) {
    case Formula::Kind::False: return false;
    case Formula::Kind::True: return true;
    case Formula::Kind::Atom: return f.atom().poly.evaluate(point) >= 0.0;
    case Formula::Kind::And:
      for (const auto& c : f.children())
        if (!eval_formula_point(c, point)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& c : f.children())
        if (eval_formula_point(c, point)) return true;
      return false;
  }
  return false;
}

template <class Coeff>
Interval eval_poly_interval(const BasicPolynomial<Coeff>& p, const Box& box) {
  return p.enclose(box);
}

// True: every point of the box satisfies f. False: no point does.
template <class Coeff>
Truth eval_formula_box(const BasicFormula<Coeff>& f, const Box& box) {
  using F = BasicFormula<Coeff>;
  switch (f.kind()) {
    case F::Kind::False: return Truth::False;
    case F::Kind::True: return Truth::True;
    case F::Kind::Atom: {
      const Interval r = f.atom().poly.enclose(box);
      if (r.lo() >= 0.0) return Truth::True;
      if (r.hi() < 0.0) return Truth::False;
      return Truth::Unknown;
    }
    case F::Kind::And: {
      Truth acc = Truth::True;
      for (const auto& c : f.children()) {
        const Truth t = eval_formula_box(c, box);
        if (t == Truth::False) return Truth::False;
        if (t == Truth::Unknown) acc = Truth::Unknown;
      }
      return acc;
    }
    case F::Kind::Or: {
      Truth acc = Truth::False;
      for (const auto& c : f.children()) {
        const Truth t = eval_formula_box(c, box);
        if (t == Truth::True) return Truth::True;
        if (t == Truth::Unknown) acc = Truth::Unknown;
      }
      return acc;
    }
  }
  return Truth::Unknown;
}

// Fixes the leading (deterministic) variables; the result ranges over the
// trailing ones. Atoms whose enclosure no longer depends on them fold away.
template <class Coeff>
IntervalFormula substitute_det(const BasicFormula<Coeff>& f, std::span<const double> x) {
  using F = BasicFormula<Coeff>;
  switch (f.kind()) {
    case F::Kind::False: return IntervalFormula::constant(false);
    case F::Kind::True: return IntervalFormula::constant(true);
    case F::Kind::Atom: return IntervalFormula::atom(substitute_prefix(f.atom().poly, x), f.atom().strict_origin);
    case F::Kind::And:
    case F::Kind::Or: {
      std::vector<IntervalFormula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(substitute_det(c, x));
      return f.kind() == F::Kind::And ? IntervalFormula::conjunction(std::move(kids))
                                      : IntervalFormula::disjunction(std::move(kids));
    }
  }
  return IntervalFormula::constant(true);
}

// Fully parenthesised rendering; atoms print as `poly >= 0` (or `> 0`).
inline std::string to_string(const Formula& f, std::span<const std::string> names) {
  switch (f.kind()) {
    case Formula::Kind::False: return "0 >= 1";
    case Formula::Kind::True: return "0 >= 0";
    case Formula::Kind::Atom:
      return to_string(f.atom().poly, names) + (f.atom().strict_origin ? " > 0" : " >= 0");
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const char* op = f.kind() == Formula::Kind::And ? " and " : " or ";
      std::string out = "(";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += op;
        out += to_string(f.children()[i], names);
      }
      return out + ")";
    }
  }
  return {};
}

} // namespace stochsat
