#pragma once

// Text format for problems (`.ssc`):
//
//   exists x in [-1, 1];
//   exists a in [-inf, inf] sample [-5, 5];
//   rand y ~ uniform(-1, 1);
//   constraint x^2 + y^2 <= 1 and (y >= 1/2 or y >= 1/2*x + 1/2);
//
// Statements end with ';'. `#` and `//` start comments. Several `constraint`
// statements are conjoined. Precedence, tightest first:
//   ^   unary -   * /   binary + -   comparisons   not   and   or

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stochsat/distributions.hpp"
#include "stochsat/errors.hpp"
#include "stochsat/formula.hpp"
#include "stochsat/problem.hpp"

namespace stochsat {

namespace dsl {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  double value = 0.0;
  std::size_t line = 0;
  std::size_t column = 0;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      tok.kind = Token::Kind::Number;
      tok.text = std::string(src.substr(i, j - i));
      char* end = nullptr;
      tok.value = std::strtod(tok.text.c_str(), &end);
      if (end != tok.text.c_str() + tok.text.size()) throw ParseError("malformed number '" + tok.text + "'", line, col);
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      tok.kind = Token::Kind::Ident;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      static const char* two[] = {"<=", ">=", "==", "!="};
      tok.kind = Token::Kind::Punct;
      for (const char* t : two)
        if (src.substr(i, 2) == t) tok.text = t;
      if (tok.text.empty()) {
        if (std::string_view("[](),;~+-*/^<>=").find(c) == std::string_view::npos)
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        tok.text = std::string(1, c);
      }
      advance(tok.text.size());
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

inline const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> kw = {"exists", "rand", "in", "sample", "constraint",
                                                        "and", "or", "not", "inf"};
  return kw;
}

class Parser {
public:
  explicit Parser(std::string_view text, std::string name) : tokens_(tokenize(text)), name_(std::move(name)) {}

  Problem parse() {
    // Declarations first so the variable order is fixed before any
    // constraint is read; constraints may appear anywhere in the file.
    std::vector<std::size_t> constraint_starts;
    std::vector<Interval> domain;
    std::vector<Interval> sample;
    while (peek().kind != Token::Kind::End) {
      const Token& t = peek();
      if (is_word(t, "exists")) {
        parse_exists(domain, sample);
      } else if (is_word(t, "rand")) {
        parse_rand();
      } else if (is_word(t, "constraint")) {
        constraint_starts.push_back(pos_);
        skip_statement();
      } else {
        fail(t, "expected 'exists', 'rand' or 'constraint'");
      }
    }
    if (problem_.det_names.empty()) throw ParseError("no 'exists' variable declared");
    if (problem_.rand_names.empty()) throw ParseError("no 'rand' variable declared");
    if (constraint_starts.empty()) throw ParseError("no 'constraint' statement");

    problem_.domain = Box(domain);
    problem_.sample_box = Box(sample);
    const auto names = problem_.all_names();
    for (std::size_t i = 0; i < names.size(); ++i) index_.emplace(names[i], i);

    std::vector<Formula> parts;
    for (std::size_t start : constraint_starts) {
      pos_ = start + 1;
      parts.push_back(parse_or());
      expect(";");
    }
    problem_.formula = Formula::conjunction(std::move(parts));
    problem_.name = name_;
    return std::move(problem_);
  }

private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    const std::string where = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + " (found " + where + ")", t.line, t.column);
  }

  static bool is_word(const Token& t, std::string_view w) { return t.kind == Token::Kind::Ident && t.text == w; }
  static bool is_punct(const Token& t, std::string_view p) { return t.kind == Token::Kind::Punct && t.text == p; }

  bool accept(std::string_view p) {
    if (is_punct(peek(), p) || is_word(peek(), p)) {
      next();
      return true;
    }
    return false;
  }

  void expect(std::string_view p) {
    if (!accept(p)) fail(peek(), "expected '" + std::string(p) + "'");
  }

  void skip_statement() {
    while (peek().kind != Token::Kind::End && !is_punct(peek(), ";")) next();
    expect(";");
  }

  std::string parse_new_name() {
    const Token& t = next();
    if (t.kind != Token::Kind::Ident) fail(t, "expected a variable name");
    if (keywords().count(t.text)) fail(t, "reserved word used as a variable name");
    for (const auto& n : problem_.all_names())
      if (n == t.text) fail(t, "variable '" + t.text + "' declared twice");
    return t.text;
  }

  // [+|-] NUM [/ NUM]  |  [+|-] inf
  double parse_signed_number(bool allow_inf) {
    double sign = 1.0;
    if (accept("-")) sign = -1.0;
    else accept("+");
    const Token& t = next();
    if (is_word(t, "inf")) {
      if (!allow_inf) fail(t, "infinite value not allowed here");
      return sign * rounding::kInf;
    }
    if (t.kind != Token::Kind::Number) fail(t, "expected a number");
    double v = t.value;
    if (accept("/")) {
      const Token& d = next();
      if (d.kind != Token::Kind::Number || d.value == 0.0) fail(d, "expected a nonzero denominator");
      v /= d.value;
    }
    return sign * v;
  }

  Interval parse_bracket(bool allow_inf) {
    const Token& open = peek();
    expect("[");
    const double lo = parse_signed_number(allow_inf);
    expect(",");
    const double hi = parse_signed_number(allow_inf);
    expect("]");
    if (lo > hi) fail(open, "empty interval (lower bound exceeds upper bound)");
    return {lo, hi};
  }

  void parse_exists(std::vector<Interval>& domain, std::vector<Interval>& sample) {
    const Token& kw = next();
    if (!problem_.rand_names.empty()) fail(kw, "'exists' declarations must precede 'rand' declarations");
    std::string name = parse_new_name();
    expect("in");
    const Interval d = parse_bracket(true);
    Interval s = d;
    if (is_word(peek(), "sample")) {
      const Token& st = next();
      s = parse_bracket(false);
      if (!d.contains(s)) fail(st, "sampling box must lie inside the declared domain");
      problem_.metadata["sample_override." + name] = "true";
    } else if (!d.is_finite()) {
      fail(kw, "unbounded domain for '" + name + "' requires a 'sample [a, b]' override");
    }
    expect(";");
    problem_.det_names.push_back(std::move(name));
    domain.push_back(d);
    sample.push_back(s);
  }

  void parse_rand() {
    next();
    std::string name = parse_new_name();
    expect("~");
    const Token& dt = next();
    DistributionSpec spec;
    if (is_word(dt, "uniform")) {
      expect("(");
      const double a = parse_signed_number(false);
      expect(",");
      const double b = parse_signed_number(false);
      expect(")");
      spec = Uniform{a, b};
    } else if (is_word(dt, "normal")) {
      expect("(");
      const double mu = parse_signed_number(false);
      expect(",");
      const double sigma = parse_signed_number(false);
      expect(")");
      spec = Normal{mu, sigma};
    } else if (is_word(dt, "exponential")) {
      expect("(");
      const double lambda = parse_signed_number(false);
      expect(")");
      spec = Exponential{lambda};
    } else {
      fail(dt, "expected uniform(..), normal(..) or exponential(..)");
    }
    try {
      validate(spec);
    } catch (const ConfigError& e) {
      fail(dt, e.what());
    }
    expect(";");
    problem_.rand_names.push_back(std::move(name));
    problem_.dists.push_back(spec);
  }

  // ---- formulas ----

  Formula parse_or() {
    std::vector<Formula> parts{parse_and()};
    while (accept("or")) parts.push_back(parse_and());
    return parts.size() == 1 ? std::move(parts.front()) : Formula::disjunction(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts{parse_not()};
    while (accept("and")) parts.push_back(parse_not());
    return parts.size() == 1 ? std::move(parts.front()) : Formula::conjunction(std::move(parts));
  }

  Formula parse_not() {
    if (accept("not")) return negate(parse_not());
    if (is_punct(peek(), "(")) {
      // Either a parenthesised formula or an atom whose left side starts with '('.
      const std::size_t save = pos_;
      try {
        return parse_comparison();
      } catch (const ParseError& as_atom) {
        pos_ = save;
        try {
          expect("(");
          Formula f = parse_or();
          expect(")");
          return f;
        } catch (const ParseError& as_group) {
          const bool atom_further = std::make_pair(as_atom.line(), as_atom.column()) >
                                    std::make_pair(as_group.line(), as_group.column());
          throw atom_further ? as_atom : as_group;
        }
      }
    }
    return parse_comparison();
  }

  Formula parse_comparison() {
    Polynomial lhs = parse_sum();
    const Token& op = next();
    if (is_punct(op, "=") || is_punct(op, "==") || is_punct(op, "!="))
      fail(op, "equality/disequality atoms are not supported; use inequalities");
    Polynomial rhs;
    if (is_punct(op, ">=") || is_punct(op, ">")) {
      rhs = parse_sum();
      return Formula::atom(lhs - rhs, op.text == ">");
    }
    if (is_punct(op, "<=") || is_punct(op, "<")) {
      rhs = parse_sum();
      return Formula::atom(rhs - lhs, op.text == "<");
    }
    fail(op, "expected a comparison (<=, <, >=, >)");
  }

  // ---- polynomials ----

  std::size_t arity() const { return index_.size(); }

  Polynomial parse_sum() {
    Polynomial p = parse_product();
    while (true) {
      if (accept("+")) p = p + parse_product();
      else if (accept("-")) p = p - parse_product();
      else return p;
    }
  }

  Polynomial parse_product() {
    Polynomial p = parse_unary();
    while (true) {
      if (accept("*")) {
        p = p * parse_unary();
      } else if (is_punct(peek(), "/")) {
        const Token& slash = next();
        const Polynomial d = parse_unary();
        if (!d.is_constant() || d.constant_value() == 0.0) fail(slash, "division is only allowed by a nonzero constant");
        const double c = d.constant_value();
        std::vector<Monomial<double>> terms(p.terms().begin(), p.terms().end());
        for (auto& t : terms) t.coeff /= c;
        p = Polynomial::from_terms(arity(), std::move(terms));
      } else {
        return p;
      }
    }
  }

  Polynomial parse_unary() {
    if (accept("-")) return -parse_unary();
    if (accept("+")) return parse_unary();
    return parse_power();
  }

  Polynomial parse_power() {
    Polynomial base = parse_primary();
    if (!is_punct(peek(), "^")) return base;
    next();
    const Token& e = next();
    if (is_punct(e, "-")) fail(e, "negative exponents are not supported");
    if (e.kind != Token::Kind::Number || e.value != std::floor(e.value) || e.value > 64)
      fail(e, "exponent must be a nonnegative integer literal");
    return base.pow(static_cast<unsigned>(e.value));
  }

  Polynomial parse_primary() {
    const Token& t = next();
    if (t.kind == Token::Kind::Number) return Polynomial::constant(arity(), t.value);
    if (t.kind == Token::Kind::Ident) {
      auto it = index_.find(t.text);
      if (it == index_.end()) fail(t, "undeclared variable '" + t.text + "'");
      return Polynomial::variable(arity(), it->second);
    }
    if (is_punct(t, "(")) {
      Polynomial p = parse_sum();
      expect(")");
      return p;
    }
    fail(t, "expected a number, variable or '('");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string name_;
  Problem problem_;
  std::unordered_map<std::string, std::size_t> index_;
};

} // namespace dsl

inline Problem parse_problem(std::string_view text, std::string name = "problem") {
  return dsl::Parser(text, std::move(name)).parse();
}

inline Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open problem file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of("/\\"); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return parse_problem(ss.str(), stem);
}

// Renders a problem in the text format; parse_problem(print_problem(p)) has
// the same content as p.
inline std::string print_problem(const Problem& p) {
  std::ostringstream os;
  os << "# " << p.name << "\n";
  for (const auto& [k, v] : p.metadata) os << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < p.num_det(); ++i) {
    os << "exists " << p.det_names[i] << " in [" << detail::format_number(p.domain[i].lo()) << ", "
       << detail::format_number(p.domain[i].hi()) << "]";
    if (!(p.sample_box[i] == p.domain[i]))
      os << " sample [" << detail::format_number(p.sample_box[i].lo()) << ", "
         << detail::format_number(p.sample_box[i].hi()) << "]";
    os << ";\n";
  }
  for (std::size_t i = 0; i < p.num_rand(); ++i) os << "rand " << p.rand_names[i] << " ~ " << to_string(p.dists[i]) << ";\n";
  const auto names = p.all_names();
  os << "constraint " << to_string(p.formula, names) << ";\n";
  return os.str();
}

} // namespace stochsat
