#pragma once

#include "fusionkit/rational.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fk {

using Exponents = std::vector<int>;

// Graded lexicographic order: total degree first, then lexicographic.
struct GrLex {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse polynomial over Q in a fixed ordered list of variables. Negative exponents are
// allowed, so the same type covers Laurent polynomials.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(const std::vector<std::string>& vars, const Rational& c);
  static MultiPoly variable(const std::vector<std::string>& vars, const std::string& name);
  static MultiPoly monomial(const std::vector<std::string>& vars, const Exponents& e, const Rational& c);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponents, Rational, GrLex>& terms() const { return terms_; }
  std::size_t index_of(const std::string& name) const;

  bool is_zero() const { return terms_.empty(); }
  std::optional<Rational> as_constant() const;
  Rational coefficient(const Exponents& e) const;
  // Largest monomial in graded-lex order.
  std::pair<Exponents, Rational> leading_term() const;

  int degree_in(const std::string& name) const;
  int total_degree() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  MultiPoly operator-() const;

  bool operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

  MultiPoly pow(int n) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  // Replaces variable `name` by `value` (which must use the same variable list).
  MultiPoly substitute(const std::string& name, const MultiPoly& value) const;
  // Rewrites into another variable list; every variable with a nonzero exponent must be present.
  MultiPoly rebase(const std::vector<std::string>& vars) const;
  // Exact quotient this / d when d divides this with a polynomial quotient.
  std::optional<MultiPoly> divide_exact(const MultiPoly& d) const;

  std::string str() const;
  nlohmann::json to_json() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  void require_same_vars(const MultiPoly& o) const;

  std::vector<std::string> vars_;
  std::map<Exponents, Rational, GrLex> terms_;
};

}  // namespace fk
