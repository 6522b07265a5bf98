#pragma once

#include "fusionkit/multipoly.hpp"
#include "fusionkit/ratfunc.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fk::cohom {

// Variables of the form language and of the symbolic coefficient field.
inline const std::vector<std::string> kFormVars{"z1", "z2", "w"};
inline const std::vector<std::string> kParamVars{"alpha", "beta", "gamma", "w"};

// num / ((z1-w)^m1 (z2-w)^m2 (z1-z2)^n), with num Laurent in z1, z2 and polynomial in w.
struct Form {
  MultiPoly num{kFormVars};
  int m1 = 0;
  int m2 = 0;
  int n = 0;

  static Form constant(const Rational& c);
  static Form variable(const std::string& name);

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator*(const Form& o) const;
  Form operator/(const Form& o) const;
  Form pow(int k) const;

  double evaluate(double z1, double z2, double w) const;
  Form swapped() const;
  std::string str() const;
};

// Grammar: sums and products of rationals, z1, z2, w, parenthesised
// subexpressions and integer powers; divisors must be products of
// monomials in z1, z2 and powers of (z1-w), (z2-w), (z1-z2).
Form parse_form(std::string_view text);

// Symmetric form written as P / D with D = (z1 z2)^K ((z1-w)(z2-w))^M (z1-z2)^(2N).
struct Normalized {
  MultiPoly P{kFormVars};
  int K = 0;
  int M = 0;
  int N = 0;
  MultiPoly D{kFormVars};
};

Normalized normalize(const Form& f);

// One reduction step: the leading symmetric monomial (k,l) removed.
struct Step {
  int degree;
  int spread;
};

struct NumericParams {
  Rational alpha, beta, gamma, w;
};

// c for the symbolic parameters alpha, beta, gamma, w.
RatFunc reduce_symbolic(const Form& f, std::vector<Step>* trace = nullptr);
// c at exact rational parameters. Throws ReductionSingular on a vanishing coefficient.
Rational reduce_numeric(const Form& f, const NumericParams& p, std::vector<Step>* trace = nullptr);

// I_w[1](alpha,beta,gamma) / I_w[1](alpha-K, beta-M, gamma-N) from the closed Selberg form,
// as a rational function in factored form.
RatFunc selberg_shift_ratio(int K, int M, int N);

// Membership in the excluded parameter set (H, or alpha+beta+2gamma integral).
// Returns the reason, or nullopt when the point is admissible.
std::optional<std::string> excluded_reason(const Rational& alpha, const Rational& beta, const Rational& gamma);

struct IntegralComparison {
  double reduced;
  double quadrature;
  double abs_err;
  double rel_err;
};

// Compares reduce_numeric against I_w[F]/I_w[1] by simplex quadrature.
IntegralComparison reduce_vs_integral(const Form& f, const NumericParams& p);

}  // namespace fk::cohom
