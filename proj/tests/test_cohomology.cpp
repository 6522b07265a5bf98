#include "fusionkit/cohomology.hpp"
#include "fusionkit/errors.hpp"
#include "fusionkit/numerics.hpp"

#include "doctest.h"

#include <cmath>

using namespace fk;
using cohom::parse_form;

namespace {

Rational q(long n, long d = 1) { return frac(n, d); }

const std::vector<std::string>& P() { return cohom::kParamVars; }
MultiPoly V(const char* n) { return MultiPoly::variable(P(), n); }
MultiPoly C(long c) { return MultiPoly::constant(P(), c); }

const cohom::NumericParams kPt{q(1, 3), q(1, 4), q(1, 5), q(1)};

Rational at(const RatFunc& f, const cohom::NumericParams& p) { return f.evaluate({p.alpha, p.beta, p.gamma, p.w}); }

}  // namespace

TEST_CASE("closed forms") {
  const MultiPoly a = V("alpha"), b = V("beta"), g = V("gamma"), w = V("w");
  CHECK(cohom::reduce_symbolic(parse_form("1")).equals(RatFunc(C(1))));
  CHECK(cohom::reduce_symbolic(parse_form("z1*z2"))
            .equals(RatFunc(w * w * (a + g + C(1)) * (a + C(1)), {a + b + 2 * g + C(2), a + b + g + C(2)})));
  CHECK(cohom::reduce_symbolic(parse_form("z1+z2")).equals(RatFunc(2 * w * (a + g + C(1)), {a + b + 2 * g + C(2)})));
}

TEST_CASE("linearity") {
  const std::vector<std::string> forms{"z1^2+z2^2", "z1*z2", "1/(z1*z2)", "(z1+z2)/((z1-w)*(z2-w))", "z1^3*z2+z1*z2^3"};
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = 0; j < forms.size(); ++j) {
      const auto F = parse_form(forms[i]), G = parse_form(forms[j]);
      const RatFunc lhs = cohom::reduce_symbolic(F * cohom::Form::constant(q(3, 7)) - G * cohom::Form::constant(q(5)));
      const RatFunc rhs = cohom::reduce_symbolic(F) * q(3, 7) - cohom::reduce_symbolic(G) * q(5);
      CHECK(lhs.equals(rhs));
    }
}

TEST_CASE("alpha-beta symmetry with z -> w - z") {
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"z1+z2", "(w-z1)+(w-z2)"},
      {"z1*z2", "(w-z1)*(w-z2)"},
      {"z1^2*z2+z1*z2^2", "(w-z1)^2*(w-z2)+(w-z1)*(w-z2)^2"},
      {"1/(z1*z2)", "1/((z1-w)*(z2-w))"},
      {"(z1+z2)/(z1*z2)", "((w-z1)+(w-z2))/((z1-w)*(z2-w))"}};
  const cohom::NumericParams swapped{kPt.beta, kPt.alpha, kPt.gamma, q(3, 2)};
  const cohom::NumericParams pt{kPt.alpha, kPt.beta, kPt.gamma, q(3, 2)};
  for (const auto& [f, g] : pairs) {
    CAPTURE(f);
    CHECK(cohom::reduce_numeric(parse_form(f), pt) == cohom::reduce_numeric(parse_form(g), swapped));
  }
}

TEST_CASE("symbolic and numeric reduction agree") {
  const std::vector<std::string> forms{"1", "z1+z2", "z1*z2", "(z1+z2)^2", "z1^4+z2^4", "1/(z1*z2)",
                                       "z1*z2/((z1-w)*(z2-w))", "(z1^2+z2^2)/(z1-z2)^2", "1/(z1^2*z2^2)"};
  const std::vector<cohom::NumericParams> pts{kPt, {q(2, 7), q(-3, 11), q(5, 13), q(2)}, {q(9, 5), q(1, 6), q(-1, 9), q(1, 3)}};
  for (const auto& text : forms) {
    const RatFunc c = cohom::reduce_symbolic(parse_form(text));
    for (const auto& p : pts) {
      CAPTURE(text);
      CHECK(at(c, p) == cohom::reduce_numeric(parse_form(text), p));
    }
  }
}

TEST_CASE("reduction trace is strictly decreasing") {
  for (const char* text : {"(z1+z2)^5", "z1^3*z2^2+z1^2*z2^3+z1*z2", "1/(z1^2*z2)+1/(z2^2*z1)"}) {
    std::vector<cohom::Step> trace;
    cohom::reduce_numeric(parse_form(text), kPt, &trace);
    CHECK_FALSE(trace.empty());
    for (std::size_t i = 1; i < trace.size(); ++i) {
      const auto& a = trace[i - 1];
      const auto& b = trace[i];
      CHECK((b.degree < a.degree || (b.degree == a.degree && b.spread < a.spread)));
    }
  }
}

TEST_CASE("reduction matches quadrature") {
  for (const char* text : {"1", "z1+z2", "z1*z2", "(z1+z2)^2", "1/(z1*z2)", "(z1-z2)^2"}) {
    const auto cmp = cohom::reduce_vs_integral(parse_form(text), kPt);
    CAPTURE(text);
    CHECK(cmp.rel_err < 1e-6);
  }
}

TEST_CASE("shift ratio against the closed Selberg form") {
  const double a = 0.31, b = 0.47, g = 0.23, w = 1.7;
  for (auto [K, M, N] : std::vector<std::array<int, 3>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 1, 1}}) {
    const RatFunc r = cohom::selberg_shift_ratio(K, M, N);
    // Evaluate at exact rationals equal to the doubles above.
    const std::vector<Rational> pt{q(31, 100), q(47, 100), q(23, 100), q(17, 10)};
    const double want = (num::selberg2_formula(w, a, b, g) / num::selberg2_formula(w, a - K, b - M, g - N)).real();
    CHECK(to_double(r.evaluate(pt)) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("excluded parameter set") {
  CHECK_FALSE(cohom::excluded_reason(q(1, 3), q(1, 4), q(1, 5)).has_value());
  CHECK(cohom::excluded_reason(q(1), q(1, 4), q(1, 5)).has_value());
  CHECK(cohom::excluded_reason(q(1, 4), q(1, 3), q(1, 2)).has_value());    // 2 gamma
  CHECK(cohom::excluded_reason(q(1, 3), q(1, 6), q(1, 4)).has_value());    // alpha + beta + 2 gamma
  CHECK(cohom::excluded_reason(q(1, 4), q(1, 3), q(1, 4)).has_value());    // 2(alpha + gamma)
}

TEST_CASE("singular coefficients are reported") {
  // alpha + beta + gamma = -2 while H and alpha+beta+2gamma are avoided.
  const cohom::NumericParams p{q(-7, 6), q(-7, 6), q(1, 3), q(1)};
  REQUIRE_FALSE(cohom::excluded_reason(p.alpha, p.beta, p.gamma).has_value());
  try {
    cohom::reduce_numeric(parse_form("z1*z2"), p);
    FAIL("expected ReductionSingular");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ReductionSingular);
    CHECK(std::string(e.what()).find("alpha") != std::string::npos);
  }
}

TEST_CASE("divergent integrals surface as quadrature errors") {
  try {
    cohom::reduce_vs_integral(parse_form("1/(z1-z2)^2"), kPt);
    FAIL("expected a quadrature error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Quadrature);
  }
}

TEST_CASE("form parser") {
  const auto f = parse_form("(z1+z2)^2/(z1*z2)");
  CHECK(f.evaluate(0.3, 0.7, 1.0) == doctest::Approx(1.0 / 0.21));
  CHECK(parse_form("z1^(-1)").evaluate(0.5, 0.2, 1.0) == doctest::Approx(2.0));
  CHECK(parse_form("-z1 + 2/3*z2").evaluate(0.5, 0.3, 1.0) == doctest::Approx(-0.3));
  try {
    parse_form("z1 + * z2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse_form("z3"), ParseError);
  CHECK_THROWS_AS(parse_form("1/(z1+z2)"), Error);
  CHECK_THROWS_AS(parse_form("(z1"), ParseError);
}
