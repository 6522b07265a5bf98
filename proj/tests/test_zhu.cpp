#include "fusionkit/zhu.hpp"

#include "doctest.h"

#include <set>

using namespace fk;

namespace {

Rational q(long n, long d = 1) { return frac(n, d); }

const std::vector<std::string> kXYZ{"x", "y", "z"};
const std::vector<std::string> kED{"eta", "Delta"};

MultiPoly X(const char* n) { return MultiPoly::variable(kXYZ, n); }

// f_u(eta, Delta, t) by substituting into f_u(x, y, z).
MultiPoly f_u(const Level& level, const MultiPoly& a, const MultiPoly& b) {
  const std::vector<std::string> wide{"x", "y", "z", "eta", "Delta"};
  MultiPoly f = zhu::f_poly(static_cast<int>(level.u())).rebase(wide);
  f = f.substitute("z", MultiPoly::constant(wide, level.t()));
  f = f.substitute("x", a.rebase(wide));
  f = f.substitute("y", b.rebase(wide));
  return f.rebase(kED);
}

int eta_degree_without_delta(const MultiPoly& p) {
  int best = -1;
  for (const auto& [e, c] : p.terms())
    if (e[1] == 0) best = std::max(best, e[0]);
  return best;
}

}  // namespace

TEST_CASE("f recursion fixtures") {
  const MultiPoly x = X("x"), y = X("y"), z = X("z");
  CHECK(zhu::f_poly(2) == x * z);
  CHECK(zhu::f_poly(3) == q(1, 2) * x.pow(2) * z.pow(2) - y * z);
  CHECK(zhu::f_poly(4) == q(1, 6) * x.pow(3) * z.pow(3) - x * y * z.pow(2) + q(1, 3) * x * z);
}

TEST_CASE("f recursion against its defining relation") {
  const MultiPoly x = X("x"), y = X("y"), z = X("z");
  for (int n = 2; n <= 8; ++n) {
    const Rational d = Rational((n + 1) * (n + 1));
    const MultiPoly lhs = d * zhu::f_poly(n + 2);
    const MultiPoly rhs = Rational(2 * n + 1) * x * z * zhu::f_poly(n + 1) -
                          (4 * y * z + x * x * z * z - MultiPoly::constant(kXYZ, Rational((n - 1) * (n + 1)))) *
                              zhu::f_poly(n);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("K sets") {
  using V = std::vector<std::pair<int, int>>;
  CHECK(zhu::K_set(2, 3) == V{{1, 1}});
  CHECK(zhu::K_set(5, 1).empty());
  CHECK(zhu::K_set(3, 4) == V{{1, 1}, {1, 2}, {2, 1}});
}

TEST_CASE("p1 and p2 at small levels") {
  const MultiPoly eta = MultiPoly::variable(kED, "eta"), delta = MultiPoly::variable(kED, "Delta");
  CHECK(zhu::p1_poly(Level::make(2, 1)) == 2 * eta);
  CHECK(zhu::p2_poly(Level::make(2, 1)) == 2 * (2 * delta - eta));
  const Level L23 = Level::make(2, 3);
  // h_{1,1;eta} at t = 2/3 is ((1-2/3)^2 - 1)/(8/3) - eta^2/6 = -1/3 - eta^2/6
  const MultiPoly h = MultiPoly::constant(kED, q(-1, 3)) - q(1, 6) * eta * eta;
  CHECK(zhu::p1_poly(L23) == q(2, 3) * eta * (delta - h));
}

TEST_CASE("degree properties of f_u") {
  const MultiPoly eta = MultiPoly::variable(kED, "eta"), delta = MultiPoly::variable(kED, "Delta");
  for (auto [u, v] : std::vector<std::pair<long, long>>{{2, 3}, {3, 2}, {5, 2}, {3, 4}, {4, 3}, {5, 3}, {7, 2}}) {
    const Level L = Level::make(u, v);
    const MultiPoly f = f_u(L, eta, delta);
    CAPTURE(u);
    CAPTURE(v);
    CHECK(f.degree_in("eta") == u - 1);
    CHECK(eta_degree_without_delta(f) == u - 1);
    const Rational vu = frac(v, u);
    const MultiPoly diff =
        f - f_u(L, eta + MultiPoly::constant(kED, 2 * vu), delta - eta - MultiPoly::constant(kED, vu));
    CHECK(diff.degree_in("eta") <= u - 2);
  }
}

TEST_CASE("Zhu simples") {
  const auto s23 = zhu::zhu_simples(Level::make(2, 3));
  REQUIRE(s23.discrete.size() == 1);
  CHECK(s23.discrete[0].eta == 0);
  CHECK(s23.discrete[0].delta == 0);
  CHECK(s23.continuous.size() == 1);

  const Level L32 = Level::make(3, 2);
  const auto s32 = zhu::zhu_simples(L32);
  std::set<std::pair<Rational, Rational>> got;
  for (const auto& p : s32.discrete) got.insert({p.eta, p.delta});
  // h_{2,0;q} = 3/(4t) - t q^2/4
  std::set<std::pair<Rational, Rational>> want{{0, 0}, {q(2, 3), q(1, 3)}, {q(-2, 3), q(1, 3)}};
  CHECK(got == want);
}

TEST_CASE("classification zeros") {
  for (auto [u, v] : std::vector<std::pair<long, long>>{{2, 3}, {3, 2}, {5, 2}, {3, 4}, {4, 3}}) {
    const auto rep = zhu::verify_classification(Level::make(u, v), 6);
    CAPTURE(u);
    CAPTURE(v);
    CHECK(rep.ok());
    CHECK(rep.discrete_count == u * (u - 1) / 2);
    for (const auto& f : rep.failures) MESSAGE(f);
  }
}

TEST_CASE("non-zeros are detected") {
  const Level L = Level::make(3, 2);
  const MultiPoly p1 = zhu::p1_poly(L), p2 = zhu::p2_poly(L);
  // A point off both families.
  const std::vector<Rational> pt{q(1, 7), q(5, 3)};
  CHECK((p1.evaluate(pt) != 0 || p2.evaluate(pt) != 0));
}

TEST_CASE("hom space bounds") {
  const Level L = Level::make(3, 2);
  const Rational q1 = q(1, 3), q2 = q(1, 5);
  CHECK(zhu::hom_upper_bound(L, q1, 1, 1, q2, q1 + q2 + 3, 0) == 0);
  const Rational q3 = q1 + q2 + 1;
  CHECK(zhu::hom_upper_bound(L, q1, 1, 1, q2, q3, h_n2(L, 1, 1, q3)) == 1);
  CHECK(zhu::hom_upper_bound(L, q1, 1, 1, q2, q3, h_n2(L, 1, 1, q3) + 1) == 0);
  const Rational q3b = q1 + q2 - 1;
  CHECK(zhu::hom_upper_bound(L, q1, 1, 1, q2, q3b, h_n2(L, 1, 1, q3b)) == 1);
  const Rational q30 = q1 + q2;
  CHECK(zhu::hom_upper_bound(L, q1, 1, 1, q2, q30, h_n2(L, 1, 2, q30)) == 1);
  CHECK(zhu::hom_upper_bound(L, q1, 1, 1, q2, q30, h_n2(L, 1, 1, q30)) == 0);
  CHECK(zhu::verma_hom_bound(q1, q2, q30) == 2);
  CHECK(zhu::verma_hom_bound(q1, q2, q3) == 1);
  CHECK(zhu::verma_hom_bound(q1, q2, q1 + q2 + 2) == 0);
}

TEST_CASE("determinant identity") {
  const auto sym = zhu::det_identity_symbolic(3);
  CHECK(sym.ok());
  CHECK(sym.symbolic_checks == 9);
  const auto pts = zhu::det_identity_points(1, 2, q(3, 2), 100, 42);
  CHECK(pts.ok());
  CHECK(pts.point_checks == 100);
  const auto fpm = zhu::fpm_factorization_check(3);
  CHECK(fpm.ok());
}
