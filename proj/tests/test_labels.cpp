#include "fusionkit/errors.hpp"
#include "fusionkit/labels.hpp"

#include "doctest.h"

#include <set>

#include <numeric>

using namespace fk;

namespace {

Rational q(long n, long d = 1) { return frac(n, d); }

const std::vector<std::pair<long, long>> kLevels{{2, 1}, {3, 1}, {3, 2}, {2, 3}, {5, 2}, {3, 4}, {4, 3}, {5, 3}, {7, 4}};

}  // namespace

TEST_CASE("level data") {
  const Level L = Level::make(3, 2);
  CHECK(L.t() == q(3, 2));
  CHECK(L.k() == q(-1, 2));
  // c = 3k/(k+2) and 3 - 6v/u
  CHECK(L.c_sl2() == q(-1));
  CHECK(L.c_n2() == q(-1));
  CHECK(Level::parse("5/2") == Level::make(5, 2));
  CHECK_THROWS_AS(Level::parse("4/2"), Error);
  CHECK_THROWS_AS(Level::make(1, 2), Error);
  CHECK_THROWS_AS(Level::parse("3/"), Error);
  CHECK_THROWS_AS(Level::parse("3/0"), Error);
}

TEST_CASE("lambda, Delta and h fixtures at 3/2") {
  const Level L = Level::make(3, 2);
  CHECK(lambda_rs(L, 1, 0) == 0);
  CHECK(lambda_rs(L, 1, 1) == q(-3, 2));
  CHECK(lambda_rs(L, 2, 1) == q(-1, 2));
  CHECK(delta_aff(L, 1, 0) == 0);
  CHECK(delta_aff(L, 1, 1) == q(-1, 8));
  CHECK(delta_aff(L, 2, 1) == q(-1, 8));
  CHECK(h_n2(L, 1, 0, 0) == 0);
  CHECK(h_n2(L, 1, 1, 0) == q(-1, 8));
  CHECK(h_n2(L, 1, 1, 1) == q(-1, 2));
}

TEST_CASE("weight classes live in Q/2Z") {
  CHECK(WeightClass(q(5, 2)).rep() == q(1, 2));
  CHECK(WeightClass(q(-1, 2)).rep() == q(3, 2));
  CHECK(WeightClass(q(-3, 2)) == WeightClass(q(1, 2)));
  CHECK_FALSE(WeightClass(q(1, 2)) == WeightClass(q(-1, 2)));
  CHECK(WeightClass(q(1, 3)).contains(q(7, 3)));
  CHECK_FALSE(WeightClass(q(1, 3)).contains(q(4, 3)));
}

TEST_CASE("genericity fixtures at 3/2") {
  const Level L = Level::make(3, 2);
  CHECK(is_generic(L, WeightClass(q(0)), 1, 1));
  CHECK_FALSE(is_generic(L, WeightClass(q(-3, 2)), 1, 1));
  CHECK_FALSE(is_generic(L, WeightClass(q(1, 2)), 1, 1));
  CHECK_FALSE(is_generic(L, WeightClass(q(3, 2)), 1, 1));
  CHECK(is_generic(L, WeightClass(q(1, 3)), 1, 1));
}

TEST_CASE("weight identities over several levels") {
  for (auto [u, v] : kLevels) {
    const Level L = Level::make(u, v);
    for (int r = 1; r < u; ++r)
      for (int s = 1; s < v; ++s) {
        CAPTURE(u);
        CAPTURE(v);
        CAPTURE(r);
        CAPTURE(s);
        // lambda_{r,s} = -lambda_{u-r,v-s} mod 2
        CHECK(WeightClass(lambda_rs(L, r, s)) == WeightClass(-lambda_rs(L, u - r, v - s)));
        CHECK(delta_aff(L, r, s) == delta_aff(L, u - r, v - s));
        for (const Rational& x : {q(0), q(1, 3), q(-5, 7), q(2)}) {
          CHECK(h_n2(L, r, s, x) - h_n2(L, r, s, 0) == -q(u, 4 * v) * x * x);
          const WeightClass mu(x);
          CHECK(is_generic(L, mu, r, s) == is_generic(L, mu, u - r, v - s));
        }
      }
  }
}

TEST_CASE("canonicalization fixtures") {
  const Level L34 = Level::make(3, 4);
  const WeightClass mu(q(1, 5));
  CHECK(canonicalize(L34, Sl2Label::E(mu, 2, 2)) == Sl2Label::E(mu, 1, 2));
  const Level L32 = Level::make(3, 2);
  CHECK(canonicalize(L32, Sl2Label::L(1, 1)) == Sl2Label::Dplus(2, 1));
  CHECK(canonicalize(L32, Sl2Label::L(1, -1)) == Sl2Label::Dminus(2, 1));
  CHECK(canonicalize(L32, Sl2Label::L(2)) == Sl2Label::L(2));
  // sigma^{+1} D^-_{r,v-1} is L_{u-r}
  CHECK(canonicalize(L32, Sl2Label::Dminus(1, 1, 1)) == Sl2Label::L(2));
  CHECK(canonicalize(L34, Sl2Label::Dminus(1, 1)) == Sl2Label::Dplus(2, 2, -1));
  CHECK_THROWS_AS(canonicalize(L32, Sl2Label::L(3)), Error);
}

TEST_CASE("canonicalize is idempotent") {
  for (auto [u, v] : kLevels) {
    const Level L = Level::make(u, v);
    std::vector<Sl2Label> labels;
    for (int flow = -2; flow <= 2; ++flow) {
      for (int r = 1; r < u; ++r) {
        labels.push_back(Sl2Label::L(r, flow));
        for (int s = 1; s < v; ++s) {
          labels.push_back(Sl2Label::Dplus(r, s, flow));
          labels.push_back(Sl2Label::Dminus(r, s, flow));
          labels.push_back(Sl2Label::E(WeightClass(q(3, 97)), r, s, flow));
        }
      }
    }
    for (const auto& l : labels) {
      const Sl2Label c = canonicalize(L, l);
      CHECK(canonicalize(L, c) == c);
      if (c.kind == Sl2Kind::L) CHECK(c.flow == 0);
      if (c.kind == Sl2Kind::E) CHECK(is_canonical_rs(L, c.r, c.s));
    }
  }
}

TEST_CASE("simple module enumeration") {
  auto count = [](long u, long v) {
    const auto sm = simple_modules(Level::make(u, v), 0, 0);
    return std::make_pair(sm.discrete.size(), sm.e_families.size());
  };
  CHECK(count(3, 2) == std::make_pair<std::size_t, std::size_t>(2, 1));
  CHECK(count(2, 3) == std::make_pair<std::size_t, std::size_t>(2, 1));
  CHECK(count(3, 4) == std::make_pair<std::size_t, std::size_t>(6, 3));
  // Canonical labels in a window are pairwise distinct.
  const auto sm = simple_modules(Level::make(5, 3), -2, 2);
  std::set<Sl2Label> seen(sm.discrete.begin(), sm.discrete.end());
  CHECK(seen.size() == sm.discrete.size());
}

TEST_CASE("label text grammar") {
  const Level L32 = Level::make(3, 2);
  const Sl2Label e = parse_sl2_label("E[1/3](1,1)", L32);
  CHECK(e == Sl2Label::E(WeightClass(q(1, 3)), 1, 1));
  CHECK(parse_sl2_label("sf(-1).P(2,1)", L32) == Sl2Label::P(2, 1, -1));
  CHECK(render(Sl2Label::P(2, 1, -1), L32) == "sf(-1).P(2,1)@3/2");
  CHECK(parse_sl2_label("E[7/3](1,1)@3/2", std::nullopt) == e);
  CHECK(parse_sl2_label_raw("E[1/2](1,1)@5/2").level == Level::make(5, 2));

  SUBCASE("non-generic weights are rejected") {
    for (const char* text : {"E[1/2](1,1)", "E[3/2](1,1)", "E[-3/2](1,1)"}) {
      try {
        parse_sl2_label(text, L32);
        FAIL("expected NonGeneric for " << text);
      } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::NonGeneric);
      }
    }
  }

  SUBCASE("parse errors carry a position") {
    try {
      parse_sl2_label_raw("E[1/2](1;1)");
      FAIL("expected a parse error");
    } catch (const ParseError& err) {
      CHECK(err.position() == 8);
    }
    CHECK_THROWS_AS(parse_sl2_label_raw("Q(1)"), ParseError);
    CHECK_THROWS_AS(parse_sl2_label_raw("sf(x).L(1)"), ParseError);
  }

  SUBCASE("round trip") {
    const Level L = Level::make(5, 3);
    for (const char* text : {"L(2)", "D+(1,2)", "sf(2).D-(3,1)", "E[2/9](2,1)", "sf(-3).E[1/7](1,2)", "E+(1,1)",
                             "sf(1).E-(2,2)", "P(4,1)"}) {
      const Sl2Label x = parse_sl2_label(text, L);
      CHECK(parse_sl2_label(render(x), L) == x);
    }
  }
}

TEST_CASE("label JSON schema") {
  const Level L = Level::make(5, 2);
  const auto j = to_json(Sl2Label::E(WeightClass(q(1, 3)), 1, 1, 2), L);
  CHECK(j.at("variant") == "E");
  CHECK(j.at("r") == 1);
  CHECK(j.at("s") == 1);
  CHECK(j.at("mu") == "1/3");
  CHECK(j.at("flow") == 2);
  CHECK(j.at("level").at("u") == 5);
  CHECK(j.at("level").at("v") == 2);
}

TEST_CASE("N=2 labels") {
  const Level L = Level::make(3, 2);
  const N2Label d = N2Label::discrete(L, 2, 1);
  CHECK(d.q == q(2, 3));
  CHECK_THROWS_AS(validate(L, N2Label::discrete(L, 2, 0)), Error);  // p + r must be odd
  const N2Label x = parse_n2_label("NL[1/5](1,1)", L);
  CHECK(x == N2Label::relaxed(q(1, 5), 1, 1));
  CHECK(parse_n2_label(render(x), L) == x);
  const N2Label odd = parse_n2_label("Pi.NL[1/5](1,1)", L);
  CHECK(odd.parity == 1);
}
