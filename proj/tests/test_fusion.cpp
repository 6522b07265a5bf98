#include "fusionkit/errors.hpp"
#include "fusionkit/fusion.hpp"

#include "doctest.h"

#include <set>

using namespace fk;

namespace {

Rational q(long n, long d = 1) { return frac(n, d); }
WeightClass W(long n, long d = 1) { return WeightClass(frac(n, d)); }

// Admissible b for fixed (a,c,d): |c-d|+1, |c-d|+3, ..., min(c+d-1, 2a-c-d-1).
std::set<int> progression(int a, int c, int d) {
  std::set<int> out;
  if (c < 1 || d < 1 || c > a - 1 || d > a - 1) return out;
  for (int b = std::abs(c - d) + 1; b <= std::min(c + d - 1, 2 * a - c - d - 1); b += 2) out.insert(b);
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("n_coeff fixtures") {
  CHECK(n_coeff(4, 2, 2, 3) == 1);
  CHECK(n_coeff(4, 3, 2, 3) == 0);
  CHECK(n_coeff(3, 1, 1, 1) == 1);
  CHECK(n_coeff(3, 0, 1, 1) == 0);
  CHECK(n_coeff(3, 1, 1, 3) == 0);
}

TEST_CASE("n_coeff symmetry and progression, a <= 12") {
  for (int a = 1; a <= 12; ++a)
    for (int b = -1; b <= a; ++b)
      for (int c = -1; c <= a; ++c)
        for (int d = -1; d <= a; ++d) {
          const int n = n_coeff(a, b, c, d);
          CHECK(n == n_coeff(a, b, d, c));
          CHECK(n == n_coeff(a, c, b, d));
          CHECK(n == static_cast<int>(progression(a, c, d).count(b)));
        }
}

TEST_CASE("L x L") {
  CHECK(fuse_LL(Level::make(3, 2), 1, 2).terms == LabelMultiset{{Sl2Label::L(2), 1}});
  CHECK(fuse_LL(Level::make(5, 2), 2, 2).terms == LabelMultiset{{Sl2Label::L(1), 1}, {Sl2Label::L(3), 1}});
  const Level L = Level::make(7, 3);
  for (int r = 1; r < 7; ++r) CHECK(fuse_LL(L, 1, r).terms == LabelMultiset{{Sl2Label::L(r), 1}});
}

TEST_CASE("L x E") {
  const Level L32 = Level::make(3, 2);
  auto d = fuse_LE(L32, 2, W(1, 3), 1, 1);
  CHECK(d.terms == LabelMultiset{{Sl2Label::E(W(4, 3), 1, 1), 1}});
  CHECK(d.status == FusionStatus::Semisimple);
  const Level L52 = Level::make(5, 2);
  CHECK(fuse_LE(L52, 2, W(1, 3), 2, 1).terms ==
        LabelMultiset{{Sl2Label::E(W(4, 3), 1, 1), 1}, {Sl2Label::E(W(4, 3), 2, 1), 1}});
  CHECK(fuse_LE(L52, 1, W(1, 3), 2, 1).terms == LabelMultiset{{Sl2Label::E(W(1, 3), 2, 1), 1}});
}

TEST_CASE("generic E x E") {
  const Level L32 = Level::make(3, 2);
  const auto d = fuse_EE(L32, W(1, 3), 1, 1, W(1, 5), 1, 1);
  // v = 2 leaves only the two flowed terms.
  const LabelMultiset want{{Sl2Label::E(WeightClass(q(8, 15) + q(3, 2)), 1, 1, -1), 1},
                           {Sl2Label::E(WeightClass(q(8, 15) - q(3, 2)), 1, 1, 1), 1}};
  CHECK(d.terms == want);
  CHECK(d.status == FusionStatus::Semisimple);
}

TEST_CASE("E x E weight bookkeeping") {
  for (auto [u, v] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}, {3, 4}, {5, 3}}) {
    const Level L = Level::make(u, v);
    const WeightClass mu = W(3, 97), mu2 = W(17, 97);
    for (int r = 1; r < u; ++r)
      for (int s = 1; s < v; ++s) {
        if (!is_canonical_rs(L, r, s)) continue;
        const auto d = fuse(L, Sl2Label::E(mu, r, s), Sl2Label::E(mu2, 1, 1));
        for (const auto& [label, mult] : d.terms) {
          CHECK(label.kind == Sl2Kind::E);
          if (label.flow == 0) CHECK(label.mu == mu + mu2);
          if (label.flow == -1) CHECK(label.mu == mu + mu2 + L.t());
          if (label.flow == 1) CHECK(label.mu == mu + mu2 - L.t());
          CHECK(std::abs(label.flow) <= 1);
          CHECK(mult >= 1);
        }
      }
  }
}

TEST_CASE("degenerate E x E") {
  const Level L32 = Level::make(3, 2);
  const WeightClass mu = W(1, 3);
  const auto d = fuse(L32, Sl2Label::E(mu, 1, 1), Sl2Label::E(-mu, 1, 1));
  CHECK(d.terms == LabelMultiset{{Sl2Label::P(2, 1, -1), 1}});
  CHECK(d.status == FusionStatus::NonSemisimple);
  CHECK(multiset_size(grothendieck_image(L32, d.terms)) == 4);

  const Level L34 = Level::make(3, 4);
  const WeightClass mu2 = WeightClass(q(-3, 4) - q(1, 3));  // lambda_{1,1} in mu + mu2
  const auto e = fuse(L34, Sl2Label::E(mu, 1, 1), Sl2Label::E(mu2, 1, 2));
  const WeightClass sum = mu + mu2;
  const LabelMultiset want{{Sl2Label::P(1, 1), 1},
                           {Sl2Label::E(sum + L34.t(), 1, 2, -1), 1},
                           {canonicalize(L34, Sl2Label::E(sum, 1, 3)), 1}};
  CHECK(e.terms == want);
  CHECK(e.status == FusionStatus::NonSemisimple);
}

TEST_CASE("spectral flow and dispatch") {
  const Level L32 = Level::make(3, 2);
  const WeightClass mu = W(1, 3), mu2 = W(1, 5);
  CHECK(fuse(L32, Sl2Label::E(mu, 1, 1, 2), Sl2Label::E(mu2, 1, 1, -2)) ==
        fuse(L32, Sl2Label::E(mu, 1, 1), Sl2Label::E(mu2, 1, 1)));
  // sigma L_1 is D^+_{2,1} at 3/2.
  CHECK(fuse(L32, canonicalize(L32, Sl2Label::L(1, 1)), Sl2Label::E(mu, 1, 1)).terms ==
        LabelMultiset{{Sl2Label::E(mu, 1, 1, 1), 1}});
  const Level L34 = Level::make(3, 4);
  CHECK(kind_of([&] { fuse(L34, Sl2Label::Dplus(1, 1), Sl2Label::Dplus(1, 1)); }) == ErrorKind::UnsupportedPair);
  CHECK(kind_of([&] { fuse(L34, Sl2Label::P(1, 1), Sl2Label::L(2)); }) == ErrorKind::UnsupportedPair);
}

TEST_CASE("Grothendieck images") {
  const Level L34 = Level::make(3, 4);
  CHECK(grothendieck_image(L34, Sl2Label::Eplus(1, 1)) ==
        LabelMultiset{{Sl2Label::Dplus(1, 1), 1}, {Sl2Label::Dminus(2, 3), 1}});
  LabelMultiset p;
  for (const auto& l : {Sl2Label::Dplus(1, 1), Sl2Label::Dminus(2, 3), Sl2Label::Dplus(1, 2, 1),
                        Sl2Label::Dminus(2, 2, 1)})
    p[canonicalize(L34, l)] += 1;
  CHECK(grothendieck_image(L34, Sl2Label::P(1, 1)) == p);
  CHECK(grothendieck_image(L34, Sl2Label::L(2)) == LabelMultiset{{Sl2Label::L(2), 1}});
  for (auto [u, v] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}, {3, 4}, {4, 3}, {5, 3}}) {
    const Level L = Level::make(u, v);
    for (int flow = -1; flow <= 1; ++flow)
      for (int r = 1; r < u; ++r)
        for (int s = 1; s < v; ++s) CHECK(multiset_size(grothendieck_image(L, Sl2Label::P(r, s, flow))) == 4);
  }
}

TEST_CASE("Grothendieck products") {
  const Level L32 = Level::make(3, 2);
  const WeightClass mu = W(1, 3);
  const Sl2Label x = Sl2Label::E(mu, 1, 1);
  CHECK(fuse_grothendieck(L32, Sl2Label::L(1), x) == grothendieck_image(L32, x));
  CHECK(multiset_size(fuse_grothendieck(L32, x, Sl2Label::E(-mu, 1, 1))) == 4);
}

TEST_CASE("triple product summand count") {
  const WeightClass nu = W(2, 7), mu = W(1, 3);
  CHECK(triple_product_summands(Level::make(3, 2), nu, mu) == 4);
  CHECK(triple_product_summands(Level::make(5, 2), nu, mu) == 4);
  // Each branch expanded by the generic rule, with multiplicity.
  CHECK(triple_product_summands(Level::make(3, 4), nu, mu) == 10);
  CHECK(triple_product_summands(Level::make(4, 3), nu, mu) == 9);
}

TEST_CASE("ring axioms on sampled weights") {
  std::vector<WeightClass> ws;
  for (int i = 0; i < 25; ++i) ws.push_back(W(7 * i + 3, 97));
  for (auto [u, v] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}, {3, 4}}) {
    const auto rep = check_ring_axioms(Level::make(u, v), ws, 50, 7);
    CAPTURE(u);
    CAPTURE(v);
    CHECK(rep.ok());
    CHECK(rep.triples_checked == 50);
    for (const auto& msg : rep.violations) MESSAGE(msg);
  }
}

TEST_CASE("fusion JSON") {
  const Level L32 = Level::make(3, 2);
  const auto j = to_json(fuse_LL(L32, 2, 2), L32);
  CHECK(j.at("status") == "Semisimple");
  REQUIRE(j.at("terms").size() == 1);
  CHECK(j.at("terms")[0].at("label") == "L(1)");
  CHECK(j.at("terms")[0].at("mult") == 1);
}
