#include "fusionkit/coset.hpp"
#include "fusionkit/errors.hpp"

#include "doctest.h"

using namespace fk;

namespace {

Rational q(long n, long d = 1) { return frac(n, d); }
WeightClass W(long n, long d = 1) { return WeightClass(frac(n, d)); }

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

TEST_CASE("weight transport fixtures") {
  const Level L = Level::make(3, 2);
  CHECK(coset::sl2_to_n2_weights(L, 0, 0) == std::make_pair(q(0), q(0)));
  CHECK(coset::sl2_to_n2_weights(L, q(-3, 2), q(-1, 8)) == std::make_pair(q(-1), q(-1, 2)));
  CHECK(h_n2(L, 1, 1, -1) == q(-1, 2));
  CHECK(coset::sl2_to_n2_weights(L, 1, 1) == std::make_pair(q(2, 3), q(5, 6)));
}

TEST_CASE("conformal weight transport agrees with h_n2") {
  for (auto [u, v] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}, {3, 4}, {4, 3}, {5, 3}}) {
    const Level L = Level::make(u, v);
    for (int r = 1; r < u; ++r)
      for (int s = 0; s < v; ++s)
        for (const Rational& mu : {q(0), q(1, 3), q(-7, 5), lambda_rs(L, r, s)}) {
          const auto [qq, h] = coset::sl2_to_n2_weights(L, mu, delta_aff(L, r, s));
          CHECK(h == h_n2(L, r, s, qq));
        }
  }
}

TEST_CASE("coset components") {
  const Level L = Level::make(3, 2);
  const WeightClass mu = W(1, 3);
  CHECK(coset::coset_component(L, Sl2Label::E(mu, 1, 1), q(1, 3), 0) == N2Label::relaxed(q(2, 9), 1, 1, 0));
  CHECK(coset::coset_component(L, Sl2Label::E(mu, 1, 1), q(7, 3), 1) == N2Label::relaxed(q(14, 9), 1, 1, 1));
  // flow 1: p in mu + 3/2, q = pv/u - 1, parity i + 1
  const N2Label x = coset::coset_component(L, Sl2Label::E(mu, 1, 1, 1), q(11, 6), 0);
  CHECK(x == N2Label::relaxed(q(2, 9), 1, 1, 1));
  CHECK(kind_of([&] { coset::coset_component(L, Sl2Label::E(mu, 1, 1), q(1, 2), 0); }) == ErrorKind::CosetMismatch);
  CHECK(kind_of([&] { coset::coset_component(L, Sl2Label::L(1), 0, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("N=2 fusion at 3/2") {
  const Level L = Level::make(3, 2);
  const Rational a = q(1, 5), b = q(2, 7);
  const auto m = coset::n2_fuse(L, N2Label::relaxed(a, 1, 1), N2Label::relaxed(b, 1, 1));
  const coset::N2Multiset want{{canonicalize(L, N2Label::relaxed(a + b + 1, 1, 1, 1)), 1},
                               {canonicalize(L, N2Label::relaxed(a + b - 1, 1, 1, 1)), 1}};
  CHECK(m == want);
  // One odd factor flips every output parity.
  const auto odd = coset::n2_fuse(L, N2Label::relaxed(a, 1, 1, 1), N2Label::relaxed(b, 1, 1));
  for (const auto& [label, mult] : odd) CHECK(label.parity == 0);
}

TEST_CASE("N=2 fusion matches the sl(2) transport") {
  for (auto [u, v] : std::vector<std::pair<long, long>>{{3, 2}, {3, 4}, {5, 3}}) {
    const Level L = Level::make(u, v);
    int done = 0;
    for (int i = 0; i < 20; ++i) {
      const Rational qa = frac(2 * i + 1, 53), qb = frac(3 * i + 2, 61);
      for (int s2 = 1; s2 < v; ++s2) {
        const N2Label a = N2Label::relaxed(qa, 1, 1), b = N2Label::relaxed(qb, 1, s2);
        if (!is_canonical_rs(L, 1, s2)) continue;
        const auto x = coset::n2_fuse(L, a, b);
        CHECK(x == coset::n2_fuse_formula(L, a, b));
        for (const auto& [label, mult] : x) {
          const Rational d = label.q - qa - qb;
          CHECK((d == 0 || d == 1 || d == -1));
          CHECK(label.parity == (d == 0 ? 0 : 1));
        }
        ++done;
      }
    }
    CHECK(done >= 20);
  }
}

TEST_CASE("degenerate N=2 sums are rejected") {
  const Level L = Level::make(3, 2);
  // q + q' = 0 sits on the non-semisimple locus.
  CHECK(kind_of([&] { coset::n2_fuse(L, N2Label::relaxed(q(1, 5), 1, 1), N2Label::relaxed(q(-1, 5), 1, 1)); }) ==
        ErrorKind::NonGenericOutput);
}

TEST_CASE("free field labels") {
  CHECK(kind_of([] { coset::ffr_label(Level::make(2, 1), Sl2Label::L(1)); }) == ErrorKind::FFRUnavailable);
  const Level L = Level::make(3, 4);
  const auto f = coset::ffr_label(L, Sl2Label::Eminus(2, 3));
  CHECK(f.vir_r == 1);
  CHECK(f.vir_s == 1);
  CHECK(f.pullback == coset::Pullback::Psi);
  for (int flow = -2; flow <= 2; ++flow)
    for (const WeightClass& mu : {W(1, 5), W(7, 11)}) {
      const auto g = coset::ffr_label(L, Sl2Label::E(mu, 1, 2, flow));
      const auto [l, w] = coset::ffr_decode(L, g);
      CHECK(l == flow);
      CHECK(w == mu);
    }
  const auto j = coset::to_json(f);
  CHECK(j.at("pullback").is_string());
  CHECK(j.at("virasoro") == nlohmann::json::array({1, 1}));
}
