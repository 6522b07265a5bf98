#include "fusionkit/zhu.hpp"

#include "fusionkit/errors.hpp"

#include <random>

namespace fk::zhu {

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};
const std::vector<std::string> kEtaDelta{"eta", "Delta"};
const std::vector<std::string> kF{"x", "y", "z", "q", "t"};
const std::vector<std::string> kDet{"t", "q", "q2", "h3"};

MultiPoly C(const std::vector<std::string>& vars, const Rational& c) { return MultiPoly::constant(vars, c); }
MultiPoly V(const std::vector<std::string>& vars, const std::string& name) { return MultiPoly::variable(vars, name); }

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-60, 60);
  std::uniform_int_distribution<long> den(1, 17);
  return frac(num(rng), den(rng));
}

// h_{r,s;q} in (eta, Delta) with t specialized.
MultiPoly h_eta(const Level& level, int r, int s) {
  MultiPoly eta = V(kEtaDelta, "eta");
  return C(kEtaDelta, delta_aff(level, r, s)) - (level.t() / 4) * eta * eta;
}

MultiPoly K_product(const Level& level) {
  MultiPoly delta = V(kEtaDelta, "Delta");
  MultiPoly prod = C(kEtaDelta, 1);
  for (auto [r, s] : K_set(level.u(), level.v())) prod = prod * (delta - h_eta(level, r, s));
  return prod;
}

// f_u(X, Y, t) with X, Y polynomials in (eta, Delta).
MultiPoly f_u_at(const Level& level, const MultiPoly& X, const MultiPoly& Y) {
  MultiPoly f = f_poly(static_cast<int>(level.u())).rebase({"x", "y", "z", "eta", "Delta"});
  std::vector<std::string> wide{"x", "y", "z", "eta", "Delta"};
  f = f.substitute("z", C(wide, level.t()));
  f = f.substitute("x", X.rebase(wide));
  f = f.substitute("y", Y.rebase(wide));
  return f.rebase(kEtaDelta);
}

MultiPoly f1_of(const MultiPoly& x, const MultiPoly& y, const MultiPoly& z, const MultiPoly& q, const MultiPoly& t) {
  const auto& vars = x.vars();
  return (q - C(vars, 1)) *
         (x - y + C(vars, Rational(1, 2)) + Rational(1, 4) * t * (q + C(vars, 1)) * (2 * z + q - C(vars, 1)));
}

MultiPoly fplus_of(const MultiPoly& x, const MultiPoly& y, const MultiPoly& z, const MultiPoly& q,
                   const MultiPoly& t) {
  const auto& vars = x.vars();
  return (q - C(vars, 1)) * (x - y + Rational(1, 4) * t * (q + C(vars, 1)) * (2 * z + q + C(vars, 1)));
}

MultiPoly fminus_of(const MultiPoly& x, const MultiPoly& y, const MultiPoly& z, const MultiPoly& q,
                    const MultiPoly& t) {
  const auto& vars = x.vars();
  return (q + C(vars, 1)) * (x - y + Rational(1, 4) * t * (q - C(vars, 1)) * (2 * z + q - C(vars, 1)));
}

MultiPoly fG_of(const MultiPoly& x, const MultiPoly& y, const MultiPoly& z, const MultiPoly& q, const MultiPoly& t) {
  const auto& vars = x.vars();
  return (q + C(vars, 1)) *
         (x - y - C(vars, Rational(1, 2)) + Rational(1, 4) * t * (q - C(vars, 1)) * (2 * z + q + C(vars, 1)));
}

struct DetSides {
  MultiPoly lhs;
  MultiPoly rhs;
};

DetSides det_sides(int r, int s) {
  MultiPoly t = V(kDet, "t"), q = V(kDet, "q"), q2 = V(kDet, "q2"), h3 = V(kDet, "h3");
  MultiPoly y = h_symbolic(kDet, "t", r, s, q2);
  MultiPoly one = C(kDet, 1);
  MultiPoly lhs = f1_of(h3, y, q2, q, t) * fG_of(h3, y, q2, q, t) -
                  Rational(1, 2) * t * (q * q - one) * (2 * y - q2);
  MultiPoly rhs = (q * q - one) * (h3 - h_symbolic(kDet, "t", r, s + 1, q + q2)) *
                  (h3 - h_symbolic(kDet, "t", r, s - 1, q + q2));
  return {lhs, rhs};
}

}  // namespace

MultiPoly f_poly(int n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "f_n is defined for n >= 2");
  MultiPoly x = V(kXYZ, "x"), y = V(kXYZ, "y"), z = V(kXYZ, "z");
  MultiPoly prev = x * z;
  if (n == 2) return prev;
  MultiPoly cur = Rational(1, 2) * x * x * z * z - y * z;
  for (int m = 2; m + 2 <= n; ++m) {
    Rational d = Rational((m + 1) * (m + 1));
    MultiPoly next = (Rational(2 * m + 1) / d) * x * z * cur -
                     (1 / d) * (4 * y * z + x * x * z * z - C(kXYZ, Rational((m - 1) * (m + 1)))) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<std::pair<int, int>> K_set(long u, long v) {
  std::vector<std::pair<int, int>> out;
  for (long r = 1; r < u; ++r)
    for (long s = 1; s < v; ++s)
      if (v * r + u * s < u * v) out.emplace_back(static_cast<int>(r), static_cast<int>(s));
  return out;
}

MultiPoly p1_poly(const Level& level) {
  MultiPoly eta = V(kEtaDelta, "eta"), delta = V(kEtaDelta, "Delta");
  return f_u_at(level, eta, delta) * K_product(level);
}

MultiPoly p2_poly(const Level& level) {
  MultiPoly eta = V(kEtaDelta, "eta"), delta = V(kEtaDelta, "Delta");
  const Rational vu = frac(level.v(), level.u());
  MultiPoly shifted = f_u_at(level, eta + C(kEtaDelta, 2 * vu), delta - eta - C(kEtaDelta, vu));
  return (shifted - f_u_at(level, eta, delta)) * (2 * delta - eta) * K_product(level);
}

ZhuPoint ContinuousFamily::at(const Level& level, const Rational& q) const {
  return {q, h_n2(level, r, s, q)};
}

ZhuSimples zhu_simples(const Level& level) {
  ZhuSimples out;
  const long u = level.u();
  for (long r = 1; r < u; ++r)
    for (long p = 1 - r; p <= r - 1; ++p) {
      if ((p + r) % 2 == 0) continue;
      Rational q = frac(p * level.v(), u);
      out.discrete.push_back({q, h_n2(level, r, 0, q)});
    }
  for (auto [r, s] : K_set(u, level.v())) out.continuous.push_back({r, s});
  return out;
}

ClassificationReport verify_classification(const Level& level, int samples_per_family) {
  ClassificationReport report;
  const MultiPoly p1 = p1_poly(level);
  const MultiPoly p2 = p2_poly(level);
  auto check = [&](const ZhuPoint& pt, const std::string& where) {
    ++report.points_checked;
    Rational a = p1.evaluate({pt.eta, pt.delta});
    Rational b = p2.evaluate({pt.eta, pt.delta});
    if (a != 0 || b != 0)
      report.failures.push_back(where + " (eta=" + to_string(pt.eta) + ", Delta=" + to_string(pt.delta) +
                                "): p1=" + to_string(a) + ", p2=" + to_string(b));
  };
  ZhuSimples simples = zhu_simples(level);
  report.discrete_count = static_cast<int>(simples.discrete.size());
  for (const auto& pt : simples.discrete) check(pt, "discrete");
  const Rational qs[] = {Rational(0), Rational(1, 2), Rational(-3, 7), Rational(5, 3), Rational(2, 11),
                         Rational(-9, 4), Rational(13, 5), Rational(-1, 9)};
  const int n = std::min<int>(samples_per_family, static_cast<int>(std::size(qs)));
  for (const auto& fam : simples.continuous)
    for (int i = 0; i < n; ++i)
      check(fam.at(level, qs[i]), "family (" + std::to_string(fam.r) + "," + std::to_string(fam.s) + ")");
  return report;
}

int hom_upper_bound(const Level& level, const Rational& q1, int r, int s, const Rational& q2, const Rational& q3,
                    const Rational& h3) {
  if (q1 == 1 || q1 == -1) fail(ErrorKind::InvalidArgument, "hom_upper_bound requires q1 != +-1");
  const Rational d = q3 - q1 - q2;
  if (d == 1 || d == -1) return h3 == h_n2(level, r, s, q3) ? 1 : 0;
  if (d == 0) return (h3 == h_n2(level, r, s + 1, q3) || h3 == h_n2(level, r, s - 1, q3)) ? 1 : 0;
  return 0;
}

int verma_hom_bound(const Rational& q1, const Rational& q2, const Rational& q3) {
  const Rational d = q3 - q1 - q2;
  if (d == 0) return 2;
  if (d == 1 || d == -1) return 1;
  return 0;
}

MultiPoly h_symbolic(const std::vector<std::string>& vars, const std::string& t, int r, int s, const MultiPoly& q) {
  MultiPoly tt = V(vars, t);
  Exponents inv(vars.size(), 0);
  inv[tt.index_of(t)] = -1;
  return MultiPoly::monomial(vars, inv, frac(r * r - 1, 4)) - C(vars, frac(r * s, 2)) +
         Rational(s * s, 4) * tt - Rational(1, 4) * tt * q * q;
}

MultiPoly f1_poly() { return f1_of(V(kF, "x"), V(kF, "y"), V(kF, "z"), V(kF, "q"), V(kF, "t")); }
MultiPoly fplus_poly() { return fplus_of(V(kF, "x"), V(kF, "y"), V(kF, "z"), V(kF, "q"), V(kF, "t")); }
MultiPoly fminus_poly() { return fminus_of(V(kF, "x"), V(kF, "y"), V(kF, "z"), V(kF, "q"), V(kF, "t")); }
MultiPoly fG_poly() { return fG_of(V(kF, "x"), V(kF, "y"), V(kF, "z"), V(kF, "q"), V(kF, "t")); }

DetIdentityReport det_identity_symbolic(int max_rs) {
  DetIdentityReport report;
  for (int r = 1; r <= max_rs; ++r)
    for (int s = 1; s <= max_rs; ++s) {
      ++report.symbolic_checks;
      DetSides d = det_sides(r, s);
      MultiPoly diff = d.lhs - d.rhs;
      if (!diff.is_zero())
        report.failures.push_back("(r,s)=(" + std::to_string(r) + "," + std::to_string(s) +
                                  "): lhs - rhs = " + diff.str());
    }
  return report;
}

DetIdentityReport det_identity_points(int r, int s, const Rational& t, int samples, std::uint64_t seed) {
  DetIdentityReport report;
  DetSides d = det_sides(r, s);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    std::vector<Rational> pt{t, random_rational(rng), random_rational(rng), random_rational(rng)};
    ++report.point_checks;
    Rational a = d.lhs.evaluate(pt);
    Rational b = d.rhs.evaluate(pt);
    if (a != b)
      report.failures.push_back("point q=" + to_string(pt[1]) + " q2=" + to_string(pt[2]) + " h3=" + to_string(pt[3]) +
                                ": " + to_string(a) + " vs " + to_string(b));
  }
  return report;
}

DetIdentityReport fpm_factorization_check(int max_rs) {
  DetIdentityReport report;
  MultiPoly t = V(kDet, "t"), q = V(kDet, "q"), q2 = V(kDet, "q2"), h3 = V(kDet, "h3");
  MultiPoly one = C(kDet, 1);
  for (int r = 1; r <= max_rs; ++r)
    for (int s = 1; s <= max_rs; ++s) {
      ++report.symbolic_checks;
      MultiPoly y = h_symbolic(kDet, "t", r, s, q2);
      MultiPoly plus = fplus_of(h3, y, q2, q, t) - (q - one) * (h3 - h_symbolic(kDet, "t", r, s, q + q2 + one));
      MultiPoly minus = fminus_of(h3, y, q2, q, t) - (q + one) * (h3 - h_symbolic(kDet, "t", r, s, q + q2 - one));
      if (!plus.is_zero()) report.failures.push_back("f+ (" + std::to_string(r) + "," + std::to_string(s) + "): " + plus.str());
      if (!minus.is_zero()) report.failures.push_back("f- (" + std::to_string(r) + "," + std::to_string(s) + "): " + minus.str());
    }
  return report;
}

}  // namespace fk::zhu
