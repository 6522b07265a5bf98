#include "fusionkit/coset.hpp"

#include "fusionkit/errors.hpp"

namespace fk::coset {

std::pair<Rational, Rational> sl2_to_n2_weights(const Level& level, const Rational& mu, const Rational& h) {
  return {mu / level.t(), h - mu * mu / (4 * level.t())};
}

N2Label coset_component(const Level& level, const Sl2Label& label, const Rational& p, int i) {
  const Sl2Label x = canonicalize(level, label);
  if (x.kind != Sl2Kind::E) fail(ErrorKind::InvalidArgument, "coset components are defined here for E labels only");
  if (i != 0 && i != 1) fail(ErrorKind::InvalidArgument, "parity index must be 0 or 1");
  const WeightClass allowed = x.mu + x.flow * level.t();
  if (!allowed.contains(p))
    fail(ErrorKind::CosetMismatch, "p=" + to_string(p) + " is not in the class " + to_string(allowed.rep()) +
                                       " + 2Z of " + render(x));
  const int parity = ((i + x.flow) % 2 + 2) % 2;
  return canonicalize(level, N2Label::relaxed(p / level.t() - x.flow, x.r, x.s, parity));
}

namespace {

void require_relaxed(const Level& level, const N2Label& x) {
  validate(level, x);
  if (x.family != N2Family::Relaxed) fail(ErrorKind::InvalidArgument, "N=2 fusion is implemented for relaxed labels");
  if (!is_generic(level, WeightClass(x.q * level.t()), x.r, x.s_or_p))
    fail(ErrorKind::NonGeneric, render(x) + " does not correspond to a simple relaxed sl(2) module");
}

void add_n2(const Level& level, N2Multiset& m, const Rational& q, int r, int s, int parity, int mult) {
  if (mult == 0) return;
  if (!is_generic(level, WeightClass(q * level.t()), r, s))
    fail(ErrorKind::NonGenericOutput, "N=2 output NL[" + to_string(q) + "](" + std::to_string(r) + "," +
                                          std::to_string(s) + ") lies on the non-semisimple locus");
  m[canonicalize(level, N2Label::relaxed(q, r, s, parity))] += mult;
}

}  // namespace

N2Multiset n2_fuse(const Level& level, const N2Label& a, const N2Label& b) {
  require_relaxed(level, a);
  require_relaxed(level, b);
  const Rational p1 = a.q * level.t();
  const Rational p2 = b.q * level.t();
  FusionDecomposition d =
      fuse(level, Sl2Label::E(WeightClass(p1), a.r, a.s_or_p), Sl2Label::E(WeightClass(p2), b.r, b.s_or_p));
  if (d.status != FusionStatus::Semisimple)
    fail(ErrorKind::NonGenericOutput, "weight sum lies on the non-semisimple locus");
  N2Multiset out;
  for (const auto& [label, mult] : d.terms)
    out[coset_component(level, label, p1 + p2, (a.parity + b.parity) % 2)] += mult;
  return out;
}

N2Multiset n2_fuse_formula(const Level& level, const N2Label& a, const N2Label& b) {
  require_relaxed(level, a);
  require_relaxed(level, b);
  const long u = level.u();
  const long v = level.v();
  const int s = a.s_or_p;
  const int s2 = b.s_or_p;
  const int parity = (a.parity + b.parity) % 2;
  const Rational q = a.q + b.q;
  N2Multiset out;
  for (int r3 = 1; r3 < u; ++r3) {
    int nu = n_coeff(u, r3, a.r, b.r);
    if (nu == 0) continue;
    for (int s3 = 1; s3 < v; ++s3) {
      add_n2(level, out, q, r3, s3, parity, nu * (n_coeff(v, s3, s, s2 - 1) + n_coeff(v, s3, s, s2 + 1)));
      int c = nu * n_coeff(v, s3, s, s2);
      add_n2(level, out, q + 1, r3, s3, 1 - parity, c);
      add_n2(level, out, q - 1, r3, s3, 1 - parity, c);
    }
  }
  return out;
}

std::string render(const N2Multiset& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [label, mult] : m) {
    if (!first) out += ", ";
    first = false;
    out += fk::render(label);
    if (mult != 1) out += ":" + std::to_string(mult);
  }
  return out + "}";
}

const char* pullback_name(Pullback p) { return p == Pullback::Psi ? "psi" : "psi*gamma"; }

namespace {

Rational reduce_mod(const Rational& x, const Rational& period) {
  Rational m = abs(period);
  return x - m * floor_div(x, m);
}

}  // namespace

FFRLabel ffr_label(const Level& level, const Sl2Label& label) {
  const long u = level.u();
  const long v = level.v();
  if (u == 2 * v) fail(ErrorKind::FFRUnavailable, "free field realisation is singular at level " + level.str());
  const Sl2Label x = canonicalize(level, label);
  const Rational c = frac(v, u - 2 * v);  // v/(u-2v) = 1/(t-2)
  FFRLabel f;
  f.alpha_period = 2 * c;
  const int l = x.flow;
  switch (x.kind) {
    case Sl2Kind::Eminus: {
      f.vir_r = static_cast<int>(u) - x.r;
      f.vir_s = static_cast<int>(v) - x.s;
      f.alpha = c * lambda_rs(level, f.vir_r, f.vir_s) + l;
      f.beta = l - 1;
      f.pullback = Pullback::Psi;
      break;
    }
    case Sl2Kind::Eplus:
      f.vir_r = x.r;
      f.vir_s = x.s;
      f.alpha = -c * lambda_rs(level, x.r, x.s) - l;
      f.beta = -(l + 1);
      f.pullback = Pullback::PsiGamma;
      break;
    case Sl2Kind::E:
      f.vir_r = x.r;
      f.vir_s = x.s;
      f.alpha = c * x.mu.rep() + l;
      f.beta = l - 1;
      f.pullback = Pullback::Psi;
      break;
    default:
      fail(ErrorKind::InvalidArgument, "free field identifications cover E, E+ and E- labels; got " + render(x));
  }
  f.alpha = reduce_mod(f.alpha, f.alpha_period);
  return f;
}

std::pair<int, WeightClass> ffr_decode(const Level& level, const FFRLabel& f) {
  const Rational tm2 = level.t() - 2;
  const Rational flow = f.beta + 1;
  const Rational weight = tm2 * (f.alpha - f.beta - 1);
  if (!is_integer(flow)) fail(ErrorKind::InvalidArgument, "lattice class has non-integral b coefficient");
  const int l = static_cast<int>(flow.get_num().get_si());
  if (f.pullback == Pullback::Psi) return {l, WeightClass(weight)};
  return {-l, WeightClass(-weight)};
}

nlohmann::json to_json(const FFRLabel& f) {
  return {{"virasoro", {f.vir_r, f.vir_s}},
          {"alpha", to_fraction_string(f.alpha)},
          {"alpha_period", to_fraction_string(abs(f.alpha_period))},
          {"beta", to_fraction_string(f.beta)},
          {"pullback", pullback_name(f.pullback)}};
}

}  // namespace fk::coset
