#include "fusionkit/fusion.hpp"

#include "fusionkit/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <random>

namespace fk {

const char* status_name(FusionStatus status) {
  switch (status) {
    case FusionStatus::Semisimple: return "Semisimple";
    case FusionStatus::NonSemisimple: return "NonSemisimple";
    case FusionStatus::GrothendieckOnly: return "GrothendieckOnly";
  }
  return "?";
}

int FusionDecomposition::total() const { return multiset_size(terms); }

int multiset_size(const LabelMultiset& m) {
  int n = 0;
  for (const auto& [label, mult] : m) n += mult;
  return n;
}

int n_coeff(long a, long b, long c, long d) {
  if (a < 1) return 0;
  for (long x : {b, c, d})
    if (x < 0 || x > a - 1) return 0;
  if (b < std::labs(c - d) + 1) return 0;
  if (b > std::min(c + d - 1, 2 * a - c - d - 1)) return 0;
  return (b + c + d) % 2 == 1 ? 1 : 0;
}

namespace {

int as_int(long x) { return static_cast<int>(x); }

void add(LabelMultiset& m, const Sl2Label& label, int mult = 1) {
  if (mult == 0) return;
  m[label] += mult;
}

void add_canonical(const Level& level, LabelMultiset& m, const Sl2Label& label, int mult = 1) {
  add(m, canonicalize(level, label), mult);
}

// Adds E_{mu;r,s} sigma-flowed, failing with NonGenericOutput if the weight is excluded.
void add_E(const Level& level, LabelMultiset& m, const WeightClass& mu, int r, int s, int flow, int mult) {
  if (mult == 0) return;
  if (!is_generic(level, mu, r, s))
    fail(ErrorKind::NonGenericOutput, "output E[" + to_string(mu.rep()) + "](" + std::to_string(r) + "," +
                                          std::to_string(s) + ") is not simple at level " + level.str());
  add_canonical(level, m, Sl2Label::E(mu, r, s, flow), mult);
}

void require_E(const Level& level, const WeightClass& mu, int r, int s) {
  validate(level, Sl2Label::E(mu, r, s));
}

bool is_E11(const Level& level, int r, int s) {
  return (r == 1 && s == 1) || (r == level.u() - 1 && s == level.v() - 1);
}

// Candidate outputs of the degenerate rules for E_{mu;1,1} x E_{mu2;r,s} with (r,s) a fixed
// representative. Returns nullopt when no displayed rule applies to this representative.
std::optional<FusionDecomposition> degenerate_rule(const Level& level, const WeightClass& sum, int r, int s) {
  const int u = as_int(level.u());
  const int v = as_int(level.v());
  const Rational t = level.t();
  FusionDecomposition out;
  out.status = FusionStatus::NonSemisimple;
  if (s == 1) {
    if (!sum.contains(Rational(r - 1))) return std::nullopt;
    add_canonical(level, out.terms, Sl2Label::P(u - r, v - 1, -1));
    if (v != 2) add_E(level, out.terms, sum, r, 2, 0, 1);
    return out;
  }
  if (s < 2 || s > v - 2) return std::nullopt;
  int matches = 0;
  if (sum.contains(lambda_rs(level, r, s - 1))) {
    ++matches;
    add_canonical(level, out.terms, Sl2Label::P(r, s - 1));
    add_E(level, out.terms, sum + t, r, s, -1, 1);
    add_E(level, out.terms, sum, r, s + 1, 0, 1);
  }
  if (sum.contains(lambda_rs(level, u - r, v - s - 1))) {
    ++matches;
    add_canonical(level, out.terms, Sl2Label::P(u - r, v - s - 1));
    add_E(level, out.terms, sum + t, r, s, -1, 1);
    add_E(level, out.terms, sum, r, s - 1, 0, 1);
  }
  if (sum.contains(lambda_rs(level, r, s + 1))) {
    ++matches;
    add_canonical(level, out.terms, Sl2Label::P(r, s, -1));
    add_E(level, out.terms, sum - t, r, s, 1, 1);
    add_E(level, out.terms, sum, r, s - 1, 0, 1);
  }
  if (sum.contains(lambda_rs(level, u - r, v - s + 1))) {
    ++matches;
    add_canonical(level, out.terms, Sl2Label::P(u - r, v - s, -1));
    add_E(level, out.terms, sum - t, r, s, 1, 1);
    add_E(level, out.terms, sum, r, s + 1, 0, 1);
  }
  if (matches == 0) return std::nullopt;
  if (matches > 1)
    fail(ErrorKind::AmbiguousBranch, std::to_string(matches) + " degenerate conditions hold for E(" +
                                         std::to_string(r) + "," + std::to_string(s) + ") with weight sum " +
                                         to_string(sum.rep()));
  return out;
}

FusionDecomposition apply_flow(const Level& level, const FusionDecomposition& d, int flow) {
  if (flow == 0) return d;
  FusionDecomposition out;
  out.status = d.status;
  for (const auto& [label, mult] : d.terms) add_canonical(level, out.terms, label.flowed(flow), mult);
  return out;
}

// A factor reduced to L_r or E with its flow split off.
struct Stripped {
  Sl2Label base;
  int flow;
};

Stripped strip(const Level& level, const Sl2Label& canonical) {
  const int u = as_int(level.u());
  const int v = as_int(level.v());
  switch (canonical.kind) {
    case Sl2Kind::L:
    case Sl2Kind::E: {
      Sl2Label base = canonical;
      base.flow = 0;
      return {base, canonical.flow};
    }
    case Sl2Kind::Dplus:
      if (canonical.s == v - 1) return {Sl2Label::L(u - canonical.r), canonical.flow + 1};
      break;
    case Sl2Kind::Dminus:
      if (canonical.s == v - 1) return {Sl2Label::L(u - canonical.r), canonical.flow - 1};
      break;
    default:
      break;
  }
  fail(ErrorKind::UnsupportedPair, render(canonical) + " is not a spectral flow of an L or E module");
}

}  // namespace

FusionDecomposition fuse_LL(const Level& level, int r, int r2) {
  validate(level, Sl2Label::L(r));
  validate(level, Sl2Label::L(r2));
  FusionDecomposition out;
  for (int r3 = 1; r3 < level.u(); ++r3) add(out.terms, Sl2Label::L(r3), n_coeff(level.u(), r3, r, r2));
  return out;
}

FusionDecomposition fuse_LE(const Level& level, int r, const WeightClass& mu2, int r2, int s2) {
  validate(level, Sl2Label::L(r));
  require_E(level, mu2, r2, s2);
  FusionDecomposition out;
  const WeightClass mu = mu2 + Rational(r - 1);
  for (int r3 = 1; r3 < level.u(); ++r3) add_E(level, out.terms, mu, r3, s2, 0, n_coeff(level.u(), r3, r, r2));
  return out;
}

FusionDecomposition fuse_EE(const Level& level, const WeightClass& mu, int r, int s,
                            const WeightClass& mu2, int r2, int s2) {
  require_E(level, mu, r, s);
  require_E(level, mu2, r2, s2);
  const long u = level.u();
  const long v = level.v();
  const Rational t = level.t();
  const WeightClass sum = mu + mu2;

  struct Term {
    WeightClass mu;
    int r, s, flow, mult;
  };
  std::vector<Term> generic;
  for (int r3 = 1; r3 < u; ++r3) {
    int nu = n_coeff(u, r3, r, r2);
    if (nu == 0) continue;
    for (int s3 = 1; s3 < v; ++s3) {
      int a = n_coeff(v, s3, s, s2 - 1) + n_coeff(v, s3, s, s2 + 1);
      int b = n_coeff(v, s3, s, s2);
      if (a) generic.push_back({sum, r3, s3, 0, nu * a});
      if (b) {
        generic.push_back({sum + t, r3, s3, -1, nu * b});
        generic.push_back({sum - t, r3, s3, 1, nu * b});
      }
    }
  }
  bool all_generic = std::all_of(generic.begin(), generic.end(),
                                 [&](const Term& x) { return is_generic(level, x.mu, x.r, x.s); });
  if (all_generic) {
    FusionDecomposition out;
    for (const auto& x : generic) add_E(level, out.terms, x.mu, x.r, x.s, x.flow, x.mult);
    return out;
  }

  struct Arrangement {
    int r, s;
  };
  std::vector<Arrangement> others;
  if (is_E11(level, r, s)) others.push_back({r2, s2});
  if (is_E11(level, r2, s2)) others.push_back({r, s});
  if (others.empty())
    fail(ErrorKind::DegenerateUndetermined,
         "degenerate product with neither factor of type E(1,1); weight sum " + to_string(sum.rep()));

  std::optional<FusionDecomposition> result;
  for (const auto& other : others) {
    for (auto [rr, ss] : {std::pair{other.r, other.s}, std::pair{as_int(u) - other.r, as_int(v) - other.s}}) {
      auto candidate = degenerate_rule(level, sum, rr, ss);
      if (!candidate) continue;
      if (result && !(*result == *candidate))
        fail(ErrorKind::AmbiguousBranch, "degenerate rules give conflicting decompositions for weight sum " +
                                             to_string(sum.rep()));
      result = candidate;
    }
  }
  if (!result)
    fail(ErrorKind::DegenerateUndetermined,
         "no degenerate fusion rule covers weight sum " + to_string(sum.rep()) + " at level " + level.str());
  return *result;
}

FusionDecomposition fuse(const Level& level, const Sl2Label& a, const Sl2Label& b) {
  const Sl2Label ca = canonicalize(level, a);
  const Sl2Label cb = canonicalize(level, b);
  auto is_unit = [&](const Sl2Label& x) {
    if (x.kind == Sl2Kind::L) return x.r == 1;
    return (x.kind == Sl2Kind::Dplus || x.kind == Sl2Kind::Dminus) && x.s == level.v() - 1 &&
           x.r == level.u() - 1;
  };
  // sigma^l L_1 is invertible with inverse sigma^{-l} L_1.
  if (is_unit(ca) || is_unit(cb)) {
    const Sl2Label& unit = is_unit(ca) ? ca : cb;
    const Sl2Label& other = is_unit(ca) ? cb : ca;
    FusionDecomposition out;
    if (!other.is_simple()) out.status = FusionStatus::NonSemisimple;
    add(out.terms, other);
    return apply_flow(level, out, strip(level, unit).flow);
  }
  Stripped sa = strip(level, ca);
  Stripped sb = strip(level, cb);
  FusionDecomposition base;
  const Sl2Label& x = sa.base;
  const Sl2Label& y = sb.base;
  if (x.kind == Sl2Kind::L && y.kind == Sl2Kind::L)
    base = fuse_LL(level, x.r, y.r);
  else if (x.kind == Sl2Kind::L)
    base = fuse_LE(level, x.r, y.mu, y.r, y.s);
  else if (y.kind == Sl2Kind::L)
    base = fuse_LE(level, y.r, x.mu, x.r, x.s);
  else
    base = fuse_EE(level, x.mu, x.r, x.s, y.mu, y.r, y.s);
  return apply_flow(level, base, sa.flow + sb.flow);
}

LabelMultiset grothendieck_image(const Level& level, const Sl2Label& label) {
  const Sl2Label x = canonicalize(level, label);
  const int u = as_int(level.u());
  const int v = as_int(level.v());
  LabelMultiset out;
  switch (x.kind) {
    case Sl2Kind::Eplus:
      add_canonical(level, out, Sl2Label::Dplus(x.r, x.s, x.flow));
      add_canonical(level, out, Sl2Label::Dminus(u - x.r, v - x.s, x.flow));
      return out;
    case Sl2Kind::Eminus:
      add_canonical(level, out, Sl2Label::Dminus(x.r, x.s, x.flow));
      add_canonical(level, out, Sl2Label::Dplus(u - x.r, v - x.s, x.flow));
      return out;
    case Sl2Kind::P: {
      auto first = grothendieck_image(level, Sl2Label::Eplus(x.r, x.s, x.flow));
      auto second = x.s <= v - 2 ? grothendieck_image(level, Sl2Label::Eplus(x.r, x.s + 1, x.flow + 1))
                                 : grothendieck_image(level, Sl2Label::Eplus(u - x.r, 1, x.flow + 2));
      for (const auto& [l, m] : second) first[l] += m;
      return first;
    }
    default:
      add(out, x);
      return out;
  }
}

LabelMultiset grothendieck_image(const Level& level, const LabelMultiset& terms) {
  LabelMultiset out;
  for (const auto& [label, mult] : terms)
    for (const auto& [l, m] : grothendieck_image(level, label)) out[l] += mult * m;
  return out;
}

LabelMultiset fuse_grothendieck(const Level& level, const Sl2Label& a, const Sl2Label& b) {
  try {
    return grothendieck_image(level, fuse(level, a, b).terms);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedPair) throw;
    const Sl2Label ca = canonicalize(level, a);
    const Sl2Label cb = canonicalize(level, b);
    if (ca.is_simple() && cb.is_simple()) throw;
    return fuse_grothendieck(level, grothendieck_image(level, ca), grothendieck_image(level, cb));
  }
}

LabelMultiset fuse_grothendieck(const Level& level, const LabelMultiset& a, const LabelMultiset& b) {
  LabelMultiset out;
  for (const auto& [x, mx] : a)
    for (const auto& [y, my] : b)
      for (const auto& [l, m] : fuse_grothendieck(level, x, y)) out[l] += mx * my * m;
  return out;
}

std::string render(const LabelMultiset& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [label, mult] : m) {
    if (!first) out += ", ";
    first = false;
    out += render(label);
    if (mult != 1) out += ":" + std::to_string(mult);
  }
  return out + "}";
}

nlohmann::json to_json(const FusionDecomposition& d, const Level& level) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [label, mult] : d.terms) {
    nlohmann::json t;
    t["label"] = render(label);
    t["mult"] = mult;
    t["detail"] = to_json(label, level);
    terms.push_back(t);
  }
  return {{"status", status_name(d.status)}, {"terms", terms}};
}

int triple_product_summands(const Level& level, const WeightClass& nu, const WeightClass& mu) {
  auto first = fuse(level, Sl2Label::E(nu, 1, 1), Sl2Label::E(mu, 1, 1));
  int count = 0;
  for (const auto& [label, mult] : first.terms) {
    auto second = fuse(level, label, Sl2Label::E(-mu, 1, 1));
    for (const auto& [l, m] : second.terms)
      if (l.kind == Sl2Kind::E) count += mult * m;
  }
  return count;
}

namespace {

struct Outcome {
  std::optional<FusionDecomposition> value;
  std::optional<ErrorKind> error;

  bool operator==(const Outcome&) const = default;
};

Outcome attempt(const Level& level, const Sl2Label& a, const Sl2Label& b) {
  try {
    return {fuse(level, a, b), std::nullopt};
  } catch (const Error& e) {
    return {std::nullopt, e.kind()};
  }
}

std::string describe(const Outcome& o) {
  if (o.error) return error_kind_name(*o.error);
  return render(o.value->terms);
}

}  // namespace

RingAxiomReport check_ring_axioms(const Level& level, const std::vector<WeightClass>& weights, int triples,
                                  std::uint64_t seed) {
  RingAxiomReport report;
  const int u = as_int(level.u());
  const int v = as_int(level.v());
  std::vector<Sl2Label> labels;
  for (int r = 1; r < u; ++r) labels.push_back(Sl2Label::L(r));
  for (int l = -1; l <= 1; ++l)
    for (int r = 1; r < u; ++r)
      for (int s = 1; s < v; ++s) labels.push_back(canonicalize(level, Sl2Label::Dplus(r, s, l)));
  std::vector<std::pair<int, int>> families;
  for (int r = 1; r < u; ++r)
    for (int s = 1; s < v; ++s)
      if (is_canonical_rs(level, r, s)) families.emplace_back(r, s);
  for (const auto& mu : weights)
    for (auto [r, s] : families)
      if (is_generic(level, mu, r, s))
        for (int l = -1; l <= 1; ++l) labels.push_back(Sl2Label::E(mu, r, s, l));
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  auto note = [&](const std::string& what) {
    if (report.violations.size() < 50) report.violations.push_back(what);
  };

  for (const auto& x : labels) {
    Outcome unit = attempt(level, Sl2Label::L(1), x);
    FusionDecomposition expect;
    expect.terms[x] = 1;
    if (!unit.value || unit.value->terms != expect.terms) note("unit: L(1) x " + render(x) + " = " + describe(unit));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i; j < labels.size(); ++j) {
      const auto& a = labels[i];
      const auto& b = labels[j];
      ++report.pairs_checked;
      Outcome ab = attempt(level, a, b);
      Outcome ba = attempt(level, b, a);
      if (!(ab == ba)) note("commutativity: " + render(a) + " x " + render(b) + ": " + describe(ab) + " vs " + describe(ba));
      Outcome shifted = attempt(level, a.flowed(1), b);
      Outcome expected = ab;
      if (ab.value) expected.value = apply_flow(level, *ab.value, 1);
      if (!(shifted == expected))
        note("flow equivariance: sf(1) applied to " + render(a) + " x " + render(b) + ": " + describe(shifted) +
             " vs " + describe(expected));
    }
  }

  if (weights.empty() || families.empty()) return report;
  std::mt19937_64 rng(seed);
  auto pick_weight = [&] { return weights[rng() % weights.size()]; };
  auto pick_family = [&] { return families[rng() % families.size()]; };
  long attempts = 0;
  while (report.triples_checked < triples && attempts < 100L * triples) {
    ++attempts;
    Sl2Label e[3];
    bool ok = true;
    for (auto& x : e) {
      auto [r, s] = pick_family();
      WeightClass mu = pick_weight();
      if (!is_generic(level, mu, r, s)) ok = false;
      x = Sl2Label::E(mu, r, s);
    }
    if (!ok) {
      ++report.triples_skipped;
      continue;
    }
    try {
      LabelMultiset ab = grothendieck_image(level, fuse(level, e[0], e[1]).terms);
      LabelMultiset bc = grothendieck_image(level, fuse(level, e[1], e[2]).terms);
      LabelMultiset left = fuse_grothendieck(level, ab, LabelMultiset{{e[2], 1}});
      LabelMultiset right = fuse_grothendieck(level, LabelMultiset{{e[0], 1}}, bc);
      ++report.triples_checked;
      if (left != right)
        note("associativity: " + render(e[0]) + ", " + render(e[1]) + ", " + render(e[2]) + ": " + render(left) +
             " vs " + render(right));
    } catch (const Error& err) {
      switch (err.kind()) {
        case ErrorKind::NonGeneric:
        case ErrorKind::NonGenericOutput:
        case ErrorKind::DegenerateUndetermined:
        case ErrorKind::AmbiguousBranch:
        case ErrorKind::UnsupportedPair:
          ++report.triples_skipped;
          break;
        default:
          throw;
      }
    }
  }
  if (report.triples_checked < triples)
    note("associativity: only " + std::to_string(report.triples_checked) + " of " + std::to_string(triples) +
         " triples were generic");
  return report;
}

}  // namespace fk
