#include "fusionkit/cli.hpp"

#include "fusionkit/cohomology.hpp"
#include "fusionkit/coset.hpp"
#include "fusionkit/errors.hpp"
#include "fusionkit/fusion.hpp"
#include "fusionkit/zhu.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace fk::cli {

using nlohmann::json;
using num::cplx;

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

bool Report::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == Status::Fail; });
}

void Report::append(const Report& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }

void Report::sort() {
  std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
}

json Report::to_json() const {
  json arr = json::array();
  for (const auto& c : checks) {
    json e = {{"check", c.name}, {"params", json::object()}, {"lhs", nullptr},       {"rhs", nullptr},
              {"abs_err", nullptr}, {"rel_err", nullptr},      {"pass", c.status != Status::Fail}};
    for (const auto& [k, v] : c.data.items()) e[k] = v;
    e["check"] = c.name;
    e["status"] = status_name(c.status);
    e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  return {{"ok", ok()}, {"checks", arr}};
}

std::string Report::table() const {
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::ostringstream os;
  for (const auto& c : checks) {
    os << std::left << std::setw(static_cast<int>(width)) << c.name << "  " << status_name(c.status);
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
  }
  int fails = 0, skips = 0;
  for (const auto& c : checks) {
    fails += c.status == Status::Fail;
    skips += c.status == Status::Skip;
  }
  os << checks.size() << " checks, " << fails << " failed, " << skips << " skipped\n";
  return os.str();
}

namespace {

bool weight_is_generic(const Level& level, const WeightClass& mu) {
  for (int r = 1; r < level.u(); ++r)
    for (int s = 1; s < level.v(); ++s)
      if (!is_generic(level, mu, r, s)) return false;
  return true;
}

}  // namespace

std::vector<WeightClass> sample_weights(const Level& level, int n) {
  std::vector<WeightClass> out;
  for (int i = 0; static_cast<int>(out.size()) < n; ++i) {
    WeightClass w(frac(7 * i + 3, 97));
    if (weight_is_generic(level, w)) out.push_back(w);
  }
  return out;
}

Suite parse_suite(const std::string& name) {
  if (name == "beta") return Suite::Beta;
  if (name == "selberg") return Suite::Selberg;
  if (name == "bpz") return Suite::Bpz;
  if (name == "constants") return Suite::Constants;
  fail(ErrorKind::InvalidArgument, "unknown suite '" + name + "' (expected beta, selberg, bpz or constants)");
}

std::vector<Level> default_levels() {
  return {Level::make(3, 2), Level::make(2, 3), Level::make(5, 2), Level::make(3, 4), Level::make(4, 3)};
}

namespace {

json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string sci(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

std::string lvl(const Level& level) { return "[" + level.str() + "]"; }

json level_json(const Level& level) { return {{"u", level.u()}, {"v", level.v()}}; }

// Scaled compares the absolute error against tol * max(1, |lhs|, |rhs|).
enum class Tol { Rel, Abs, Scaled };

const char* tol_name(Tol k) { return k == Tol::Rel ? "rel" : k == Tol::Abs ? "abs" : "scaled"; }

// Numeric comparison entry; the relative error is taken against the larger modulus.
Check numeric(const std::string& name, json params, cplx lhs, cplx rhs, double tol, Tol kind = Tol::Rel) {
  const double abs_err = std::abs(lhs - rhs);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  const double rel_err = scale == 0 ? 0.0 : abs_err / scale;
  const double measured = kind == Tol::Rel   ? rel_err
                          : kind == Tol::Abs ? abs_err
                                             : abs_err / std::max(1.0, scale);
  const bool pass = std::isfinite(measured) && measured <= tol;
  Check c{name, pass ? Status::Pass : Status::Fail,
          std::string(tol_name(kind)) + "_err " + sci(measured) + " (tol " + sci(tol) + ")", {}};
  c.data = {{"params", std::move(params)}, {"lhs", cjson(lhs)},       {"rhs", cjson(rhs)},
            {"abs_err", abs_err},          {"rel_err", rel_err},      {"pass", pass},
            {"tolerance", tol},            {"tolerance_kind", tol_name(kind)}};
  return c;
}

Check boolean(const std::string& name, bool ok, std::string detail, json data = json::object()) {
  Check c{name, ok ? Status::Pass : Status::Fail, std::move(detail), std::move(data)};
  c.data["pass"] = ok;
  return c;
}

// Runs `body`; a Pole becomes a skip, any other error a failure.
void guarded(Report& rep, const std::string& name, const std::function<void(Report&)>& body) {
  try {
    body(rep);
  } catch (const Error& e) {
    Status s = e.kind() == ErrorKind::Pole ? Status::Skip : Status::Fail;
    Check c{name, s, std::string(error_kind_name(e.kind())) + ": " + e.what(), {}};
    c.data["pass"] = s != Status::Fail;
    rep.add(std::move(c));
  } catch (const std::exception& e) {
    rep.add(boolean(name, false, std::string("unexpected error: ") + e.what()));
  }
}

// ---- analytic suites ----

Report beta_suite(const num::QuadratureConfig& cfg) {
  Report rep;
  const std::vector<std::pair<cplx, cplx>> points{
      {0.5, 0.5},   {0.3, 0.7},   {1.5, 0.25},  {-0.5, 0.3},  {-1.3, -0.4},
      {2.2, 3.1},   {0.1, 0.9},   {{0.3, 0.4}, {0.6, -0.2}}, {-2.5, 1.7}, {0.75, -0.25}};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [x, y] = points[i];
    const std::string name = "beta.pochhammer." + std::to_string(i);
    guarded(rep, name, [&](Report& r) {
      json params = {{"x", cjson(x)}, {"y", cjson(y)}};
      r.add(numeric(name, params, num::pochhammer_contour_quadrature(x, y, cfg), num::pochhammer_beta(x, y), 1e-6));
    });
  }
  guarded(rep, "beta.symmetry", [&](Report& r) {
    cplx x{0.3, 0.4}, y{-1.7, 0.1};
    r.add(numeric("beta.symmetry", {{"x", cjson(x)}, {"y", cjson(y)}}, num::pochhammer_beta(x, y),
                  num::pochhammer_beta(y, x), 1e-14));
  });
  guarded(rep, "beta.half_half", [&](Report& r) {
    r.add(numeric("beta.half_half", {{"x", 0.5}, {"y", 0.5}}, num::pochhammer_beta(0.5, 0.5), 4 * M_PI, 1e-12));
  });
  guarded(rep, "beta.integer_zero", [&](Report& r) {
    r.add(numeric("beta.integer_zero", {{"x", 1.0}, {"y", 0.5}}, num::pochhammer_beta(1.0, 0.5), 0.0, 1e-10,
                  Tol::Abs));
  });
  // Gamma(x+y) has a pole, so the product vanishes.
  guarded(rep, "beta.zero_sum", [&](Report& r) {
    r.add(numeric("beta.zero_sum", {{"x", -2.5}, {"y", 1.5}}, num::pochhammer_contour_quadrature(-2.5, 1.5, cfg),
                  num::pochhammer_beta(-2.5, 1.5), 1e-10, Tol::Abs));
  });
  return rep;
}

Report selberg_suite(const num::QuadratureConfig& cfg) {
  Report rep;
  struct P {
    double a, b, g, w;
  };
  const std::vector<P> sets{{1.0 / 3, 0.25, 0.2, 1.0}, {0.5, 0.2, 0.3, 2.0}, {-0.3, 0.6, 0.15, 1.5}};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const P& p = sets[i];
    const std::string name = "selberg.normalization." + std::to_string(i);
    guarded(rep, name, [&](Report& r) {
      const auto n = num::resolve_selberg_normalization(p.a, p.b, p.g, p.w, 1e-4, cfg);
      json params = {{"alpha", p.a}, {"beta", p.b}, {"gamma", p.g}, {"w", p.w}};
      Check c = numeric(name, params, n.formula, n.square, 1e-4);
      c.data["simplex"] = n.simplex;
      c.data["rel_err_simplex_x2"] = n.rel_err_simplex_x2;
      c.data["constant"] = n.constant;
      c.data["matched"] = n.matched;
      c.detail += "; formula/simplex = " + sci(n.constant) + ", matched " + n.matched;
      r.add(std::move(c));
    });
  }
  guarded(rep, "selberg.alpha_beta_symmetry", [&](Report& r) {
    r.add(numeric("selberg.alpha_beta_symmetry", {{"alpha", 0.37}, {"beta", -0.21}, {"gamma", 0.4}, {"w", 1.3}},
                  num::selberg2_formula(1.3, 0.37, -0.21, 0.4), num::selberg2_formula(1.3, -0.21, 0.37, 0.4), 1e-14));
  });
  return rep;
}

Report bpz_suite(const Level& level) {
  Report rep;
  const std::string L = lvl(level);
  guarded(rep, "bpz.ode_residual" + L, [&](Report& r) {
    double worst = 0, worst_x = 0.1;
    for (int i = 1; i <= 9; ++i) {
      const double x = i / 10.0;
      const double res = num::bpz_residual(level, x).residual;
      if (!(res <= worst)) worst = res, worst_x = x;
    }
    Check c = numeric("bpz.ode_residual" + L, {{"level", level_json(level)}, {"grid", "0.1..0.9"}}, worst, 0.0, 1e-6,
                      Tol::Abs);
    c.detail += " at x = " + sci(worst_x);
    r.add(std::move(c));
  });
  guarded(rep, "bpz.ode_residual_fd" + L, [&](Report& r) {
    const auto res = num::bpz_residual_fd(level, 0.37, 1e-4);
    r.add(numeric("bpz.ode_residual_fd" + L, {{"level", level_json(level)}, {"x", 0.37}, {"h", 1e-4}},
                  res.relative(), 0.0, 1e-5, Tol::Abs));
  });
  for (double x : {0.3, 0.5, 0.7}) {
    const std::string name = "bpz.connection" + L + "." + std::to_string(static_cast<int>(std::lround(x * 10)));
    guarded(rep, name, [&](Report& r) {
      const auto cmp = num::connection_formula(level, x);
      r.add(numeric(name, {{"level", level_json(level)}, {"x", x}}, cmp.lhs, cmp.rhs, 1e-8, Tol::Scaled));
    });
  }
  guarded(rep, "bpz.covariance" + L, [&](Report& r) {
    // Psi(s z + c) = s^{2(1-3t/2)} Psi(z) for real s > 0 and translations keeping the ordering.
    const std::array<cplx, 4> z{5.0, 3.0, 2.0, 0.5};
    std::array<cplx, 4> moved{};
    const double s = 1.7, shift = 0.25;
    for (int i = 0; i < 4; ++i) moved[i] = s * z[i] + shift;
    const double t = to_double(level.t());
    r.add(numeric("bpz.covariance" + L, {{"level", level_json(level)}, {"scale", s}, {"shift", shift}},
                  num::bpz_four_point(moved, level), std::pow(s, 2 - 3 * t) * num::bpz_four_point(z, level), 1e-10));
  });
  return rep;
}

// lambda_j = -2 - 2t - 1/3 - j/7, dropping samples with lambda - 3t integral.
std::vector<Rational> rigidity_samples(const Level& level, int n) {
  std::vector<Rational> out;
  for (int j = 0; static_cast<int>(out.size()) < n && j < 10 * n; ++j) {
    Rational lam = Rational(-2) - 2 * level.t() - Rational(1, 3) - Rational(j, 7);
    lam.canonicalize();
    if (!is_integer(lam - 3 * level.t())) out.push_back(lam);
  }
  return out;
}

Report constants_suite(const Level& level, const num::QuadratureConfig& cfg) {
  Report rep;
  const std::string L = lvl(level);
  const double t = to_double(level.t());
  guarded(rep, "constants.sin_identity" + L, [&](Report& r) {
    r.add(numeric("constants.sin_identity" + L, {{"t", to_fraction_string(level.t())}}, num::sin_identity(t), 1.0,
                  1e-12, Tol::Abs));
  });
  for (double eps : {1e-3, 1e-4}) {
    const std::string name = "constants.c_lambda_continuity" + L + "." + sci(eps);
    guarded(rep, name, [&](Report& r) {
      const double lambda = 1.0 / 3;
      const cplx c0 = num::c_lambda_eps(level, lambda, 0.0);
      const cplx c1 = num::c_lambda_eps(level, lambda, eps);
      r.add(numeric(name, {{"level", level_json(level)}, {"lambda", "1/3"}, {"eps", eps}}, c1, c0, 10 * eps));
    });
  }
  for (const Rational& lam : rigidity_samples(level, 10)) {
    const std::string name = "constants.rigidity" + L + ".lambda=" + to_fraction_string(lam);
    guarded(rep, name, [&](Report& r) {
      const cplx val = num::rigidity_leading_constant(level, to_double(lam));
      const bool ok = std::isfinite(std::abs(val)) && std::abs(val) > 1e-8;
      json d = {{"params", {{"level", level_json(level)}, {"lambda", to_fraction_string(lam)}}},
                {"lhs", cjson(val)},
                {"rhs", nullptr}};
      r.add(boolean(name, ok, "|value| = " + sci(std::abs(val)) + " (must exceed 1e-8)", d));
    });
  }
  const Rational p(1, 5), pp(1, 7);
  guarded(rep, "constants.intertwiner_quadrature" + L, [&](Report& r) {
    json params = {{"level", level_json(level)}, {"r", 1}, {"s", 1}, {"tau", 1}, {"p", "1/5"}, {"pp", "1/7"}, {"w", 1}};
    r.add(numeric("constants.intertwiner_quadrature" + L, params,
                  num::intertwiner_matrix_element_quadrature(level, 1, 1, 1, p, pp, 1.0, cfg),
                  num::intertwiner_matrix_element(level, 1, 1, 1, p, pp, 1.0), 1e-6));
  });
  guarded(rep, "constants.intertwiner_w_scaling" + L, [&](Report& r) {
    const double e = num::intertwiner_w_exponent(level, 1, 1, 1);
    json params = {{"level", level_json(level)}, {"w", 2}, {"exponent", e}};
    r.add(numeric("constants.intertwiner_w_scaling" + L, params,
                  num::intertwiner_matrix_element(level, 1, 1, 1, p, pp, 2.0),
                  std::pow(2.0, e) * num::intertwiner_matrix_element(level, 1, 1, 1, p, pp, 1.0), 1e-12));
  });
  return rep;
}

// ---- exact checks ----

Report zhu_recursion_checks() {
  Report rep;
  guarded(rep, "zhu.recursion", [&](Report& r) {
    const std::vector<std::string> xyz{"x", "y", "z"};
    auto V = [&](const char* n) { return MultiPoly::variable(xyz, n); };
    const MultiPoly x = V("x"), y = V("y"), z = V("z");
    const MultiPoly f2 = x * z;
    const MultiPoly f3 = Rational(1, 2) * x.pow(2) * z.pow(2) - y * z;
    const MultiPoly f4 = Rational(1, 6) * x.pow(3) * z.pow(3) - x * y * z.pow(2) + Rational(1, 3) * x * z;
    const bool ok = zhu::f_poly(2) == f2 && zhu::f_poly(3) == f3 && zhu::f_poly(4) == f4;
    r.add(boolean("zhu.recursion", ok, "f4 = " + zhu::f_poly(4).str()));
  });
  return rep;
}

Report det_identity_checks() {
  Report rep;
  guarded(rep, "zhu.det_identity_symbolic", [&](Report& r) {
    const auto d = zhu::det_identity_symbolic(3);
    const auto f = zhu::fpm_factorization_check(3);
    std::string detail = std::to_string(d.symbolic_checks + f.symbolic_checks) + " symbolic identities";
    for (const auto& s : d.failures) detail += "; " + s;
    for (const auto& s : f.failures) detail += "; " + s;
    r.add(boolean("zhu.det_identity_symbolic", d.ok() && f.ok(), detail));
  });
  guarded(rep, "zhu.det_identity_points", [&](Report& r) {
    int points = 0;
    std::string detail;
    bool ok = true;
    for (int rr = 1; rr <= 3; ++rr)
      for (int ss = 1; ss <= 3; ++ss) {
        const auto d = zhu::det_identity_points(rr, ss, Rational(3, 2), 12, 1000 + 10 * rr + ss);
        points += d.point_checks;
        ok = ok && d.ok();
        for (const auto& s : d.failures) detail += s + "; ";
      }
    ok = ok && points >= 100;
    r.add(boolean("zhu.det_identity_points", ok, detail + std::to_string(points) + " rational points"));
  });
  return rep;
}

Report cohomology_checks() {
  Report rep;
  guarded(rep, "cohomology.z1z2_closed_form", [&](Report& r) {
    const auto& vars = cohom::kParamVars;
    auto V = [&](const char* n) { return MultiPoly::variable(vars, n); };
    auto C = [&](long c) { return MultiPoly::constant(vars, c); };
    const MultiPoly a = V("alpha"), b = V("beta"), g = V("gamma"), w = V("w");
    const RatFunc expected(w * w * (a + g + C(1)) * (a + C(1)),
                           {a + b + 2 * g + C(2), a + b + g + C(2)});
    const RatFunc got = cohom::reduce_symbolic(cohom::parse_form("z1*z2"));
    r.add(boolean("cohomology.z1z2_closed_form", got.equals(expected), "c(z1 z2) = " + got.str()));
  });
  const cohom::NumericParams p{Rational(1, 3), Rational(1, 4), Rational(1, 5), Rational(1)};
  const std::vector<std::pair<std::string, std::string>> forms{
      {"1", "1"}, {"z1+z2", "sum"}, {"z1*z2", "product"}, {"(z1+z2)^2", "sum_squared"}};
  for (const auto& [text, tag] : forms) {
    const std::string name = "cohomology.quadrature." + tag;
    guarded(rep, name, [&](Report& r) {
      const cohom::Form f = cohom::parse_form(text);
      const Rational c = cohom::reduce_symbolic(f).evaluate({p.alpha, p.beta, p.gamma, p.w});
      const auto cmp = cohom::reduce_vs_integral(f, p);
      json params = {{"form", text}, {"alpha", "1/3"}, {"beta", "1/4"}, {"gamma", "1/5"}, {"w", "1/1"}};
      Check chk = numeric(name, params, to_double(c), cmp.quadrature, 1e-6);
      chk.data["c_exact"] = to_fraction_string(c);
      r.add(std::move(chk));
    });
  }
  return rep;
}

Report per_level_exact_checks(const Level& level) {
  Report rep;
  const std::string L = lvl(level);
  guarded(rep, "zhu.classification" + L, [&](Report& r) {
    const auto c = zhu::verify_classification(level, 6);
    const long expected = level.u() * (level.u() - 1) / 2;
    std::string detail = std::to_string(c.points_checked) + " points, " + std::to_string(c.discrete_count) +
                         " discrete (expected " + std::to_string(expected) + ")";
    for (const auto& s : c.failures) detail += "; " + s;
    r.add(boolean("zhu.classification" + L, c.ok() && c.discrete_count == expected, detail));
  });
  guarded(rep, "fusion.ring_axioms" + L, [&](Report& r) {
    const std::vector<WeightClass> ws = sample_weights(level, 25);
    const auto a = check_ring_axioms(level, ws, 50, 7);
    std::string detail = std::to_string(ws.size()) + " weights, " + std::to_string(a.pairs_checked) + " pairs, " +
                         std::to_string(a.triples_checked) + " triples";
    for (const auto& s : a.violations) detail += "; " + s;
    r.add(boolean("fusion.ring_axioms" + L, a.ok(), detail));
  });
  guarded(rep, "fusion.triple_product" + L, [&](Report& r) {
    const long v = level.v();
    const int d2 = v == 2, d3 = v == 3;
    const int expected = 5 - d2 + (1 - d2) * (5 - d3);
    const int got = triple_product_summands(level, WeightClass(Rational(2, 7)), WeightClass(Rational(1, 3)));
    r.add(boolean("fusion.triple_product" + L, got == expected,
                  std::to_string(got) + " summands (expected " + std::to_string(expected) + ")"));
  });
  if (level.v() > 1) {
    guarded(rep, "coset.transport" + L, [&](Report& r) {
      int done = 0, skipped = 0;
      std::string detail;
      bool ok = true;
      for (int i = 0; done < 20 && i < 200; ++i) {
        const Rational q = frac(2 * i + 1, 53), q2 = frac(3 * i + 2, 59);
        try {
          const N2Label a = N2Label::relaxed(q, 1, 1), b = N2Label::relaxed(q2, 1, level.v() > 2 ? 2 : 1);
          const auto via_sl2 = coset::n2_fuse(level, a, b);
          const auto direct = coset::n2_fuse_formula(level, a, b);
          if (via_sl2 != direct) {
            ok = false;
            detail += render(a) + " x " + render(b) + ": " + coset::render(via_sl2) + " vs " + coset::render(direct) + "; ";
          }
          ++done;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::NonGeneric && e.kind() != ErrorKind::NonGenericOutput) throw;
          ++skipped;
        }
      }
      ok = ok && done == 20;
      r.add(boolean("coset.transport" + L, ok,
                    detail + std::to_string(done) + " samples, " + std::to_string(skipped) + " non-generic skipped"));
    });
  }
  return rep;
}

// ---- subcommands ----

num::QuadratureConfig quad_config(double tol, unsigned subdiv) {
  num::QuadratureConfig cfg;
  if (tol > 0) cfg.rel_tol = tol;
  if (subdiv > 0) cfg.max_subdivisions = subdiv;
  return cfg;
}

void print_poly(std::ostream& out, const std::string& name, const MultiPoly& p, bool as_json, json& doc) {
  if (as_json)
    doc[name] = p.to_json();
  else
    out << name << " = " << p.str() << "\n";
}

json multiset_json(const LabelMultiset& m, const Level& level) {
  json terms = json::array();
  for (const auto& [label, mult] : m) terms.push_back({{"label", render(label)}, {"mult", mult}, {"detail", to_json(label, level)}});
  return terms;
}

json n2_multiset_json(const coset::N2Multiset& m, const Level& level) {
  json terms = json::array();
  for (const auto& [label, mult] : m) terms.push_back({{"label", to_json(label, level)}, {"text", render(label)}, {"mult", mult}});
  return terms;
}

std::vector<Level> parse_levels(const std::string& text) {
  std::vector<Level> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    out.push_back(Level::parse(std::string_view(text).substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

}  // namespace

Report verify_suite(Suite suite, const Level& level, const num::QuadratureConfig& cfg) {
  Report rep;
  switch (suite) {
    case Suite::Beta: rep = beta_suite(cfg); break;
    case Suite::Selberg: rep = selberg_suite(cfg); break;
    case Suite::Bpz: rep = bpz_suite(level); break;
    case Suite::Constants: rep = constants_suite(level, cfg); break;
  }
  rep.sort();
  return rep;
}

Report run_verify_all(const std::vector<Level>& levels, const num::QuadratureConfig& cfg) {
  Report rep;
  if (levels.empty()) return rep;
  rep.append(zhu_recursion_checks());
  rep.append(det_identity_checks());
  rep.append(cohomology_checks());
  rep.append(beta_suite(cfg));
  rep.append(selberg_suite(cfg));
  for (const Level& level : levels) {
    rep.append(per_level_exact_checks(level));
    rep.append(bpz_suite(level));
    rep.append(constants_suite(level, cfg));
  }
  rep.sort();
  return rep;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fusion rules, Zhu algebra and analytic checks for admissible sl(2) and N=2 models", "fusionkit"};
  app.require_subcommand(1);

  std::string level_text, a_text, b_text, form_text, suite_text, p_text, to_n2_text, ffr_text, levels_text;
  std::string alpha_text, beta_text, gamma_text, w_text = "1";
  std::vector<std::string> n2_pair;
  bool as_json = false, groth = false, want_p1 = false, want_p2 = false, want_simples = false, want_verify = false;
  bool symbolic = false, show_trace = false, check_quad = false;
  int parity = 0, flow_min = -1, flow_max = 1;
  double quad_tol = 0;
  unsigned quad_subdiv = 0;

  auto* fuse_cmd = app.add_subcommand("fuse", "fusion product of two sl(2) labels");
  fuse_cmd->add_option("--level", level_text, "level u/v (optional when the labels carry @u/v)");
  fuse_cmd->add_option("--a", a_text, "first label")->required();
  fuse_cmd->add_option("--b", b_text, "second label")->required();
  fuse_cmd->add_flag("--grothendieck", groth, "image in the Grothendieck ring");
  fuse_cmd->add_flag("--json", as_json);

  auto* simples_cmd = app.add_subcommand("simples", "simple modules in the flow window");
  simples_cmd->add_option("--level", level_text)->required();
  simples_cmd->add_option("--flow-min", flow_min);
  simples_cmd->add_option("--flow-max", flow_max);
  simples_cmd->add_flag("--json", as_json);

  auto* zhu_cmd = app.add_subcommand("zhu", "Zhu algebra relations and simples");
  zhu_cmd->add_option("--level", level_text)->required();
  zhu_cmd->add_flag("--p1", want_p1);
  zhu_cmd->add_flag("--p2", want_p2);
  zhu_cmd->add_flag("--simples", want_simples);
  zhu_cmd->add_flag("--verify", want_verify);
  zhu_cmd->add_flag("--json", as_json);

  auto* coset_cmd = app.add_subcommand("coset", "N=2 coset transport");
  coset_cmd->add_option("--level", level_text)->required();
  auto* to_n2_opt = coset_cmd->add_option("--to-n2", to_n2_text, "sl(2) label");
  coset_cmd->add_option("--p", p_text, "charge p (rational)");
  coset_cmd->add_option("--i", parity, "parity 0 or 1")->check(CLI::Range(0, 1));
  auto* n2_opt = coset_cmd->add_option("--n2-fuse", n2_pair, "two relaxed N=2 labels")->expected(2);
  auto* ffr_opt = coset_cmd->add_option("--ffr", ffr_text, "sl(2) label to place in the lattice bookkeeping");
  to_n2_opt->excludes(n2_opt)->excludes(ffr_opt);
  n2_opt->excludes(ffr_opt);
  coset_cmd->add_flag("--json", as_json);

  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a symmetric form to a multiple of 1 in twisted cohomology");
  reduce_cmd->add_option("--alpha", alpha_text);
  reduce_cmd->add_option("--beta", beta_text);
  reduce_cmd->add_option("--gamma", gamma_text);
  reduce_cmd->add_option("--w", w_text);
  reduce_cmd->add_option("--form", form_text)->required();
  reduce_cmd->add_flag("--symbolic", symbolic, "coefficient as a rational function of alpha, beta, gamma, w");
  reduce_cmd->add_flag("--trace", show_trace);
  reduce_cmd->add_flag("--quadrature", check_quad, "compare against I_w[F]/I_w[1] by quadrature");
  reduce_cmd->add_flag("--json", as_json);

  auto* verify_cmd = app.add_subcommand("verify", "one analytic verification suite");
  verify_cmd->add_option("--suite", suite_text)->required()->check(CLI::IsMember({"beta", "selberg", "bpz", "constants"}));
  verify_cmd->add_option("--level", level_text)->required();
  verify_cmd->add_option("--quad-tol", quad_tol);
  verify_cmd->add_option("--quad-max-subdiv", quad_subdiv);
  verify_cmd->add_flag("--json", as_json);

  auto* all_cmd = app.add_subcommand("verify-all", "every self-check for a list of levels");
  auto* levels_opt = all_cmd->add_option("--levels", levels_text, "comma-separated u/v list (default 3/2,2/3,5/2,3/4,4/3)");
  all_cmd->add_option("--quad-tol", quad_tol);
  all_cmd->add_option("--quad-max-subdiv", quad_subdiv);
  all_cmd->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    auto level_opt = [&]() -> std::optional<Level> {
      if (level_text.empty()) return std::nullopt;
      return Level::parse(level_text);
    };

    if (fuse_cmd->parsed()) {
      std::optional<Level> lv = level_opt();
      ParsedSl2Label ra = parse_sl2_label_raw(a_text);
      if (!lv) lv = ra.level;
      if (!lv) lv = parse_sl2_label_raw(b_text).level;
      if (!lv) fail(ErrorKind::InvalidArgument, "no level given (use --level u/v or label@u/v)");
      const Sl2Label a = parse_sl2_label(a_text, lv), b = parse_sl2_label(b_text, lv);
      if (groth) {
        const LabelMultiset m = fuse_grothendieck(*lv, a, b);
        if (as_json)
          out << json{{"status", status_name(FusionStatus::GrothendieckOnly)}, {"terms", multiset_json(m, *lv)}}.dump(2)
              << "\n";
        else
          out << render(m) << "\n";
      } else {
        const FusionDecomposition d = fuse(*lv, a, b);
        if (as_json)
          out << to_json(d, *lv).dump(2) << "\n";
        else
          out << render(d.terms) << "  [" << status_name(d.status) << "]\n";
      }
      return 0;
    }

    if (simples_cmd->parsed()) {
      const Level lv = Level::parse(level_text);
      const SimpleModules sm = simple_modules(lv, flow_min, flow_max);
      if (as_json) {
        json d = json::array(), e = json::array();
        for (const auto& l : sm.discrete) d.push_back(to_json(l, lv));
        for (const auto& f : sm.e_families) e.push_back({{"r", f.r}, {"s", f.s}, {"flow", f.flow}});
        out << json{{"level", level_json(lv)}, {"discrete", d}, {"e_families", e}}.dump(2) << "\n";
      } else {
        for (const auto& l : sm.discrete) out << render(l) << "\n";
        for (const auto& f : sm.e_families)
          out << (f.flow ? "sf(" + std::to_string(f.flow) + ")." : std::string()) << "E[mu](" << f.r << "," << f.s
              << ")\n";
      }
      return 0;
    }

    if (zhu_cmd->parsed()) {
      const Level lv = Level::parse(level_text);
      const bool all = !(want_p1 || want_p2 || want_simples || want_verify);
      json doc = json::object();
      if (all || want_p1) print_poly(out, "p1", zhu::p1_poly(lv), as_json, doc);
      if (all || want_p2) print_poly(out, "p2", zhu::p2_poly(lv), as_json, doc);
      if (all || want_simples) {
        const auto s = zhu::zhu_simples(lv);
        json d = json::array(), c = json::array();
        for (const auto& pt : s.discrete) {
          d.push_back({{"eta", to_fraction_string(pt.eta)}, {"Delta", to_fraction_string(pt.delta)}});
          if (!as_json) out << "discrete eta=" << to_string(pt.eta) << " Delta=" << to_string(pt.delta) << "\n";
        }
        for (const auto& f : s.continuous) {
          c.push_back({{"r", f.r}, {"s", f.s}});
          if (!as_json) out << "continuous (r,s)=(" << f.r << "," << f.s << ")\n";
        }
        doc["simples"] = {{"discrete", d}, {"continuous", c}};
      }
      int code = 0;
      if (all || want_verify) {
        const auto rep = zhu::verify_classification(lv);
        doc["verify"] = {{"ok", rep.ok()}, {"points_checked", rep.points_checked},
                         {"discrete_count", rep.discrete_count}, {"failures", rep.failures}};
        if (!as_json) {
          out << "verify: " << (rep.ok() ? "pass" : "fail") << " (" << rep.points_checked << " points)\n";
          for (const auto& f : rep.failures) out << "  " << f << "\n";
        }
        if (!rep.ok()) code = 1;
      }
      if (as_json) out << doc.dump(2) << "\n";
      return code;
    }

    if (coset_cmd->parsed()) {
      const Level lv = Level::parse(level_text);
      if (!to_n2_text.empty()) {
        if (p_text.empty()) fail(ErrorKind::InvalidArgument, "--to-n2 needs --p");
        const Sl2Label l = parse_sl2_label(to_n2_text, lv);
        const N2Label n = coset::coset_component(lv, l, parse_rational(p_text), parity);
        if (as_json)
          out << to_json(n, lv).dump(2) << "\n";
        else
          out << render(n) << "\n";
      } else if (!n2_pair.empty()) {
        const N2Label a = parse_n2_label(n2_pair[0], lv), b = parse_n2_label(n2_pair[1], lv);
        const auto m = coset::n2_fuse(lv, a, b);
        if (as_json)
          out << json{{"status", "semisimple"}, {"terms", n2_multiset_json(m, lv)}}.dump(2) << "\n";
        else
          out << coset::render(m) << "\n";
      } else if (!ffr_text.empty()) {
        const auto f = coset::ffr_label(lv, parse_sl2_label(ffr_text, lv));
        out << (as_json ? coset::to_json(f).dump(2) : coset::to_json(f).dump()) << "\n";
      } else {
        fail(ErrorKind::InvalidArgument, "coset needs one of --to-n2, --n2-fuse, --ffr");
      }
      return 0;
    }

    if (reduce_cmd->parsed()) {
      const cohom::Form f = cohom::parse_form(form_text);
      std::vector<cohom::Step> trace;
      json doc = {{"form", form_text}};
      if (symbolic) {
        const RatFunc c = cohom::reduce_symbolic(f, &trace);
        doc["c"] = c.str();
        if (!as_json) out << "c = " << c.str() << "\n";
      } else {
        if (alpha_text.empty() || beta_text.empty() || gamma_text.empty())
          fail(ErrorKind::InvalidArgument, "numeric reduction needs --alpha, --beta and --gamma (or --symbolic)");
        const cohom::NumericParams p{parse_rational(alpha_text), parse_rational(beta_text),
                                     parse_rational(gamma_text), parse_rational(w_text)};
        if (auto why = cohom::excluded_reason(p.alpha, p.beta, p.gamma)) fail(ErrorKind::NonGeneric, *why);
        const Rational c = cohom::reduce_numeric(f, p, &trace);
        doc["c"] = to_fraction_string(c);
        doc["c_float"] = to_double(c);
        if (!as_json) out << "c = " << to_string(c) << " (" << std::setprecision(17) << to_double(c) << ")\n";
        if (check_quad) {
          const auto cmp = cohom::reduce_vs_integral(f, p);
          doc["quadrature"] = {{"value", cmp.quadrature}, {"abs_err", cmp.abs_err}, {"rel_err", cmp.rel_err}};
          if (!as_json) out << "quadrature = " << cmp.quadrature << " (rel_err " << sci(cmp.rel_err) << ")\n";
        }
      }
      if (show_trace) {
        json steps = json::array();
        for (const auto& s : trace) {
          steps.push_back({{"degree", s.degree}, {"spread", s.spread}});
          if (!as_json) out << "  step degree=" << s.degree << " spread=" << s.spread << "\n";
        }
        doc["trace"] = steps;
      }
      if (as_json) out << doc.dump(2) << "\n";
      return 0;
    }

    const auto cfg = quad_config(quad_tol, quad_subdiv);
    Report rep;
    if (verify_cmd->parsed()) {
      rep = verify_suite(parse_suite(suite_text), Level::parse(level_text), cfg);
    } else {
      const std::vector<Level> levels = levels_opt->count() ? parse_levels(levels_text) : default_levels();
      rep = run_verify_all(levels, cfg);
    }
    out << (as_json ? rep.to_json().dump(2) + "\n" : rep.table());
    return rep.ok() ? 0 : 1;
  } catch (const Error& e) {
    err << "error [" << error_kind_name(e.kind()) << "]: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Parse:
      case ErrorKind::InvalidArgument:
      case ErrorKind::NonGeneric:
        return 2;
      default:
        return 1;
    }
  }
}

}  // namespace fk::cli
