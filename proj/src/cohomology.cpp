#include "fusionkit/cohomology.hpp"

#include "fusionkit/errors.hpp"
#include "fusionkit/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

namespace fk::cohom {

namespace {

MultiPoly fconst(const Rational& c) { return MultiPoly::constant(kFormVars, c); }
MultiPoly fvar(const std::string& name) { return MultiPoly::variable(kFormVars, name); }
MultiPoly zmono(int a, int b) { return MultiPoly::monomial(kFormVars, {a, b, 0}, 1); }

const MultiPoly& z1w() {
  static const MultiPoly p = fvar("z1") - fvar("w");
  return p;
}
const MultiPoly& z2w() {
  static const MultiPoly p = fvar("z2") - fvar("w");
  return p;
}
const MultiPoly& z12() {
  static const MultiPoly p = fvar("z1") - fvar("z2");
  return p;
}

// Smallest exponents of z1 and z2 over the terms (0 for the zero polynomial).
std::pair<int, int> min_z(const MultiPoly& p) {
  int a = 0;
  int b = 0;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    a = first ? e[0] : std::min(a, e[0]);
    b = first ? e[1] : std::min(b, e[1]);
    first = false;
  }
  return {a, b};
}

// Exact division of a Laurent polynomial in z1, z2 by a polynomial.
std::optional<MultiPoly> divide_laurent(const MultiPoly& p, const MultiPoly& d) {
  if (p.is_zero()) return p;
  const auto [a, b] = min_z(p);
  auto q = (p * zmono(-a, -b)).divide_exact(d);
  if (!q) return std::nullopt;
  return *q * zmono(a, b);
}

MultiPoly times_pow(const MultiPoly& p, const MultiPoly& f, int k) { return k == 0 ? p : p * f.pow(k); }

void cancel(Form& f) {
  auto strip = [&](const MultiPoly& factor, int& exp) {
    while (exp > 0) {
      auto q = divide_laurent(f.num, factor);
      if (!q) return;
      f.num = std::move(*q);
      --exp;
    }
  };
  if (f.num.is_zero()) {
    f.m1 = f.m2 = f.n = 0;
    return;
  }
  strip(z1w(), f.m1);
  strip(z2w(), f.m2);
  strip(z12(), f.n);
}

double ipow(double x, int k) { return std::pow(x, k); }

}  // namespace

Form Form::constant(const Rational& c) { return Form{fconst(c), 0, 0, 0}; }

Form Form::variable(const std::string& name) {
  if (name != "z1" && name != "z2" && name != "w") fail(ErrorKind::InvalidArgument, "unknown variable " + name);
  return Form{fvar(name), 0, 0, 0};
}

Form Form::operator+(const Form& o) const {
  Form out;
  out.m1 = std::max(m1, o.m1);
  out.m2 = std::max(m2, o.m2);
  out.n = std::max(n, o.n);
  auto lift = [&](const Form& f) {
    return times_pow(times_pow(times_pow(f.num, z1w(), out.m1 - f.m1), z2w(), out.m2 - f.m2), z12(), out.n - f.n);
  };
  out.num = lift(*this) + lift(o);
  cancel(out);
  return out;
}

Form Form::operator-(const Form& o) const { return *this + Form{-o.num, o.m1, o.m2, o.n}; }

Form Form::operator*(const Form& o) const {
  Form out{num * o.num, m1 + o.m1, m2 + o.m2, n + o.n};
  cancel(out);
  return out;
}

Form Form::operator/(const Form& o) const {
  if (o.num.is_zero()) fail(ErrorKind::InvalidArgument, "division by zero in form");
  // Split the divisor numerator into z-monomial * linear factors * constant.
  const auto [sa, sb] = min_z(o.num);
  MultiPoly d = o.num * zmono(-sa, -sb);
  int a = 0, b = 0, c = 0;
  auto peel = [&](const MultiPoly& factor, int& count) {
    while (auto q = d.divide_exact(factor)) {
      d = std::move(*q);
      ++count;
    }
  };
  peel(z1w(), a);
  peel(z2w(), b);
  peel(z12(), c);
  if (d.terms().size() != 1)
    fail(ErrorKind::InvalidArgument, "divisor must be a monomial in z1, z2 times powers of (z1-w), (z2-w), (z1-z2)");
  const auto& [e, coef] = *d.terms().begin();
  if (e[2] != 0) fail(ErrorKind::InvalidArgument, "divisor may not contain a bare power of w");
  MultiPoly q = times_pow(times_pow(times_pow(num, z1w(), o.m1), z2w(), o.m2), z12(), o.n);
  q = q * zmono(-(sa + e[0]), -(sb + e[1])) * (1 / coef);
  Form out{q, m1 + a, m2 + b, n + c};
  cancel(out);
  return out;
}

Form Form::pow(int k) const {
  if (k < 0) return constant(1) / pow(-k);
  Form out = constant(1);
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

double Form::evaluate(double z1, double z2, double w) const {
  double s = 0;
  for (const auto& [e, c] : num.terms()) s += to_double(c) * ipow(z1, e[0]) * ipow(z2, e[1]) * ipow(w, e[2]);
  return s / (ipow(z1 - w, m1) * ipow(z2 - w, m2) * ipow(z1 - z2, n));
}

Form Form::swapped() const {
  MultiPoly p(kFormVars);
  for (const auto& [e, c] : num.terms()) p += MultiPoly::monomial(kFormVars, {e[1], e[0], e[2]}, c);
  if (n % 2) p = -p;
  return Form{p, m2, m1, n};
}

std::string Form::str() const {
  std::vector<std::string> den;
  auto put = [&](const char* base, int k) {
    if (k == 1) den.push_back(base);
    if (k > 1) den.push_back(std::string(base) + "^" + std::to_string(k));
  };
  put("(z1-w)", m1);
  put("(z2-w)", m2);
  put("(z1-z2)", n);
  if (den.empty()) return num.str();
  std::string out = "(" + num.str() + ")/(";
  for (std::size_t i = 0; i < den.size(); ++i) out += (i ? "*" : "") + den[i];
  return out + ")";
}

namespace {

class FormParser {
 public:
  explicit FormParser(std::string_view s) : s_(s) {}

  Form parse() {
    Form f = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return f;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Form expr() {
    Form f = term();
    for (;;) {
      if (eat('+'))
        f = f + term();
      else if (eat('-'))
        f = f - term();
      else
        return f;
    }
  }

  Form term() {
    Form f = factor();
    for (;;) {
      if (eat('*'))
        f = f * factor();
      else if (eat('/'))
        f = f / factor();
      else
        return f;
    }
  }

  Form factor() {
    if (eat('-')) return Form::constant(-1) * factor();
    if (eat('+')) return factor();
    Form base = primary();
    if (eat('^')) return base.pow(exponent());
    return base;
  }

  int exponent() {
    const bool paren = eat('(');
    const bool neg = eat('-');
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent", pos_);
    if (pos_ - start > 6) throw ParseError("exponent too large", start);
    int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (paren && !eat(')')) throw ParseError("expected ')'", pos_);
    return neg ? -k : k;
  }

  Form primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of form", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Form f = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Form::constant(Rational(std::string(s_.substr(start, pos_ - start))));
    }
    if (s_.substr(pos_, 2) == "z1" || s_.substr(pos_, 2) == "z2") {
      pos_ += 2;
      return Form::variable(std::string(s_.substr(pos_ - 2, 2)));
    }
    if (c == 'w') {
      ++pos_;
      return Form::variable("w");
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Form parse_form(std::string_view text) { return FormParser(text).parse(); }

Normalized normalize(const Form& f) {
  const Form s = Form::constant(Rational(1, 2)) * (f + f.swapped());
  Normalized out;
  const auto [a, b] = min_z(s.num);
  out.K = std::max(0, -std::min(a, b));
  out.M = std::max(s.m1, s.m2);
  out.N = (s.n + 1) / 2;
  MultiPoly p = s.num * zmono(out.K, out.K);
  p = times_pow(times_pow(times_pow(p, z1w(), out.M - s.m1), z2w(), out.M - s.m2), z12(), 2 * out.N - s.n);
  out.P = p;
  out.D = times_pow(times_pow(zmono(out.K, out.K), z1w() * z2w(), out.M), z12(), 2 * out.N);
  return out;
}

namespace {

using Key = std::pair<int, int>;  // symmetric monomial m(k,l), k >= l

struct KeyLess {
  bool operator()(const Key& x, const Key& y) const {
    const int dx = x.first + x.second;
    const int dy = y.first + y.second;
    if (dx != dy) return dx < dy;
    return x.first - x.second < y.first - y.second;
  }
};

struct NumericField {
  using T = Rational;
  Rational a, b, g, w;
  T cst(const Rational& c) const { return c; }
  T wpow(int k) const {
    Rational out = 1;
    for (int i = 0; i < k; ++i) out *= w;
    return out;
  }
  static bool is_zero(const T& x) { return x == 0; }
};

struct SymbolicField {
  using T = RatFunc;
  RatFunc a, b, g, w;
  T cst(const Rational& c) const { return RatFunc::constant(kParamVars, c); }
  T wpow(int k) const {
    T out = cst(1);
    for (int i = 0; i < k; ++i) out = out * w;
    return out;
  }
  static bool is_zero(const T& x) { return x.is_zero(); }
};

template <class Field>
using SymPoly = std::map<Key, typename Field::T, KeyLess>;

template <class Field>
void add(SymPoly<Field>& poly, const Key& key, const typename Field::T& c) {
  if (Field::is_zero(c)) return;
  auto it = poly.find(key);
  if (it == poly.end()) {
    poly.emplace(key, c);
    return;
  }
  it->second = it->second + c;
  if (Field::is_zero(it->second)) poly.erase(it);
}

// Adds c * x^p y^q, written in the basis m(k,l) = x^k y^l + x^l y^k (k>l), m(k,k) = x^k y^k.
// Callers supply symmetric sums, so each monomial and its mirror land on the same key.
template <class Field>
void add_monomial(const Field& F, SymPoly<Field>& poly, int p, int q, const typename Field::T& c) {
  if (p == q)
    add<Field>(poly, {p, p}, c);
  else
    add<Field>(poly, {std::max(p, q), std::min(p, q)}, c * F.cst(Rational(1, 2)));
}

// Symmetrised derivative of U x^k (x-w) y^l, an exact form in the basis m.
template <class Field>
SymPoly<Field> exact_form(const Field& F, int k, int l) {
  using T = typename Field::T;
  SymPoly<Field> e;
  const T c0 = F.cst(k + 1) + F.a + F.b;
  add_monomial(F, e, k, l, c0);
  add_monomial(F, e, l, k, c0);
  const T c1 = F.cst(-1) * F.w * (F.cst(k) + F.a);
  add_monomial(F, e, k - 1, l, c1);
  add_monomial(F, e, l, k - 1, c1);
  const T g2 = F.cst(2) * F.g;
  for (int i = 0; i <= k - l; ++i) add_monomial(F, e, l + i, k - i, g2);
  const T g2w = F.cst(-2) * F.g * F.w;
  for (int i = 0; i < k - l; ++i) add_monomial(F, e, l + i, k - 1 - i, g2w);
  return e;
}

struct Shift {
  int K = 0, M = 0, N = 0;
};

std::string linear_form(const Shift& s, int k, int l) {
  auto with_const = [](std::string base, int c) {
    if (c > 0) return base + "+" + std::to_string(c);
    if (c < 0) return base + std::to_string(c);
    return base;
  };
  if (k > l) return with_const("alpha+beta+2*gamma", k + 1 - s.K - s.M - 2 * s.N);
  return with_const("alpha+beta+gamma", k + 1 - s.K - s.M - s.N);
}

template <class Field>
typename Field::T reduce_poly(const Field& F, const MultiPoly& p, const Shift& shift, std::vector<Step>* trace) {
  SymPoly<Field> poly;
  for (const auto& [e, c] : p.terms()) {
    if (e[0] < 0 || e[1] < 0 || e[2] < 0) throw std::logic_error("reduce_poly expects a polynomial");
    add_monomial(F, poly, e[0], e[1], F.cst(c) * F.wpow(e[2]));
  }
  while (!poly.empty()) {
    const Key top = poly.rbegin()->first;
    if (top == Key{0, 0}) break;
    const auto [k, l] = top;
    SymPoly<Field> e = exact_form(F, k, l);
    auto lead = e.find(top);
    if (lead == e.end() || Field::is_zero(lead->second))
      fail(ErrorKind::ReductionSingular,
           "coefficient " + linear_form(shift, k, l) + " vanishes while reducing z1^" + std::to_string(k) + "*z2^" +
               std::to_string(l));
    const typename Field::T factor = poly.rbegin()->second / lead->second;
    for (const auto& [key, c] : e) {
      if (key == top) continue;
      add<Field>(poly, key, F.cst(-1) * factor * c);
    }
    poly.erase(top);
    if (trace) trace->push_back({k + l, k - l});
  }
  auto it = poly.find({0, 0});
  return it == poly.end() ? F.cst(0) : it->second;
}

RatFunc pvar(const std::string& name) { return RatFunc::variable(kParamVars, name); }

}  // namespace

RatFunc reduce_symbolic(const Form& f, std::vector<Step>* trace) {
  const Normalized nz = normalize(f);
  const Shift shift{nz.K, nz.M, nz.N};
  SymbolicField F{pvar("alpha") - RatFunc::constant(kParamVars, nz.K),
                  pvar("beta") - RatFunc::constant(kParamVars, nz.M),
                  pvar("gamma") - RatFunc::constant(kParamVars, nz.N), pvar("w")};
  const RatFunc cp = reduce_poly(F, nz.P, shift, trace);
  const RatFunc ratio = selberg_shift_ratio(nz.K, nz.M, nz.N);
  if (nz.K || nz.M || nz.N) {
    const RatFunc cd = reduce_poly(F, nz.D, shift, nullptr);
    if (!cd.equals(ratio)) throw std::logic_error("reduction of the normalising denominator disagrees with the Selberg ratio");
  }
  return cp / ratio;
}

Rational reduce_numeric(const Form& f, const NumericParams& p, std::vector<Step>* trace) {
  const Normalized nz = normalize(f);
  const Shift shift{nz.K, nz.M, nz.N};
  NumericField F{p.alpha - nz.K, p.beta - nz.M, p.gamma - nz.N, p.w};
  const Rational cp = reduce_poly(F, nz.P, shift, trace);
  const Rational cd = reduce_poly(F, nz.D, shift, nullptr);
  if (cd == 0)
    fail(ErrorKind::ReductionSingular, "the denominator " + nz.D.str() + " reduces to 0 at these parameters");
  return cp / cd;
}

RatFunc selberg_shift_ratio(int K, int M, int N) {
  if (K < 0 || M < 0 || N < 0) fail(ErrorKind::InvalidArgument, "shifts must be nonnegative");
  const auto var = [](const std::string& n) { return MultiPoly::variable(kParamVars, n); };
  const auto one = [](const Rational& c) { return MultiPoly::constant(kParamVars, c); };
  const MultiPoly a = var("alpha"), b = var("beta"), g = var("gamma"), w = var("w");
  // Gamma(x)/Gamma(x-n) = (x-1)(x-2)...(x-n).
  std::vector<MultiPoly> num_factors;
  std::vector<MultiPoly> den_factors;
  auto falling = [&](std::vector<MultiPoly>& out, const MultiPoly& x, int n) {
    for (int j = 1; j <= n; ++j) out.push_back(x - one(j));
  };
  falling(num_factors, one(1) + one(2) * g, 2 * N);
  falling(num_factors, one(1) + a, K);
  falling(num_factors, one(1) + a + g, K + N);
  falling(num_factors, one(1) + b, M);
  falling(num_factors, one(1) + b + g, M + N);
  falling(den_factors, one(1) + g, N);
  falling(den_factors, one(2) + a + b + g, K + M + N);
  falling(den_factors, one(2) + a + b + one(2) * g, K + M + 2 * N);
  MultiPoly num = w.pow(2 * (K + M + N));
  for (const auto& x : num_factors) num = num * x;
  return RatFunc(num, den_factors);
}

std::optional<std::string> excluded_reason(const Rational& alpha, const Rational& beta, const Rational& gamma) {
  const std::pair<const char*, Rational> checks[] = {
      {"alpha", alpha},
      {"2(alpha+gamma)", 2 * (alpha + gamma)},
      {"beta", beta},
      {"2(beta+gamma)", 2 * (beta + gamma)},
      {"2gamma", 2 * gamma},
      {"alpha+beta+2gamma", alpha + beta + 2 * gamma},
  };
  for (const auto& [name, value] : checks)
    if (is_integer(value)) return std::string(name) + " = " + to_string(value) + " is an integer";
  return std::nullopt;
}

IntegralComparison reduce_vs_integral(const Form& f, const NumericParams& p) {
  IntegralComparison out{};
  out.reduced = to_double(reduce_numeric(f, p));
  // I[F](a,b,g) = I[P](a-K, b-M, g-N) with P the polynomial numerator, so the integrand stays bounded.
  const Normalized nz = normalize(f);
  const double a = to_double(p.alpha), b = to_double(p.beta), g = to_double(p.gamma), w = to_double(p.w);
  const Form pf{nz.P, 0, 0, 0};
  const double num = num::simplex_integral([&](double z1, double z2) { return pf.evaluate(z1, z2, w); }, a - nz.K,
                                           b - nz.M, g - nz.N, w);
  const double den = num::simplex_integral([](double, double) { return 1.0; }, a, b, g, w);
  out.quadrature = num / den;
  out.abs_err = std::abs(out.reduced - out.quadrature);
  out.rel_err = out.quadrature == 0 ? out.abs_err : out.abs_err / std::abs(out.quadrature);
  return out;
}

}  // namespace fk::cohom
