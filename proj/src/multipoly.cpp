#include "fusionkit/multipoly.hpp"

#include "fusionkit/errors.hpp"

#include <algorithm>
#include <numeric>

namespace fk {

bool GrLex::operator()(const Exponents& a, const Exponents& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return a < b;
}

MultiPoly MultiPoly::constant(const std::vector<std::string>& vars, const Rational& c) {
  MultiPoly p(vars);
  p.add_term(Exponents(vars.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(const std::vector<std::string>& vars, const std::string& name) {
  MultiPoly p(vars);
  Exponents e(vars.size(), 0);
  e[p.index_of(name)] = 1;
  p.add_term(e, 1);
  return p;
}

MultiPoly MultiPoly::monomial(const std::vector<std::string>& vars, const Exponents& e, const Rational& c) {
  if (e.size() != vars.size()) fail(ErrorKind::InvalidArgument, "monomial exponent length mismatch");
  MultiPoly p(vars);
  p.add_term(e, c);
  return p;
}

std::size_t MultiPoly::index_of(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) fail(ErrorKind::InvalidArgument, "unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - vars_.begin());
}

std::optional<Rational> MultiPoly::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() != 1) return std::nullopt;
  const auto& [e, c] = *terms_.begin();
  if (std::any_of(e.begin(), e.end(), [](int x) { return x != 0; })) return std::nullopt;
  return c;
}

Rational MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::pair<Exponents, Rational> MultiPoly::leading_term() const {
  if (terms_.empty()) fail(ErrorKind::InvalidArgument, "leading term of zero polynomial");
  return *terms_.rbegin();
}

int MultiPoly::degree_in(const std::string& name) const {
  std::size_t i = index_of(name);
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e[i] > d) d = e[i];
    first = false;
  }
  return d;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return 0;
  const auto& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::require_same_vars(const MultiPoly& o) const {
  if (vars_ != o.vars_) fail(ErrorKind::InvalidArgument, "polynomials over different variable lists");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (vars_.empty() && terms_.empty()) vars_ = o.vars_;
  require_same_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (vars_.empty() && terms_.empty()) vars_ = o.vars_;
  require_same_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.require_same_vars(b);
  MultiPoly out(a.vars_);
  Exponents e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly MultiPoly::pow(int n) const {
  if (n < 0) fail(ErrorKind::InvalidArgument, "negative power of a polynomial");
  MultiPoly result = constant(vars_, 1);
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Rational MultiPoly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != vars_.size()) fail(ErrorKind::InvalidArgument, "evaluation point has wrong dimension");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (point[i] == 0 && e[i] < 0) fail(ErrorKind::Pole, "negative power of zero in evaluation");
      Rational base = e[i] > 0 ? point[i] : Rational(1) / point[i];
      Rational power = 1;
      for (int k = 0; k < std::abs(e[i]); ++k) power *= base;
      term *= power;
    }
    sum += term;
  }
  return sum;
}

MultiPoly MultiPoly::substitute(const std::string& name, const MultiPoly& value) const {
  require_same_vars(value);
  std::size_t i = index_of(name);
  MultiPoly out(vars_);
  std::map<int, MultiPoly> powers;
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    int k = rest[i];
    rest[i] = 0;
    if (k < 0) fail(ErrorKind::InvalidArgument, "cannot substitute into a negative power");
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, value.pow(k)).first;
    out += monomial(vars_, rest, c) * it->second;
  }
  return out;
}

MultiPoly MultiPoly::rebase(const std::vector<std::string>& vars) const {
  MultiPoly out(vars);
  MultiPoly probe(vars);
  for (const auto& [e, c] : terms_) {
    Exponents f(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      f[probe.index_of(vars_[i])] = e[i];
    }
    out.add_term(f, c);
  }
  return out;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& d) const {
  require_same_vars(d);
  if (d.is_zero()) fail(ErrorKind::InvalidArgument, "division by the zero polynomial");
  MultiPoly rem = *this;
  MultiPoly quotient(vars_);
  const auto [de, dc] = d.leading_term();
  while (!rem.is_zero()) {
    const auto [re, rc] = rem.leading_term();
    Exponents q(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      q[i] = re[i] - de[i];
      if (q[i] < 0) return std::nullopt;
    }
    MultiPoly step = monomial(vars_, q, rc / dc);
    quotient += step;
    rem -= step * d;
  }
  return quotient;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] != 1) mono += "^" + (e[i] < 0 ? "(" + std::to_string(e[i]) + ")" : std::to_string(e[i]));
    }
    if (mono.empty())
      out += to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += to_string(mag) + "*" + mono;
  }
  return out;
}

nlohmann::json MultiPoly::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    terms.push_back({{"exps", it->first},
                     {"num", it->second.get_num().get_str()},
                     {"den", it->second.get_den().get_str()}});
  return {{"vars", vars_}, {"terms", terms}};
}

}  // namespace fk
