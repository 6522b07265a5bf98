#include "fusionkit/ratfunc.hpp"

#include "fusionkit/errors.hpp"

#include <algorithm>

namespace fk {

RatFunc::RatFunc(MultiPoly num, std::vector<MultiPoly> den) : num_(std::move(num)) {
  for (const auto& f : den) push_factor(f);
  simplify();
}

RatFunc RatFunc::constant(const std::vector<std::string>& vars, const Rational& c) {
  return RatFunc(MultiPoly::constant(vars, c));
}

RatFunc RatFunc::variable(const std::vector<std::string>& vars, const std::string& name) {
  return RatFunc(MultiPoly::variable(vars, name));
}

void RatFunc::push_factor(const MultiPoly& f) {
  if (f.is_zero()) fail(ErrorKind::ReductionSingular, "division by zero rational function");
  const Rational lead = f.leading_term().second;
  if (auto c = f.as_constant()) {
    num_ *= 1 / *c;
    return;
  }
  num_ *= 1 / lead;
  den_.push_back(f * (1 / lead));
}

void RatFunc::simplify() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (std::size_t i = 0; i < den_.size();) {
    if (auto q = num_.divide_exact(den_[i])) {
      num_ = std::move(*q);
      den_.erase(den_.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  std::sort(den_.begin(), den_.end(), [](const MultiPoly& a, const MultiPoly& b) { return a.str() < b.str(); });
}

MultiPoly RatFunc::den_product() const {
  MultiPoly p = MultiPoly::constant(num_.vars(), 1);
  for (const auto& f : den_) p = p * f;
  return p;
}

namespace {

// Factors of `want` left over after matching each against one copy in `have`.
std::vector<MultiPoly> missing(const std::vector<MultiPoly>& have, const std::vector<MultiPoly>& want) {
  std::vector<MultiPoly> pool = have;
  std::vector<MultiPoly> out;
  for (const auto& f : want) {
    auto it = std::find(pool.begin(), pool.end(), f);
    if (it != pool.end())
      pool.erase(it);
    else
      out.push_back(f);
  }
  return out;
}

MultiPoly product(const std::vector<std::string>& vars, const std::vector<MultiPoly>& fs) {
  MultiPoly p = MultiPoly::constant(vars, 1);
  for (const auto& f : fs) p = p * f;
  return p;
}

}  // namespace

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  const auto& vars = num_.vars();
  // lcm of the factor multisets
  std::vector<MultiPoly> extra_for_this = missing(den_, o.den_);
  std::vector<MultiPoly> extra_for_o = missing(o.den_, den_);
  RatFunc out;
  out.num_ = num_ * product(vars, extra_for_this) + o.num_ * product(vars, extra_for_o);
  out.den_ = den_;
  out.den_.insert(out.den_.end(), extra_for_this.begin(), extra_for_this.end());
  out.simplify();
  return out;
}

RatFunc RatFunc::operator-() const {
  RatFunc out = *this;
  out.num_ = -out.num_;
  return out;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  RatFunc out;
  out.num_ = num_ * o.num_;
  out.den_ = den_;
  out.den_.insert(out.den_.end(), o.den_.begin(), o.den_.end());
  out.simplify();
  return out;
}

RatFunc RatFunc::operator*(const Rational& c) const {
  RatFunc out = *this;
  out.num_ *= c;
  if (c == 0) out.den_.clear();
  return out;
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) fail(ErrorKind::ReductionSingular, "division by zero rational function");
  RatFunc out;
  out.num_ = num_ * product(num_.vars(), o.den_);
  out.den_ = den_;
  out.push_factor(o.num_);
  out.simplify();
  return out;
}

bool RatFunc::equals(const RatFunc& o) const {
  return (num_ * o.den_product() - o.num_ * den_product()).is_zero();
}

Rational RatFunc::evaluate(const std::vector<Rational>& point) const {
  Rational d = 1;
  for (const auto& f : den_) {
    Rational x = f.evaluate(point);
    if (x == 0) fail(ErrorKind::Pole, "rational function has a pole at the evaluation point (factor " + f.str() + ")");
    d *= x;
  }
  return num_.evaluate(point) / d;
}

std::string RatFunc::str() const {
  if (den_.empty()) return num_.str();
  std::string out = "(" + num_.str() + ")/(";
  for (std::size_t i = 0; i < den_.size(); ++i) {
    if (i) out += "*";
    out += "(" + den_[i].str() + ")";
  }
  return out + ")";
}

}  // namespace fk
