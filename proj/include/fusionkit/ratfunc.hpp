#pragma once

#include "fusionkit/multipoly.hpp"

#include <string>
#include <vector>

namespace fk {

// Rational function num / prod(den). Denominator factors are kept separate and monic
// (leading coefficient 1) so that cancellation is a matter of exact division.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(MultiPoly num) : num_(std::move(num)) {}
  RatFunc(MultiPoly num, std::vector<MultiPoly> den);

  static RatFunc constant(const std::vector<std::string>& vars, const Rational& c);
  static RatFunc variable(const std::vector<std::string>& vars, const std::string& name);

  const MultiPoly& num() const { return num_; }
  const std::vector<MultiPoly>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc operator*(const Rational& c) const;

  // Exact comparison by cross multiplication.
  bool equals(const RatFunc& o) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  std::string str() const;

 private:
  void push_factor(const MultiPoly& f);
  void simplify();
  MultiPoly den_product() const;

  MultiPoly num_;
  std::vector<MultiPoly> den_;
};

}  // namespace fk
