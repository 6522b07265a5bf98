#pragma once

#include "fusionkit/rational.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fk {

// Admissible level k = u/v - 2 with gcd(u,v) = 1 and u >= 2.
class Level {
 public:
  static Level make(long u, long v);
  // Parses "u/v".
  static Level parse(std::string_view text);

  long u() const { return u_; }
  long v() const { return v_; }
  Rational t() const { return frac(u_, v_); }
  Rational k() const { return t() - 2; }
  Rational c_sl2() const;
  Rational c_n2() const;
  std::string str() const;

  bool operator==(const Level&) const = default;

 private:
  Level(long u, long v) : u_(u), v_(v) {}
  long u_;
  long v_;
};

// Element of Q/2Z, stored by its representative in [0,2).
class WeightClass {
 public:
  WeightClass() = default;
  explicit WeightClass(const Rational& x);
  static WeightClass parse(std::string_view text);

  const Rational& rep() const { return rep_; }
  bool contains(const Rational& x) const;

  WeightClass operator+(const WeightClass& o) const { return WeightClass(rep_ + o.rep_); }
  WeightClass operator+(const Rational& x) const { return WeightClass(rep_ + x); }
  WeightClass operator-(const Rational& x) const { return WeightClass(rep_ - x); }
  WeightClass operator-() const { return WeightClass(-rep_); }
  bool operator==(const WeightClass& o) const { return rep_ == o.rep_; }
  bool operator<(const WeightClass& o) const { return rep_ < o.rep_; }

 private:
  Rational rep_{0};
};

enum class Sl2Kind { L, Dplus, Dminus, E, Eplus, Eminus, P };

const char* kind_name(Sl2Kind kind);

// sigma^flow applied to one of L_r, D+-_{r,s}, E_{mu;r,s}, E+-_{r,s}, P_{r,s}.
struct Sl2Label {
  Sl2Kind kind = Sl2Kind::L;
  int r = 1;
  int s = 0;  // unused for L
  WeightClass mu;  // only meaningful for E
  int flow = 0;

  static Sl2Label L(int r, int flow = 0);
  static Sl2Label Dplus(int r, int s, int flow = 0);
  static Sl2Label Dminus(int r, int s, int flow = 0);
  static Sl2Label E(const WeightClass& mu, int r, int s, int flow = 0);
  static Sl2Label Eplus(int r, int s, int flow = 0);
  static Sl2Label Eminus(int r, int s, int flow = 0);
  static Sl2Label P(int r, int s, int flow = 0);

  Sl2Label flowed(int by) const;
  // Simple objects: L, D+-, E.
  bool is_simple() const;

  bool operator==(const Sl2Label& o) const;
  bool operator<(const Sl2Label& o) const;
};

Rational lambda_rs(const Level& level, long r, long s);
Rational delta_aff(const Level& level, long r, long s);
Rational h_n2(const Level& level, long r, long s, const Rational& q);
bool is_generic(const Level& level, const WeightClass& mu, int r, int s);

// True when (r,s) is the representative with vr + us < uv.
bool is_canonical_rs(const Level& level, int r, int s);

// Throws InvalidArgument on index ranges and NonGeneric for non-generic E weights.
void validate(const Level& level, const Sl2Label& label);

// Unique representative of the isomorphism class:
//  E_{mu;r,s} -> partner with vr+us<uv;
//  sigma^l L_r (l != 0) -> D^+_{u-r,v-1} (l>0) or D^-_{u-r,v-1} (l<0) with residual flow;
//  D^-_{r,s}, s <= v-2 -> sigma^{-1} D^+_{u-r,v-s-1};
//  sigma^{+1} D^-_{r,v-1} and sigma^{-1} D^+_{r,v-1} -> L_{u-r}.
Sl2Label canonicalize(const Level& level, const Sl2Label& label);

struct EFamily {
  int r;
  int s;
  int flow;
};

struct SimpleModules {
  std::vector<Sl2Label> discrete;  // canonical sigma^l D^+ labels (some print as L)
  std::vector<EFamily> e_families;
};

SimpleModules simple_modules(const Level& level, int flow_min, int flow_max);

// Text grammar: [sf(l).]BODY[@u/v], BODY one of
//   L(r)  D+(r,s)  D-(r,s)  E[mu](r,s)  E+(r,s)  E-(r,s)  P(r,s)
std::string render(const Sl2Label& label);
std::string render(const Sl2Label& label, const Level& level);

struct ParsedSl2Label {
  Sl2Label label;
  std::optional<Level> level;
};

// Grammar-only parse; no validation.
ParsedSl2Label parse_sl2_label_raw(std::string_view text);
// Parses, validates against the level (from the text or the argument) and canonicalizes.
Sl2Label parse_sl2_label(std::string_view text, const std::optional<Level>& level);

nlohmann::json to_json(const Sl2Label& label, const Level& level);

// N=2 labels. Spectral flow is absorbed into q and parity, so none is stored.
enum class N2Family { Discrete, Relaxed };

struct N2Label {
  Rational q;
  N2Family family = N2Family::Relaxed;
  int r = 1;
  int s_or_p = 1;  // s for Relaxed, p for Discrete
  int parity = 0;

  static N2Label relaxed(const Rational& q, int r, int s, int parity = 0);
  static N2Label discrete(const Level& level, int r, int p, int parity = 0);

  bool operator==(const N2Label& o) const;
  bool operator<(const N2Label& o) const;
};

void validate(const Level& level, const N2Label& label);
N2Label canonicalize(const Level& level, const N2Label& label);

// [Pi.]NL[q](r,s) for relaxed, [Pi.]ND(r,p) for discrete.
std::string render(const N2Label& label);
N2Label parse_n2_label(std::string_view text, const Level& level);
nlohmann::json to_json(const N2Label& label, const Level& level);

}  // namespace fk
