#pragma once

#include "fusionkit/fusion.hpp"
#include "fusionkit/labels.hpp"

#include <map>
#include <string>
#include <utility>

namespace fk::coset {

// (mu, h) of sl(2) data -> (q, h) of the N=2 coset.
std::pair<Rational, Rational> sl2_to_n2_weights(const Level& level, const Rational& mu, const Rational& h);

// C^{[i]}_p(sigma^l E_{mu;r,s}) as an N=2 relaxed label; p must lie in mu + l u/v.
N2Label coset_component(const Level& level, const Sl2Label& label, const Rational& p, int i);

using N2Multiset = std::map<N2Label, int>;

// Fusion of relaxed N=2 labels computed through the sl(2) E x E product.
N2Multiset n2_fuse(const Level& level, const N2Label& a, const N2Label& b);
// The same product read off directly from the N=2 decomposition formula.
N2Multiset n2_fuse_formula(const Level& level, const N2Label& a, const N2Label& b);

std::string render(const N2Multiset& m);

enum class Pullback { Psi, PsiGamma };

const char* pullback_name(Pullback p);

// Lattice class alpha (a-b) + beta b, with alpha taken modulo alpha_period.
struct FFRLabel {
  int vir_r = 1;
  int vir_s = 1;
  Rational alpha;
  Rational beta;
  Rational alpha_period;
  Pullback pullback = Pullback::Psi;

  bool operator==(const FFRLabel&) const = default;
};

FFRLabel ffr_label(const Level& level, const Sl2Label& label);

// Inverse of the lattice bookkeeping: (flow, weight class) of the pulled-back module.
std::pair<int, WeightClass> ffr_decode(const Level& level, const FFRLabel& f);

nlohmann::json to_json(const FFRLabel& f);

}  // namespace fk::coset
