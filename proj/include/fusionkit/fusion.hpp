#pragma once

#include "fusionkit/labels.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fk {

enum class FusionStatus { Semisimple, NonSemisimple, GrothendieckOnly };

const char* status_name(FusionStatus status);

using LabelMultiset = std::map<Sl2Label, int>;

struct FusionDecomposition {
  LabelMultiset terms;
  FusionStatus status = FusionStatus::Semisimple;

  int total() const;
  bool operator==(const FusionDecomposition&) const = default;
};

// N^{(a) b}_{c,d}; zero outside 0 <= b,c,d <= a-1.
int n_coeff(long a, long b, long c, long d);

FusionDecomposition fuse_LL(const Level& level, int r, int r2);
FusionDecomposition fuse_LE(const Level& level, int r, const WeightClass& mu2, int r2, int s2);
FusionDecomposition fuse_EE(const Level& level, const WeightClass& mu, int r, int s,
                            const WeightClass& mu2, int r2, int s2);

// Module-level product of two labels, using sigma^l M x N = sigma^l (M x N).
FusionDecomposition fuse(const Level& level, const Sl2Label& a, const Sl2Label& b);

LabelMultiset grothendieck_image(const Level& level, const Sl2Label& label);
LabelMultiset grothendieck_image(const Level& level, const LabelMultiset& terms);

// Class of a x b in the Grothendieck ring, as a multiset of simple labels.
LabelMultiset fuse_grothendieck(const Level& level, const Sl2Label& a, const Sl2Label& b);
LabelMultiset fuse_grothendieck(const Level& level, const LabelMultiset& a, const LabelMultiset& b);

int multiset_size(const LabelMultiset& m);
std::string render(const LabelMultiset& m);
nlohmann::json to_json(const FusionDecomposition& d, const Level& level);

// E-type summands (with multiplicity) of (E_{nu;1,1} x E_{mu;1,1}) x E_{-mu;1,1}.
int triple_product_summands(const Level& level, const WeightClass& nu, const WeightClass& mu);

struct RingAxiomReport {
  std::vector<std::string> violations;
  long pairs_checked = 0;
  long triples_checked = 0;
  long triples_skipped = 0;
  bool ok() const { return violations.empty(); }
};

// Unit, commutativity and flow-equivariance over L_r, sigma^l D^+ (l in {-1,0,1}) and
// sigma^l E_{mu;r,s} for every sampled mu; then Grothendieck associativity on
// `triples` random E triples drawn from the weights with the given seed.
RingAxiomReport check_ring_axioms(const Level& level, const std::vector<WeightClass>& weights,
                                  int triples, std::uint64_t seed);

}  // namespace fk
