#pragma once

#include "fusionkit/labels.hpp"
#include "fusionkit/multipoly.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fk::zhu {

// f_n(x,y,z): f_2 = xz, f_3 = x^2 z^2/2 - yz, then the three-term recursion.
MultiPoly f_poly(int n);

std::vector<std::pair<int, int>> K_set(long u, long v);

// Polynomials in (eta, Delta).
MultiPoly p1_poly(const Level& level);
MultiPoly p2_poly(const Level& level);

struct ZhuPoint {
  Rational eta;
  Rational delta;
};

struct ContinuousFamily {
  int r;
  int s;
  ZhuPoint at(const Level& level, const Rational& q) const;
};

struct ZhuSimples {
  std::vector<ZhuPoint> discrete;
  std::vector<ContinuousFamily> continuous;
};

ZhuSimples zhu_simples(const Level& level);

struct ClassificationReport {
  std::vector<std::string> failures;
  int points_checked = 0;
  int discrete_count = 0;
  bool ok() const { return failures.empty(); }
};

ClassificationReport verify_classification(const Level& level, int samples_per_family = 6);

// Bound for the quotient by the singular vector w_{1,1}; q1 = +-1 is rejected.
int hom_upper_bound(const Level& level, const Rational& q1, int r, int s, const Rational& q2,
                    const Rational& q3, const Rational& h3);
// Bound for the unquotiented Verma module.
int verma_hom_bound(const Rational& q1, const Rational& q2, const Rational& q3);

// h_{r,s;q}(t) as a Laurent polynomial in the given variables (t and q named by the caller).
MultiPoly h_symbolic(const std::vector<std::string>& vars, const std::string& t, int r, int s, const MultiPoly& q);

// The four singular-vector images over (x,y,z,q,t).
MultiPoly f1_poly();
MultiPoly fplus_poly();
MultiPoly fminus_poly();
MultiPoly fG_poly();

struct DetIdentityReport {
  std::vector<std::string> failures;
  int symbolic_checks = 0;
  int point_checks = 0;
  bool ok() const { return failures.empty(); }
};

// Symbolic check over Q(t,q,q2,h3) for 1 <= r,s <= max_rs.
DetIdentityReport det_identity_symbolic(int max_rs);
// Exact check at random rational points with t fixed.
DetIdentityReport det_identity_points(int r, int s, const Rational& t, int samples, std::uint64_t seed);
// f^+ and f^- factorizations, checked symbolically for 1 <= r,s <= max_rs.
DetIdentityReport fpm_factorization_check(int max_rs);

}  // namespace fk::zhu
