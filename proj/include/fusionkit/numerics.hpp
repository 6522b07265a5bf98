#pragma once

#include "fusionkit/labels.hpp"

#include <array>
#include <complex>
#include <functional>
#include <string>

namespace fk::num {

using cplx = std::complex<double>;

struct QuadratureConfig {
  unsigned max_subdivisions = 15;  // Gauss-Kronrod bisection depth / tanh-sinh refinements
  double abs_tol = 1e-13;
  double rel_tol = 1e-10;
  int contour_segments = 4;  // arcs per Pochhammer loop
};

// Throws Pole at nonpositive integers. Real arguments go through std::tgamma;
// complex ones through Lanczos (g=7, 9 terms) with reflection for Re z < 1/2.
cplx gamma_fn(cplx z);
// 1/Gamma, entire: exactly 0 at the poles of Gamma.
cplx rgamma(cplx z);

// (1-e^{2 pi i x})(1-e^{2 pi i y}) B(x,y).
cplx pochhammer_beta(cplx x, cplx y);
// Integral of t^{x-1}(1-t)^{y-1} over the commutator contour built from circles of radius 1/2
// about 1 and 0 (order: 1 ccw, 0 ccw, 1 cw, 0 cw), base point 1/2 on the principal branch.
cplx pochhammer_contour_quadrature(cplx x, cplx y, const QuadratureConfig& cfg = {});

// Closed Selberg form for n=2, with the w-power 2(alpha+beta+gamma+1) that scaling requires.
cplx selberg2_formula(double w, cplx alpha, cplx beta, cplx gamma);

// Integrals of z1^a z2^a (w-z1)^b (w-z2)^b |z1-z2|^{2g} f(z1,z2) over w>z1>z2>0 and over [0,w]^2.
using Integrand = std::function<double(double, double)>;
double simplex_integral(const Integrand& f, double alpha, double beta, double gamma, double w,
                        const QuadratureConfig& cfg = {});
double square_integral(const Integrand& f, double alpha, double beta, double gamma, double w,
                       const QuadratureConfig& cfg = {});

struct SelbergNormalization {
  double formula;
  double simplex;
  double square;
  double rel_err_simplex_x2;  // |formula - 2*simplex| / |formula|
  double rel_err_square;      // |formula - square| / |formula|
  double constant;            // formula / simplex
  std::string matched;        // "square", "simplex" or "none" at the given tolerance
};

SelbergNormalization resolve_selberg_normalization(double alpha, double beta, double gamma, double w, double tol,
                                                   const QuadratureConfig& cfg = {});

cplx c_lambda_eps(const Level& level, cplx lambda, cplx eps);

// 2F1 by its series for |x| < 1 (switching to the 1-x expansion near 1 when c-a-b is not an
// integer) and by Gauss's formula at x = 1. Throws Pole when c is a nonpositive integer.
cplx hyp2f1(cplx a, cplx b, cplx c, cplx x);
// 2F1 / Gamma(c), defined for every c.
cplx hyp2f1_regularized(cplx a, cplx b, cplx c, cplx x);

struct Comparison {
  cplx lhs;
  cplx rhs;
  double abs_err;
  double rel_err;
};

Comparison compare(cplx lhs, cplx rhs);

// 2F1(2-3t, 1-t; 2-2t; x) against its expansion about x = 1. When 2-2t is a nonpositive
// integer both sides are divided by Gamma(2-2t) and the right side is taken as a limit in t.
Comparison connection_formula(const Level& level, double x);

// Psi(z) for |z1|>|z2|>|z3|>|z4| with principal branches. Uses the regularized 2F1 when 2-2t
// is a nonpositive integer.
cplx bpz_four_point(const std::array<cplx, 4>& z, const Level& level);

// G(x) = x^a (1-x)^a 2F1~(2-3t, 1-t; 2-2t; x), a = 1-3t/2, and its first two derivatives.
std::array<double, 3> bpz_solution(const Level& level, double x);

struct OdeResidual {
  double residual;  // absolute value of the left-hand side
  double scale;     // sum of the absolute values of its four terms
  double relative() const { return scale == 0 ? residual : residual / scale; }
};

OdeResidual bpz_residual(const Level& level, double x);
// Same with central differences of step h in place of the analytic derivatives.
OdeResidual bpz_residual_fd(const Level& level, double x, double h);

// (sin^2(pi t) + sin(3 pi t) sin(pi t)) / sin^2(2 pi t), taken as a limit where sin(2 pi t) = 0.
double sin_identity(double t);

enum class RigidityExclusion { Integers, EvenIntegers };

// I_1[1]((u-v l)/2v - 1, (u+v l)/2v - 1, 1-t) * I_1[1]((u+v l)/2v - 1, (-u-v l)/2v + 1, 1-t).
// Throws Pole when lambda - 3t lies in the excluded set.
cplx rigidity_leading_constant(const Level& level, cplx lambda,
                               RigidityExclusion exclusion = RigidityExclusion::Integers);

// Exponents (X, Y) of y^X (1-y)^Y in the Pochhammer integral of the matrix element.
std::pair<double, double> intertwiner_exponents(const Level& level, int r, int s, int tau, const Rational& p,
                                                const Rational& pp);
double intertwiner_w_exponent(const Level& level, int r, int s, int tau);
// True when X or Y is an integer, so that the element vanishes through 1 - e^{2 pi i X} or 1 - e^{2 pi i Y}.
bool intertwiner_prefactor_vanishes(const Level& level, int r, int s, int tau, const Rational& p, const Rational& pp);

// w^{(-1-tau r+tau s t)/2} e^{pi i Y} (1-e^{2 pi i X})(1-e^{2 pi i Y}) G(X+1)G(Y+1)/G(X+Y+2).
// Exactly 0 when the prefactor vanishes; Pole when that coincides with a Gamma pole.
cplx intertwiner_matrix_element(const Level& level, int r, int s, int tau, const Rational& p, const Rational& pp,
                                double w);
// The same element with the Pochhammer integral done by contour quadrature.
cplx intertwiner_matrix_element_quadrature(const Level& level, int r, int s, int tau, const Rational& p,
                                           const Rational& pp, double w, const QuadratureConfig& cfg = {});

}  // namespace fk::num
