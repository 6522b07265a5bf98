#include "fusionkit/numerics.hpp"

#include "fusionkit/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

namespace fk::num {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

bool is_nonpositive_integer(cplx z) {
  if (z.imag() != 0.0) return false;
  const double r = std::round(z.real());
  return r <= 0 && std::abs(z.real() - r) < 1e-12;
}

bool is_integer(cplx z) {
  return z.imag() == 0.0 && std::abs(z.real() - std::round(z.real())) < 1e-12;
}

// 1 - e^{2 pi i x}, exactly zero at integers.
cplx one_minus_phase(cplx x) {
  if (is_integer(x)) return 0.0;
  return 1.0 - std::exp(2 * kPi * kI * x);
}

std::string show(cplx z) {
  if (z.imag() == 0.0) return std::to_string(z.real());
  return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
}

cplx lanczos(cplx z) {
  static constexpr double g = 7.0;
  static constexpr double p[] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                                 771.32342877765313,      -176.61502916214059,   12.507343278686905,
                                 -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  cplx x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + static_cast<double>(i));
  const cplx t = z + g + 0.5;
  return std::sqrt(2 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

double dbl(const Rational& x) { return to_double(x); }

cplx pochhammer(cplx a, int n) {
  cplx out = 1.0;
  for (int i = 0; i < n; ++i) out *= a + static_cast<double>(i);
  return out;
}

cplx series_2f1(cplx a, cplx b, cplx c, cplx x) {
  cplx sum = 1.0;
  cplx term = 1.0;
  int small = 0;
  for (int n = 0; n < 200000; ++n) {
    term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) * x;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small == 3) return sum;
    } else {
      small = 0;
    }
  }
  fail(ErrorKind::Quadrature, "2F1 series did not converge at x=" + show(x));
}

// Complex-valued Gauss-Kronrod over [a,b].
template <class F>
cplx gk(F f, double a, double b, const QuadratureConfig& cfg) {
  double err = 0;
  double l1 = 0;
  cplx val = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, cfg.max_subdivisions,
                                                                           cfg.rel_tol, &err, &l1);
  if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
    fail(ErrorKind::Quadrature, "non-finite Gauss-Kronrod result");
  if (err > std::max(cfg.abs_tol, 1e3 * cfg.rel_tol * std::max(std::abs(val), l1 * 1e-3)))
    fail(ErrorKind::Quadrature, "Gauss-Kronrod error estimate " + std::to_string(err) + " above tolerance");
  return val;
}

}  // namespace

cplx gamma_fn(cplx z) {
  if (is_nonpositive_integer(z)) fail(ErrorKind::Pole, "Gamma has a pole at " + show(z));
  if (z.imag() == 0.0) return std::tgamma(z.real());
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * lanczos(1.0 - z));
  return lanczos(z);
}

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return 1.0 / gamma_fn(z);
}

cplx pochhammer_beta(cplx x, cplx y) {
  const cplx px = one_minus_phase(x);
  const cplx py = one_minus_phase(y);
  // At nonpositive integers a vanishing prefactor meets a Gamma pole; that limit is not taken here.
  if (is_nonpositive_integer(x) || is_nonpositive_integer(y))
    fail(ErrorKind::Pole, "B(x,y) has a pole at x=" + show(x) + ", y=" + show(y));
  return px * py * gamma_fn(x) * gamma_fn(y) * rgamma(x + y);
}

cplx pochhammer_contour_quadrature(cplx x, cplx y, const QuadratureConfig& cfg) {
  struct Loop {
    int center;
    int dir;
  };
  static constexpr Loop loops[] = {{1, 1}, {0, 1}, {1, -1}, {0, -1}};
  const double log_half = std::log(0.5);
  int k0 = 0;  // sheets of log t and log(1-t) relative to the principal branch at t=1/2
  int k1 = 0;
  cplx total = 0.0;
  const int segs = std::max(1, cfg.contour_segments);
  for (const auto& [center, dir] : loops) {
    auto f = [&, center = center, dir = dir](double th) -> cplx {
      cplx t, dt, lt, l1t;
      if (center == 1) {
        const cplx e = std::exp(kI * (kPi + dir * th));
        t = 1.0 + 0.5 * e;
        dt = 0.5 * kI * double(dir) * e;
        lt = std::log(t) + 2 * kPi * kI * double(k0);
        l1t = log_half + kI * (dir * th) + 2 * kPi * kI * double(k1);
      } else {
        const cplx e = std::exp(kI * (dir * th));
        t = 0.5 * e;
        dt = 0.5 * kI * double(dir) * e;
        lt = log_half + kI * (dir * th) + 2 * kPi * kI * double(k0);
        l1t = std::log(1.0 - t) + 2 * kPi * kI * double(k1);
      }
      return std::exp((x - 1.0) * lt + (y - 1.0) * l1t) * dt;
    };
    for (int i = 0; i < segs; ++i) total += gk(f, 2 * kPi * i / segs, 2 * kPi * (i + 1) / segs, cfg);
    (center == 1 ? k1 : k0) += dir;
  }
  return total;
}

cplx selberg2_formula(double w, cplx a, cplx b, cplx g) {
  if (!(w > 0)) fail(ErrorKind::InvalidArgument, "w must be positive");
  const cplx wpow = std::exp(2.0 * (a + b + g + 1.0) * std::log(w));
  return wpow * gamma_fn(1.0 + 2.0 * g) * gamma_fn(1.0 + a) * gamma_fn(1.0 + a + g) * gamma_fn(1.0 + b) *
         gamma_fn(1.0 + b + g) * rgamma(1.0 + g) * rgamma(2.0 + a + b + g) * rgamma(2.0 + a + b + 2.0 * g);
}

namespace {

double checked(double val, double err, double l1, const char* what) {
  if (!std::isfinite(val)) fail(ErrorKind::Quadrature, std::string(what) + ": non-finite result");
  if (err > 1e-6 * l1 && err > 1e-200)
    fail(ErrorKind::Quadrature, std::string(what) + ": error estimate " + std::to_string(err) + " too large");
  return val;
}

// Distance of a tanh-sinh abscissa x on [a,b] to b, using the complement when it is supplied.
double to_right(double x, double xc, double b) { return xc > 0 ? xc : b - x; }

struct Params {
  double a, b, g, w;
};

// Integral over 0 < z2 < z1 with z2 = z1 s.
double below(const Integrand& f, const Params& P, double z1, double w_minus_z1,
             boost::math::quadrature::tanh_sinh<double>& ts, const QuadratureConfig& cfg) {
  auto g = [&](double s, double sc) {
    const double one_minus_s = to_right(s, sc, 1.0);
    return std::pow(s, P.a) * std::pow(one_minus_s, 2 * P.g) * std::pow(w_minus_z1 + z1 * one_minus_s, P.b) *
           f(z1, z1 * s);
  };
  double err = 0, l1 = 0;
  const double val = checked(ts.integrate(g, 0.0, 1.0, cfg.rel_tol, &err, &l1), err, l1, "inner integral");
  return std::pow(z1, 1 + 2 * P.a + 2 * P.g) * std::pow(w_minus_z1, P.b) * val;
}

// Integral over z1 < z2 < w with z2 = z1 + (w-z1) s.
double above(const Integrand& f, const Params& P, double z1, double w_minus_z1,
             boost::math::quadrature::tanh_sinh<double>& ts, const QuadratureConfig& cfg) {
  auto g = [&](double s, double sc) {
    const double one_minus_s = to_right(s, sc, 1.0);
    const double z2 = z1 + w_minus_z1 * s;
    return std::pow(z2, P.a) * std::pow(one_minus_s, P.b) * std::pow(s, 2 * P.g) * f(z1, z2);
  };
  double err = 0, l1 = 0;
  const double val = checked(ts.integrate(g, 0.0, 1.0, cfg.rel_tol, &err, &l1), err, l1, "inner integral");
  return std::pow(z1, P.a) * std::pow(w_minus_z1, 1 + 2 * P.b + 2 * P.g) * val;
}

template <class Row>
double outer_integral(Row row, const Params& P, const QuadratureConfig& cfg) {
  if (!(P.w > 0)) fail(ErrorKind::InvalidArgument, "w must be positive");
  if (P.a <= -1 || P.b <= -1 || 2 * P.g <= -1)
    fail(ErrorKind::Quadrature, "the integral diverges: need alpha > -1, beta > -1, 2 gamma > -1");
  boost::math::quadrature::tanh_sinh<double> ts(cfg.max_subdivisions);
  auto g = [&](double z1, double zc) { return row(z1, to_right(z1, zc, P.w)); };
  double err = 0, l1 = 0;
  try {
    return checked(ts.integrate(g, 0.0, P.w, cfg.rel_tol, &err, &l1), err, l1, "outer integral");
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::Quadrature, e.what());
  }
}

}  // namespace

double simplex_integral(const Integrand& f, double alpha, double beta, double gamma, double w,
                        const QuadratureConfig& cfg) {
  const Params P{alpha, beta, gamma, w};
  boost::math::quadrature::tanh_sinh<double> ts(cfg.max_subdivisions);
  return outer_integral([&](double z1, double wz) { return below(f, P, z1, wz, ts, cfg); }, P, cfg);
}

double square_integral(const Integrand& f, double alpha, double beta, double gamma, double w,
                       const QuadratureConfig& cfg) {
  const Params P{alpha, beta, gamma, w};
  boost::math::quadrature::tanh_sinh<double> ts(cfg.max_subdivisions);
  return outer_integral(
      [&](double z1, double wz) { return below(f, P, z1, wz, ts, cfg) + above(f, P, z1, wz, ts, cfg); }, P, cfg);
}

SelbergNormalization resolve_selberg_normalization(double alpha, double beta, double gamma, double w, double tol,
                                                   const QuadratureConfig& cfg) {
  auto one = [](double, double) { return 1.0; };
  SelbergNormalization r{};
  r.formula = selberg2_formula(w, alpha, beta, gamma).real();
  r.simplex = simplex_integral(one, alpha, beta, gamma, w, cfg);
  r.square = square_integral(one, alpha, beta, gamma, w, cfg);
  r.rel_err_simplex_x2 = std::abs(r.formula - 2 * r.simplex) / std::abs(r.formula);
  r.rel_err_square = std::abs(r.formula - r.square) / std::abs(r.formula);
  r.constant = r.formula / r.simplex;
  if (r.rel_err_square < tol && r.rel_err_simplex_x2 < tol)
    r.matched = "square";
  else if (std::abs(r.formula - r.simplex) / std::abs(r.formula) < tol)
    r.matched = "simplex";
  else
    r.matched = "none";
  return r;
}

cplx c_lambda_eps(const Level& level, cplx lambda, cplx eps) {
  const double t = dbl(level.t());
  const double u = double(level.u());
  const double v = double(level.v());
  const double s1 = std::sin(kPi * t);
  const double s2 = std::sin(2 * kPi * t);
  if (std::abs(s1 * s2) < 1e-12)
    fail(ErrorKind::Pole, "sin(pi t) sin(2 pi t) vanishes at t=" + level.str());
  const cplx le = lambda + eps;
  const cplx pref = std::exp(3 * kPi * kI * t) / (4 * s1 * s2);
  const cplx gam = gamma_fn(1 - t) * rgamma(t - 1) * rgamma(3 - 2 * t);
  const cplx a = (u - le * v) / (2 * v) - 1.0;
  const cplx b = (u + le * v) / (2 * v) - 1.0;
  return pref * gam * selberg2_formula(1.0, a, b, 1 - t);
}

cplx hyp2f1(cplx a, cplx b, cplx c, cplx x) {
  if (is_nonpositive_integer(c)) fail(ErrorKind::Pole, "2F1 with c=" + show(c) + " a nonpositive integer");
  if (x == 1.0) {
    if ((c - a - b).real() <= 0) fail(ErrorKind::Pole, "2F1 diverges at x=1 unless Re(c-a-b)>0");
    return gamma_fn(c) * gamma_fn(c - a - b) * rgamma(c - a) * rgamma(c - b);
  }
  if (std::abs(x) <= 0.9) return series_2f1(a, b, c, x);
  const cplx d = c - a - b;
  if (std::abs(1.0 - x) <= 0.9 && !is_integer(d)) {
    const cplx y = 1.0 - x;
    cplx out = 0.0;
    cplx c1 = gamma_fn(c) * gamma_fn(d) * rgamma(c - a) * rgamma(c - b);
    if (c1 != 0.0) out += c1 * series_2f1(a, b, 1.0 - d, y);
    cplx c2 = gamma_fn(c) * gamma_fn(-d) * rgamma(a) * rgamma(b);
    if (c2 != 0.0) out += c2 * std::pow(y, d) * series_2f1(c - a, c - b, 1.0 + d, y);
    return out;
  }
  if (std::abs(x) < 1.0) return series_2f1(a, b, c, x);
  fail(ErrorKind::Quadrature, "2F1 outside the implemented domain |x|<1, x=" + show(x));
}

cplx hyp2f1_regularized(cplx a, cplx b, cplx c, cplx x) {
  if (is_nonpositive_integer(c)) {
    const int m = static_cast<int>(-std::round(c.real()));
    double fact = 1;
    for (int i = 2; i <= m + 1; ++i) fact *= i;
    return pochhammer(a, m + 1) * pochhammer(b, m + 1) / fact * std::pow(x, double(m + 1)) *
           hyp2f1(a + double(m + 1), b + double(m + 1), double(m + 2), x);
  }
  return hyp2f1(a, b, c, x) * rgamma(c);
}

Comparison compare(cplx lhs, cplx rhs) {
  Comparison c{lhs, rhs, std::abs(lhs - rhs), 0.0};
  const double m = std::max(std::abs(lhs), std::abs(rhs));
  c.rel_err = m == 0 ? 0.0 : c.abs_err / m;
  return c;
}

namespace {

// Right-hand side of the connection formula divided by Gamma(2-2t).
cplx connection_rhs_regularized(double t, double x) {
  const double a = 2 - 3 * t, b = 1 - t, c = 2 - 2 * t;
  const cplx k1 = gamma_fn(2 * t - 1) * rgamma(t) * rgamma(1 - t);
  const cplx k2 = gamma_fn(1 - 2 * t) * rgamma(2 - 3 * t) * rgamma(1 - t);
  cplx rhs = k1 * hyp2f1(a, b, c, 1 - x);
  if (k2 != 0.0) rhs += std::pow(1 - x, 2 * t - 1) * k2 * hyp2f1(t, 1 - t, 2 * t, 1 - x);
  return rhs;
}

}  // namespace

Comparison connection_formula(const Level& level, double x) {
  const double t = dbl(level.t());
  const double a = 2 - 3 * t;
  const double b = 1 - t;
  const double c = 2 - 2 * t;
  if (is_nonpositive_integer(c)) {
    // Both coefficients have cancelling poles here. Compare 2F1/Gamma(c) with the limit in t
    // of the regularized right side: symmetric differences in t, then one Richardson step.
    const double h = 1e-3;
    auto g = [&](double d) { return 0.5 * (connection_rhs_regularized(t + d, x) + connection_rhs_regularized(t - d, x)); };
    return compare(hyp2f1_regularized(a, b, c, x), (4.0 * g(h) - g(2 * h)) / 3.0);
  }
  const cplx lhs = hyp2f1(a, b, c, x);
  const cplx k1 = gamma_fn(2 - 2 * t) * gamma_fn(2 * t - 1) * rgamma(t) * rgamma(1 - t);
  const cplx k2 = gamma_fn(2 - 2 * t) * gamma_fn(1 - 2 * t) * rgamma(2 - 3 * t) * rgamma(1 - t);
  cplx rhs = k1 * hyp2f1(a, b, c, 1 - x);
  if (k2 != 0.0) rhs += std::pow(1 - x, 2 * t - 1) * k2 * hyp2f1(t, 1 - t, 2 * t, 1 - x);
  return compare(lhs, rhs);
}

cplx bpz_four_point(const std::array<cplx, 4>& z, const Level& level) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (z[i] == z[j]) fail(ErrorKind::InvalidArgument, "coincident insertion points");
  for (int i = 0; i < 3; ++i)
    if (!(std::abs(z[i]) > std::abs(z[i + 1])))
      fail(ErrorKind::InvalidArgument, "points must satisfy |z1|>|z2|>|z3|>|z4|");
  const double t = dbl(level.t());
  auto d = [&](int i, int j) { return z[i - 1] - z[j - 1]; };
  const cplx x = d(1, 4) * d(2, 3) / (d(1, 3) * d(2, 4));
  const cplx pref = std::pow(d(1, 2) * d(3, 4) * d(1, 4) * d(2, 3) / (d(1, 3) * d(2, 4)), 1 - 1.5 * t);
  const cplx c = 2 - 2 * t;
  const cplx f = is_nonpositive_integer(c) ? hyp2f1_regularized(2 - 3 * t, 1 - t, c, x) : hyp2f1(2 - 3 * t, 1 - t, c, x);
  return pref * f;
}

std::array<double, 3> bpz_solution(const Level& level, double x) {
  if (!(x > 0 && x < 1)) fail(ErrorKind::InvalidArgument, "BPZ solution is evaluated on 0<x<1");
  const double t = dbl(level.t());
  const double e = 1 - 1.5 * t;
  const double A = 2 - 3 * t;
  const double B = 1 - t;
  const double C = 2 - 2 * t;
  const double f0 = hyp2f1_regularized(A, B, C, x).real();
  const double f1 = A * B * hyp2f1_regularized(A + 1, B + 1, C + 1, x).real();
  const double f2 = A * (A + 1) * B * (B + 1) * hyp2f1_regularized(A + 2, B + 2, C + 2, x).real();
  const double p = std::pow(x, e) * std::pow(1 - x, e);
  const double l = e / x - e / (1 - x);
  const double p1 = p * l;
  const double p2 = p * (l * l - e / (x * x) - e / ((1 - x) * (1 - x)));
  return {p * f0, p1 * f0 + p * f1, p2 * f0 + 2 * p1 * f1 + p * f2};
}

namespace {

OdeResidual apply_bpz(double t, double x, double g, double g1, double g2) {
  const double h = 0.75 * t - 0.5;
  const double terms[] = {g2, t * (1 / (x - 1) + 1 / x) * g1, -h * t * (1 / (x * x) + 1 / ((x - 1) * (x - 1))) * g,
                          -2 * h * t * (1 / x - 1 / (x - 1)) * g};
  OdeResidual r{0, 0};
  double sum = 0;
  for (double v : terms) {
    sum += v;
    r.scale += std::abs(v);
  }
  r.residual = std::abs(sum);
  return r;
}

}  // namespace

OdeResidual bpz_residual(const Level& level, double x) {
  const auto g = bpz_solution(level, x);
  return apply_bpz(dbl(level.t()), x, g[0], g[1], g[2]);
}

OdeResidual bpz_residual_fd(const Level& level, double x, double h) {
  const double gm = bpz_solution(level, x - h)[0];
  const double g0 = bpz_solution(level, x)[0];
  const double gp = bpz_solution(level, x + h)[0];
  return apply_bpz(dbl(level.t()), x, g0, (gp - gm) / (2 * h), (gp - 2 * g0 + gm) / (h * h));
}

double sin_identity(double t) {
  const double s1 = std::sin(kPi * t);
  const double s2 = std::sin(2 * kPi * t);
  const double s3 = std::sin(3 * kPi * t);
  if (std::abs(s2) > 1e-6) return (s1 * s1 + s3 * s1) / (s2 * s2);
  // Numerator and denominator both vanish to second order: ratio of second derivatives.
  const double c1 = std::cos(kPi * t);
  const double c3 = std::cos(3 * kPi * t);
  const double pi2 = kPi * kPi;
  const double num = 2 * pi2 * std::cos(2 * kPi * t) - 10 * pi2 * s3 * s1 + 6 * pi2 * c3 * c1;
  const double den = 8 * pi2 * std::cos(4 * kPi * t);
  return num / den;
}

cplx rigidity_leading_constant(const Level& level, cplx lambda, RigidityExclusion exclusion) {
  const double t = dbl(level.t());
  const double u = double(level.u());
  const double v = double(level.v());
  const cplx d = lambda - 3 * t;
  const bool excluded = exclusion == RigidityExclusion::Integers
                            ? is_integer(d)
                            : is_integer(d / 2.0);
  if (excluded) fail(ErrorKind::Pole, "lambda - 3t = " + show(d) + " lies in the excluded set");
  const cplx a1 = (u - v * lambda) / (2 * v) - 1.0;
  const cplx b1 = (u + v * lambda) / (2 * v) - 1.0;
  const cplx a2 = (u + v * lambda) / (2 * v) - 1.0;
  const cplx b2 = (-u - v * lambda) / (2 * v) + 1.0;
  return selberg2_formula(1.0, a1, b1, 1 - t) * selberg2_formula(1.0, a2, b2, 1 - t);
}

std::pair<double, double> intertwiner_exponents(const Level& level, int r, int s, int tau, const Rational& p,
                                                const Rational& pp) {
  if (tau != 1 && tau != -1) fail(ErrorKind::InvalidArgument, "tau must be +1 or -1");
  const double t = dbl(level.t());
  const double X = (1 + dbl(pp)) * (t / 2 - 1) + (1 - tau * r - t * (1 - tau * s)) / 2.0;
  const double Y = (t / 2 - 1) * (1 + dbl(p));
  return {X, Y};
}

bool intertwiner_prefactor_vanishes(const Level& level, int r, int s, int tau, const Rational& p, const Rational& pp) {
  const auto [X, Y] = intertwiner_exponents(level, r, s, tau, p, pp);
  return is_integer(X) || is_integer(Y);
}

double intertwiner_w_exponent(const Level& level, int r, int s, int tau) {
  return (-1 - tau * r + tau * s * dbl(level.t())) / 2.0;
}

cplx intertwiner_matrix_element(const Level& level, int r, int s, int tau, const Rational& p, const Rational& pp,
                                double w) {
  const auto [X, Y] = intertwiner_exponents(level, r, s, tau, p, pp);
  const cplx pref = std::pow(w, intertwiner_w_exponent(level, r, s, tau)) * std::exp(kPi * kI * Y);
  const cplx px = one_minus_phase(X);
  const cplx py = one_minus_phase(Y);
  if (px == 0.0 || py == 0.0) {
    if (X <= -1 || Y <= -1) fail(ErrorKind::Pole, "vanishing prefactor meets a Gamma pole");
    return 0.0;
  }
  return pref * px * py * gamma_fn(X + 1) * gamma_fn(Y + 1) * rgamma(X + Y + 2);
}

cplx intertwiner_matrix_element_quadrature(const Level& level, int r, int s, int tau, const Rational& p,
                                           const Rational& pp, double w, const QuadratureConfig& cfg) {
  const auto [X, Y] = intertwiner_exponents(level, r, s, tau, p, pp);
  const cplx pref = std::pow(w, intertwiner_w_exponent(level, r, s, tau)) * std::exp(kPi * kI * Y);
  return pref * pochhammer_contour_quadrature(X + 1, Y + 1, cfg);
}

}  // namespace fk::num
