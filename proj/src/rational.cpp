#include "fusionkit/rational.hpp"

#include "fusionkit/errors.hpp"

#include <cctype>

namespace fk {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::NonGeneric: return "NonGeneric";
    case ErrorKind::NonGenericOutput: return "NonGenericOutput";
    case ErrorKind::DegenerateUndetermined: return "DegenerateUndetermined";
    case ErrorKind::AmbiguousBranch: return "AmbiguousBranch";
    case ErrorKind::UnsupportedPair: return "UnsupportedPair";
    case ErrorKind::CosetMismatch: return "CosetMismatch";
    case ErrorKind::FFRUnavailable: return "FFRUnavailable";
    case ErrorKind::ReductionSingular: return "ReductionSingular";
    case ErrorKind::Pole: return "Pole";
    case ErrorKind::Quadrature: return "QuadratureError";
  }
  return "Error";
}

namespace {

std::size_t scan_digits(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  std::size_t num_end = scan_digits(text, i);
  if (num_end == i) throw ParseError("expected digits in rational '" + std::string(text) + "'", i);
  std::string num(text.substr(0, num_end));
  if (num[0] == '+') num.erase(0, 1);
  if (num_end == text.size()) return Rational(mpz_class(num));
  if (text[num_end] != '/') throw ParseError("unexpected character in rational '" + std::string(text) + "'", num_end);
  std::size_t den_start = num_end + 1;
  std::size_t den_end = scan_digits(text, den_start);
  if (den_end == den_start) throw ParseError("expected denominator digits", den_start);
  if (den_end != text.size()) throw ParseError("trailing characters in rational", den_end);
  mpz_class den(std::string(text.substr(den_start, den_end - den_start)));
  if (den == 0) throw ParseError("zero denominator", den_start);
  Rational r(mpz_class(num), den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_fraction_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational floor_div(const Rational& x, const Rational& m) {
  Rational q = x / m;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

bool is_even_integer(const Rational& x) {
  return is_integer(x) && mpz_even_p(x.get_num_mpz_t());
}

double to_double(const Rational& x) { return x.get_d(); }

}  // namespace fk
