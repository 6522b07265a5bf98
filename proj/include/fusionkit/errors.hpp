#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fk {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  NonGeneric,
  NonGenericOutput,
  DegenerateUndetermined,
  AmbiguousBranch,
  UnsupportedPair,
  CosetMismatch,
  FFRUnavailable,
  ReductionSingular,
  Pole,
  Quadrature,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorKind::Parse, what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace fk
