#pragma once

#include <stdexcept>
#include <string>

namespace endo {

enum class ErrorKind {
  NotEisenstein,
  DyadicRamifiedUnsupported,
  ZeroValuation,
  PrecisionExhausted,
  DepthTooSmall,
  NotInFixedField,
  DivisionByZero,
  NonSymmetric,
  Degenerate,
  IndexMismatch,
  UnsupportedCase,
  WildInputUnsupported,
  PoleAtMinusOne,
  PoleAtOne,
  ParseError,
  MatchFailure,
  InvalidArgument,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

  // True for failures of exact arithmetic rather than of the input's shape.
  bool arithmetic() const {
    return kind_ == ErrorKind::PrecisionExhausted || kind_ == ErrorKind::ZeroValuation ||
           kind_ == ErrorKind::DivisionByZero || kind_ == ErrorKind::NotInFixedField ||
           kind_ == ErrorKind::PoleAtMinusOne || kind_ == ErrorKind::PoleAtOne ||
           kind_ == ErrorKind::Degenerate;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& what) { throw Error(k, what); }

inline void require(bool cond, ErrorKind k, const std::string& what) {
  if (!cond) fail(k, what);
}

}  // namespace endo
