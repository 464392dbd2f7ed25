#pragma once

#include <stdexcept>
#include <string>

namespace dhl {

enum class ErrorKind {
  ZeroVector,
  DomainError,
  DegenerateSlice,
  Indeterminate,
  NumericalUnderflow,
  Pole,
  InfiniteFiber,
  Unsupported,
  NoConvergence,
  Singular,
  IndeterminateOrbit,
  FitUnstable,
  InconclusiveNumerics,
  InvalidArgument,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dhl
