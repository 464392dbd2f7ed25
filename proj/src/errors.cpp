#include "dhl/errors.hpp"

namespace dhl {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegenerateSlice: return "DegenerateSlice";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::NumericalUnderflow: return "NumericalUnderflow";
    case ErrorKind::Pole: return "Pole";
    case ErrorKind::InfiniteFiber: return "InfiniteFiber";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::IndeterminateOrbit: return "IndeterminateOrbit";
    case ErrorKind::FitUnstable: return "FitUnstable";
    case ErrorKind::InconclusiveNumerics: return "InconclusiveNumerics";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace dhl
