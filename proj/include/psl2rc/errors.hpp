#pragma once

#include <stdexcept>
#include <string>

namespace psl2rc {

enum class Errc {
  NotPrime,
  DegreeZero,
  CapExceeded,
  FieldMismatch,
  DivideByZero,
  EvenCharacteristic,
  NotPrimePower,
  ConductorOverflow,
  NotCoprime,
  IndexOutOfRange,
  OracleCapExceeded,
  NoCaseMatched,
  InvalidMatrix,
};

const char* errc_name(Errc code);

/// Library-wide exception type carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::DegreeZero: return "DegreeZero";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DivideByZero: return "DivideByZero";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::NotPrimePower: return "NotPrimePower";
    case Errc::ConductorOverflow: return "ConductorOverflow";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::OracleCapExceeded: return "OracleCapExceeded";
    case Errc::NoCaseMatched: return "NoCaseMatched";
    case Errc::InvalidMatrix: return "InvalidMatrix";
  }
  return "UnknownError";
}

}  // namespace psl2rc
