#pragma once

#include <stdexcept>
#include <string>

namespace fockq {

// Failure modes surfaced by the library.  Every throw site names one of
// these codes so callers (CLI, bindings, tests) can dispatch without
// string-matching the message.
enum class ErrorCode {
  NonSquare,
  NanEntries,
  ComplexEntries,
  DimensionMismatch,
  OddDimension,
  SpeciesFormMismatch,
  MissingEnergyForm,
  WrongSpecies,
  JNotAntiInvolution,
  JNotCompatible,
  DegenerateGenerator,
  StabilityFailure,
  EigenspaceDimensionMismatch,
  NearZeroEigenvalue,
  NonHermitianField,
  SizeGuard,
  SymmetryViolation,
  LiftMismatch,
  ChiSquaredMinusOne,
  NotProjectivelyCommuting,
  NotCanonical,
  ConfigError,
  IoError,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace fockq
