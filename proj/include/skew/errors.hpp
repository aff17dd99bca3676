#pragma once

#include <stdexcept>
#include <string>

namespace skew {

enum class Errc {
  BackendMismatch,
  ArityMismatch,
  ZeroPolynomial,
  DivisionByZero,
  NonCentralCoefficients,
  NonzeroConstantTerm,
  NotMultilinear,
  LambdaZero,
  ExactnessUnavailable,
  NoWitness,
  Singular,
  ShapeMismatch,
  ClusterAmbiguous,
  ShapeTooSmall,
  CentralScalar,
  SearchExhausted,
  BadLevel,
  GenericityExhausted,
  NotNilpotent,
  SolverExhausted,
  NonzeroTrace,
  NotUnitScalar,
  DecomposerIncomplete,
  ExcludedCase,
  MalformedCertificate,
  SingularJacobian,
  Format,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace skew
