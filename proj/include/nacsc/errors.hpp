#ifndef NACSC_ERRORS_HPP
#define NACSC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nacsc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file (carries line/column context in the message).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Shapes of paired inputs disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Argument outside its valid range.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Iterative solver ran out of sweeps; carries the residual it reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, double achieved_residual)
      : Error(msg), residual(achieved_residual) {}
  double residual;
};

// A community fits neither the dense nor the sparse regime.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

// Oracle matrix has rank below the number of communities.
class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace nacsc

#endif
