#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace opmeans {

// Six significant digits, for numbers quoted in error messages.
inline std::string format_value(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Base of every error raised by the library. Each subclass carries the
// numeric witness that triggered it so callers can report it verbatim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double residual, int sweeps)
      : Error(what), residual_(residual), sweeps_(sweeps) {}
  double residual() const noexcept { return residual_; }
  int sweeps() const noexcept { return sweeps_; }

 private:
  double residual_;
  int sweeps_;
};

class NotStrictlyPositive : public Error {
 public:
  NotStrictlyPositive(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

class DomainViolation : public Error {
 public:
  DomainViolation(const std::string& what, double value)
      : Error(what), value_(value) {}
  double value() const noexcept { return value_; }

 private:
  double value_;
};

class NotCommuting : public Error {
 public:
  NotCommuting(const std::string& what, double commutator_norm)
      : Error(what), commutator_norm_(commutator_norm) {}
  double commutator_norm() const noexcept { return commutator_norm_; }

 private:
  double commutator_norm_;
};

// Scalar means asked for the complemented variants while some x_i > 1/2.
class PrimedUnavailable : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace opmeans
