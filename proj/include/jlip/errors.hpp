#ifndef JLIP_ERRORS_HPP
#define JLIP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jlip {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Inputs outside a function's domain (invalid parameters, boundary points,
// nonpositive gauge values).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A running product or sum left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A series exhausted its term budget before the stopping rule fired.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

// The requested series value does not exist (e.g. 2F1 at x=1 with c-a-b <= 0).
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// A finite-difference stencil would sample outside the map's domain.
class StencilError : public Error {
 public:
  using Error::Error;
};

// Step size too large for the requested evaluation point.
class StepError : public Error {
 public:
  using Error::Error;
};

// An audit precondition certificate did not hold.
class CertificateError : public Error {
 public:
  using Error::Error;
};

// A map left the expected range (|f(z)| >= 1 on an audited node).
class RangeError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; message names the offending field.
class LoadError : public Error {
 public:
  using Error::Error;
};

}  // namespace jlip

#endif  // JLIP_ERRORS_HPP
