#ifndef FSA_ERRORS_HPP
#define FSA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fsa {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Kernel evaluated at a point where it is singular (e.g. r = 0 for 1/r).
class SingularKernelError : public Error {
 public:
  using Error::Error;
};

/// A numerical quadrature failed to reach its convergence target.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& msg, double achieved)
      : Error(msg), achieved_residual(achieved) {}
  double achieved_residual;
};

/// No split parameter in the probed range satisfies the tail tolerance.
class NoFeasibleEpsError : public Error {
 public:
  using Error::Error;
};

/// Windowed kernels require the window upper edge b = 3*eps to stay below R0.
class WindowEdgeError : public Error {
 public:
  using Error::Error;
};

/// Two fields (or a plan and a field) live on different grids.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// A field or plan file is missing its magic, version, or payload bytes.
class MalformedFileError : public Error {
 public:
  using Error::Error;
};

/// Imaginary residue after an inverse FFT exceeded the real-output bound;
/// signals an index-map bug rather than roundoff.
class ImaginaryResidueError : public Error {
 public:
  using Error::Error;
};

}  // namespace fsa

#endif  // FSA_ERRORS_HPP
