#ifndef FSA_QUADRATURE_HPP
#define FSA_QUADRATURE_HPP

#include <functional>

#include "fsa/errors.hpp"

namespace fsa::quad {

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod integration of f over [a, b].
/// Throws QuadratureError if the error estimate exceeds both 100x the
/// relative request and the absolute floor `abs_tol` (callers integrating a
/// small piece of a larger quantity set abs_tol to what is negligible for
/// the whole).
double integrate_adaptive(const Integrand& f, double a, double b,
                          double rel_tol = 1e-12, double abs_tol = 0.0,
                          int max_depth = 15);

/// Composite Gauss-Kronrod integration over [a, b] with panel doubling:
/// the panel count is doubled until two successive composites agree to
/// rel_tol relative to the accumulated L1 mass. `initial_panels` should
/// resolve the fastest oscillation of the integrand.
/// Throws QuadratureError (with the achieved residual) on non-convergence.
double integrate_doubling(const Integrand& f, double a, double b,
                          double rel_tol = 1e-14, int initial_panels = 16,
                          int max_panels = 1 << 20);

}  // namespace fsa::quad

#endif  // FSA_QUADRATURE_HPP
