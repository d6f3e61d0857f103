#ifndef FSA_PARAMS_HPP
#define FSA_PARAMS_HPP

#include <string>

#include "fsa/kernels.hpp"

namespace fsa {

/// Certificate that the split parameter eps satisfies the tail condition
/// for the shortest doubled half-width r0 = min_j 2 L gamma_j.
struct EpsilonReport {
  double eps = 0.0;
  double r0 = 0.0;
  double tol = 0.0;
  double tail_value = 0.0;
  double c = 0.0;  // r0 / eps
};

/// int_{r0}^{r0 + 40 eps} |U - U_eps|(r) r^(d-1) dr. The discarded remainder
/// is bounded by the erfc decay and sits far below 1e-300.
double tail_integral(const KernelDescriptor& k, double eps, double r0);

/// Largest eps in (0, r0/4] with tail_integral <= tol, bisected to two
/// significant digits and rounded down. Throws NoFeasibleEpsError when even
/// the smallest probe (r0/1e4) fails.
EpsilonReport choose_epsilon(const KernelDescriptor& k, double r0, double tol);

/// key=value lines for the choose-eps subcommand.
std::string format_report(const EpsilonReport& rep);

/// Round down to two significant digits (choose_epsilon postprocessing).
double round_down_2sig(double x);

}  // namespace fsa

#endif  // FSA_PARAMS_HPP
