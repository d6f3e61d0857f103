#include "fsa/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <stdexcept>

namespace fsa::sf {

double erf(double x) { return std::erf(x); }

double erfc(double x) { return std::erfc(x); }

double erfcx(double x) {
  if (x < 0.0) throw std::domain_error("erfcx: x must be >= 0");
  if (x < 6.5) return std::exp(x * x) * std::erfc(x);
  // Asymptotic series: erfcx(x) ~ (1/(x sqrt(pi))) sum (-1)^k (2k-1)!!/(2x^2)^k.
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= -(2.0 * k - 1.0) * inv2x2;
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  return sum / (x * 1.7724538509055160273);  // sqrt(pi)
}

double exp1(double x) {
  if (x <= 0.0) throw std::domain_error("exp1: x must be > 0");
  return boost::math::expint(1, x);
}

double bessel_j0(double x) { return boost::math::cyl_bessel_j(0, std::fabs(x)); }

double bessel_k0(double x) {
  if (x <= 0.0) throw std::domain_error("bessel_k0: x must be > 0");
  return boost::math::cyl_bessel_k(0, x);
}

double bessel_i0e(double x) {
  x = std::fabs(x);
  if (x <= 300.0) {
    // Positive-term power series for I0, scaled afterwards. No cancellation.
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int n = 1; n < 600; ++n) {
      term *= q / (static_cast<double>(n) * n);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return std::exp(-x) * sum;
  }
  // Asymptotic: I0(x) ~ e^x/sqrt(2 pi x) * sum (2k-1)!!^2 / (k! (8x)^k).
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 12; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd / (k * 8.0 * x);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum / std::sqrt(2.0 * M_PI * x);
}

double bessel_k0e(double x) {
  if (x <= 0.0) throw std::domain_error("bessel_k0e: x must be > 0");
  if (x <= 600.0) return std::exp(x) * boost::math::cyl_bessel_k(0, x);
  // Asymptotic: K0(x) ~ e^-x sqrt(pi/2x) * sum (-1)^k (2k-1)!!^2 / (k! (8x)^k).
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 12; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -odd * odd / (k * 8.0 * x);
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  return sum * std::sqrt(M_PI / (2.0 * x));
}

namespace {
// s(t) = exp(-1/t) for t > 0, else 0. Underflows to an exact 0 for
// t < ~1/745, which pins the window to exactly 1/0 outside the transition.
double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
}  // namespace

double window(double r, double a, double b) {
  if (!(0.0 < a && a < b)) throw std::invalid_argument("window: need 0 < a < b");
  if (r <= a) return 1.0;
  if (r >= b) return 0.0;
  const double t = (b - r) / (b - a);
  const double s0 = bump(t);
  const double s1 = bump(1.0 - t);
  return s0 / (s0 + s1);
}

}  // namespace fsa::sf
