#ifndef FSA_SPECFUN_HPP
#define FSA_SPECFUN_HPP

namespace fsa::sf {

/// erf(x) = (2/sqrt(pi)) * int_0^x exp(-t^2) dt.
double erf(double x);

/// erfc(x) = 1 - erf(x), without cancellation for large x.
double erfc(double x);

/// Scaled complementary error function exp(x^2) * erfc(x), x >= 0.
double erfcx(double x);

/// Exponential integral E1(x) = int_x^inf t^-1 exp(-t) dt, x > 0.
/// Throws std::domain_error for x <= 0.
double exp1(double x);

/// Bessel function of the first kind J0(x).
double bessel_j0(double x);

/// Modified Bessel function K0(x), x > 0.
/// Throws std::domain_error for x <= 0.
double bessel_k0(double x);

/// Exponentially scaled modified Bessel functions:
/// bessel_i0e(x) = exp(-x)  * I0(x), x >= 0,
/// bessel_k0e(x) = exp(+x)  * K0(x), x >  0.
/// Stable where I0 overflows / K0 underflows.
double bessel_i0e(double x);
double bessel_k0e(double x);

/// Smooth vanishing window xi(r): identically 1 for r <= a, identically 0 for
/// r >= b, C-infinity monotone transition on (a, b). Built from the bump
/// quotient g(t) = s(t) / (s(t) + s(1-t)) with s(t) = exp(-1/t) for t > 0,
/// evaluated at t = (b - r)/(b - a).
/// Requires 0 < a < b; throws std::invalid_argument otherwise.
double window(double r, double a, double b);

}  // namespace fsa::sf

#endif  // FSA_SPECFUN_HPP
