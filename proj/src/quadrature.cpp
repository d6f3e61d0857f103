#include "fsa/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>

namespace fsa::quad {

using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;

double integrate_adaptive(const Integrand& f, double a, double b,
                          double rel_tol, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  double err = 0.0, l1 = 0.0;
  const double value = GK15::integrate(f, a, b, max_depth, rel_tol, &err, &l1);
  const double scale = std::max({std::fabs(value), 1e-3 * l1, 1e-300});
  if (err > std::max(100.0 * rel_tol * scale, abs_tol)) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "integrate_adaptive: error estimate %.3e exceeds tolerance "
                  "(value %.3e, L1 %.3e) on [%g, %g]",
                  err, value, l1, a, b);
    throw QuadratureError(msg, err / scale);
  }
  return value;
}

namespace {

// Neumaier-compensated accumulator: keeps the panel-sum roundoff at a few
// ulps independent of the panel count, which the doubling check relies on.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// One pass of M uniform GK15 panels; also accumulates the L1 mass so the
// convergence check stays meaningful when the integral nearly cancels.
double composite_pass(const Integrand& f, double a, double b, int panels,
                      double* l1_out) {
  const double w = (b - a) / panels;
  Kahan sum, l1;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * w;
    const double hi = (i + 1 == panels) ? b : a + (i + 1) * w;
    const double v = GK15::integrate(f, lo, hi, 0);
    sum.add(v);
    l1.add(std::fabs(v));
  }
  *l1_out = l1.value();
  return sum.value();
}

}  // namespace

double integrate_doubling(const Integrand& f, double a, double b,
                          double rel_tol, int initial_panels,
                          int max_panels) {
  if (a == b) return 0.0;
  int panels = std::max(1, initial_panels);
  double l1 = 0.0;
  double prev = composite_pass(f, a, b, panels, &l1);
  double achieved = INFINITY;
  while (panels <= max_panels) {
    panels *= 2;
    double l1_next = 0.0;
    const double next = composite_pass(f, a, b, panels, &l1_next);
    const double scale = std::max({std::fabs(next), l1_next, 1e-300});
    achieved = std::fabs(next - prev) / scale;
    if (achieved <= rel_tol) return next;
    prev = next;
    l1 = l1_next;
  }
  throw QuadratureError("integrate_doubling: no convergence at " +
                            std::to_string(panels) + " panels",
                        achieved);
}

}  // namespace fsa::quad
