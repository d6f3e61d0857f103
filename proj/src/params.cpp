#include "fsa/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "fsa/errors.hpp"
#include "fsa/quadrature.hpp"

namespace fsa {

double tail_integral(const KernelDescriptor& k, double eps, double r0) {
  if (!(eps > 0.0) || !(r0 > 0.0))
    throw std::invalid_argument("tail_integral: need eps > 0 and r0 > 0");
  const double dm1 = k.dim - 1;
  auto f = [&](double r) {
    return std::fabs(residual_value(k, r, eps)) * std::pow(r, dm1);
  };
  // The integrand decays like exp(-(r/eps)^2); nearly all mass sits within a
  // fraction of eps past r0, so split the range instead of relying on deep
  // adaptive bisection.
  const double edges[] = {r0, r0 + 0.125 * eps, r0 + eps, r0 + 5.0 * eps,
                          r0 + 40.0 * eps};
  double sum = 0.0;
  for (int i = 0; i + 1 < 5; ++i)
    sum += quad::integrate_adaptive(f, edges[i], edges[i + 1], 1e-4);
  return sum;
}

double round_down_2sig(double x) {
  if (x <= 0.0) return x;
  const double mag = std::pow(10.0, std::floor(std::log10(x)) - 1.0);
  return std::floor(x / mag) * mag;
}

EpsilonReport choose_epsilon(const KernelDescriptor& k, double r0, double tol) {
  if (!(r0 > 0.0)) throw std::invalid_argument("choose_epsilon: r0 > 0");
  if (!(tol > 0.0 && tol < 1.0))
    throw std::invalid_argument("choose_epsilon: need 0 < tol < 1");

  struct Probe {
    double eps, tail;
  };
  std::vector<Probe> trace;
  auto probe = [&](double eps) {
    const double t = tail_integral(k, eps, r0);
    trace.push_back({eps, t});
    return t;
  };

  double lo = r0 * 1e-4;
  double hi = r0 / 4.0;
  if (probe(lo) > tol)
    throw NoFeasibleEpsError(k.name + ": tail at smallest probe exceeds tol");
  double eps = lo;
  if (probe(hi) <= tol) {
    eps = hi;
  } else {
    while (hi / lo > 1.005) {
      const double mid = std::sqrt(lo * hi);
      if (probe(mid) <= tol)
        lo = mid;
      else
        hi = mid;
    }
    eps = lo;
  }

  // The bisection assumed the tail grows with eps; verify over the trace
  // (10% slack covers the order-of-magnitude quadrature setting).
  std::sort(trace.begin(), trace.end(),
            [](const Probe& a, const Probe& b) { return a.eps < b.eps; });
  for (size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].tail < trace[i - 1].tail * (1.0 - 0.10) - 1e-300)
      throw Error("choose_epsilon: tail not monotone over bisection trace");
  }

  eps = round_down_2sig(eps);
  const double tail = tail_integral(k, eps, r0);
  if (tail > tol)
    throw Error("choose_epsilon: rounded eps fails re-check");
  return EpsilonReport{eps, r0, tol, tail, r0 / eps};
}

std::string format_report(const EpsilonReport& rep) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "eps=%.17g\nr0=%.17g\ntol=%.17g\ntail=%.17g\nc=%.17g\n",
                rep.eps, rep.r0, rep.tol, rep.tail_value, rep.c);
  return buf;
}

}  // namespace fsa
