#include "fsa/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "fsa/errors.hpp"
#include "fsa/quadrature.hpp"
#include "fsa/specfun.hpp"

namespace fsa {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtPi = 1.772453850905516027298167483341145183;
constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
// (2 pi)^(3/2)
constexpr double kTwoPiPow32 = 15.749609945722419027118001505341918398;

double sinc(double x) {
  if (std::fabs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

}  // namespace

namespace detail {

// For small r^2/eps^2 the logarithms cancel analytically:
//   ln(eps) - gamma/2 + (1/2) sum_{n>=1} (-1)^(n+1) x^n / (n n!).
double log_plus_half_e1(double r, double eps) {
  const double x = (r / eps) * (r / eps);
  if (x <= 1e-2) {
    double term = 1.0, series = 0.0;
    for (int n = 1; n < 12; ++n) {
      term *= -x / n;
      series -= term / n;  // (-1)^(n+1) x^n / (n n!)
      if (std::fabs(term) < 1e-20) break;
    }
    return std::log(eps) - 0.5 * kEulerGamma + 0.5 * series;
  }
  return std::log(r) + 0.5 * sf::exp1(x);
}

}  // namespace detail

namespace {
using detail::log_plus_half_e1;

// Window used inside the kernel split. The transition is an erf profile
// (analytic, so the trapezoidal rule keeps spectral decay through it; a bump
// quotient would cap the regular-part accuracy near 1e-11 at h = 1/4),
// clamped to exact 1/0 outside (a, b). The clamp sits 6 erf-widths out,
// a ~1e-17 jump that is below every tolerance here.
double split_window(double r, double a, double b) {
  if (r <= a) return 1.0;
  if (r >= b) return 0.0;
  const double mid = 0.5 * (a + b);
  const double w = (b - a) / 12.0;
  return 0.5 * sf::erfc((r - mid) / w);
}
}  // namespace

bool KernelDescriptor::singular_at_origin() const {
  switch (id) {
    case KernelId::biharmonic2d:
    case KernelId::biharmonic3d:
      return false;
    default:
      return true;
  }
}

KernelDescriptor make_kernel(std::string_view name, KernelParams params) {
  auto k = [&](KernelId id, int dim, FsaForm form, ResidualFtMode mode) {
    return KernelDescriptor{id, std::string(name), dim, params, form, mode};
  };
  if (name == "poisson2d")
    return k(KernelId::poisson2d, 2, FsaForm::e1_subtraction,
             ResidualFtMode::analytic);
  if (name == "coulomb2d")
    return k(KernelId::coulomb2d, 2, FsaForm::erf_multiplier,
             ResidualFtMode::analytic);
  if (name == "coulomb3d")
    return k(KernelId::coulomb3d, 3, FsaForm::erf_multiplier,
             ResidualFtMode::analytic);
  if (name == "biharmonic2d")
    return k(KernelId::biharmonic2d, 2, FsaForm::e1_subtraction,
             ResidualFtMode::analytic);
  if (name == "biharmonic3d")
    return k(KernelId::biharmonic3d, 3, FsaForm::erf_multiplier,
             ResidualFtMode::analytic);
  if (name == "yukawa2d") {
    if (!(params.lambda > 0)) throw std::invalid_argument("yukawa: lambda > 0");
    return k(KernelId::yukawa2d, 2, FsaForm::windowed_erf,
             ResidualFtMode::radial_quadrature);
  }
  if (name == "yukawa3d") {
    // exp(-lambda |x|) has a cusp at the origin, so the plain erf multiplier
    // is not smooth there; window it like the 2D log kernels.
    if (!(params.lambda > 0)) throw std::invalid_argument("yukawa: lambda > 0");
    return k(KernelId::yukawa3d, 3, FsaForm::windowed_erf,
             ResidualFtMode::radial_quadrature);
  }
  if (name == "ddiq2d") {
    if (!(params.eta > 0)) throw std::invalid_argument("ddiq2d: eta > 0");
    return k(KernelId::ddiq2d, 2, FsaForm::windowed_erf,
             ResidualFtMode::radial_quadrature);
  }
  throw std::invalid_argument("unknown kernel: " + std::string(name));
}

KernelDescriptor with_plan_window(KernelDescriptor k, double r0, double eps) {
  if (k.fsa_form != FsaForm::windowed_erf || k.window_b > 0.0) return k;
  // The widest transition the tail condition allows: the erf profile's
  // spectral tail ~ e^{-(width k/12)^2 /4} then sits below the other error
  // sources even when a derivative multiplier amplifies high modes.
  k.window_b = std::max(3.0 * eps, 0.9 * r0);
  return k;
}

double kernel_value(const KernelDescriptor& k, double r) {
  if (r == 0.0 && k.singular_at_origin())
    throw SingularKernelError(k.name + ": kernel singular at r = 0");
  switch (k.id) {
    case KernelId::poisson2d:
      return -std::log(r) / (2.0 * kPi);
    case KernelId::coulomb2d:
      return 1.0 / (2.0 * kPi * r);
    case KernelId::coulomb3d:
      return 1.0 / (4.0 * kPi * r);
    case KernelId::biharmonic2d:
      return r == 0.0 ? 0.0 : -r * r * (std::log(r) - 1.0) / (8.0 * kPi);
    case KernelId::biharmonic3d:
      return r / (8.0 * kPi);
    case KernelId::yukawa2d:
      return sf::bessel_k0(k.params.lambda * r) / (2.0 * kPi);
    case KernelId::yukawa3d:
      return std::exp(-k.params.lambda * r) / (4.0 * kPi * r);
    case KernelId::ddiq2d: {
      // int e^(-s^2/2) / sqrt(r^2 + eta^2 s^2) ds / (2 pi)^(3/2)
      //   = e^z K0(z) / ((2 pi)^(3/2) eta),  z = r^2 / (4 eta^2).
      const double eta = k.params.eta;
      const double z = r * r / (4.0 * eta * eta);
      return sf::bessel_k0e(z) / (kTwoPiPow32 * eta);
    }
  }
  throw std::logic_error("kernel_value: unreachable");
}

double fsa_value(const KernelDescriptor& k, double r, double eps) {
  switch (k.fsa_form) {
    case FsaForm::erf_multiplier: {
      if (r == 0.0) {
        switch (k.id) {
          case KernelId::coulomb2d:
            return 1.0 / (kPi * kSqrtPi * eps);
          case KernelId::coulomb3d:
          case KernelId::yukawa3d:
            return 1.0 / (2.0 * kPi * kSqrtPi * eps);
          case KernelId::biharmonic3d:
            return 0.0;
          default:
            break;
        }
      }
      // erf(r/eps)/r stays benign for tiny r via its odd series.
      if (r < 1e-8 * eps) {
        const double t2 = (r / eps) * (r / eps);
        const double erf_over_r = 2.0 / (kSqrtPi * eps) * (1.0 - t2 / 3.0);
        switch (k.id) {
          case KernelId::coulomb2d:
            return erf_over_r / (2.0 * kPi);
          case KernelId::coulomb3d:
            return erf_over_r / (4.0 * kPi);
          case KernelId::yukawa3d:
            return std::exp(-k.params.lambda * r) * erf_over_r / (4.0 * kPi);
          case KernelId::biharmonic3d:
            break;
          default:
            break;
        }
      }
      return kernel_value(k, r) * sf::erf(r / eps);
    }
    case FsaForm::e1_subtraction: {
      if (k.id == KernelId::poisson2d)
        return -log_plus_half_e1(r == 0.0 ? 0.0 : r, eps) / (2.0 * kPi);
      // biharmonic2d
      if (r == 0.0) return 0.0;
      return -r * r * (log_plus_half_e1(r, eps) - 1.0) / (8.0 * kPi);
    }
    case FsaForm::windowed_erf: {
      const double a = k.window_lo(eps);
      if (r <= a) return 0.0;
      const double xi = split_window(r, a, k.window_hi(eps));
      return kernel_value(k, r) * sf::erf(r / eps) * (1.0 - xi);
    }
  }
  throw std::logic_error("fsa_value: unreachable");
}

double residual_value(const KernelDescriptor& k, double r, double eps) {
  switch (k.fsa_form) {
    case FsaForm::erf_multiplier: {
      // erfc underflows to an exact 0 beyond ~27.3 eps; skip the kernel there
      // so quadratures over the prescribed cutoff stay cheap.
      const double c = sf::erfc(r / eps);
      return c == 0.0 ? 0.0 : kernel_value(k, r) * c;
    }
    case FsaForm::e1_subtraction: {
      const double x = (r / eps) * (r / eps);
      if (x > 745.0) return 0.0;  // E1 underflow
      const double e1 = sf::exp1(x);
      if (k.id == KernelId::poisson2d) return e1 / (4.0 * kPi);
      return r * r * e1 / (16.0 * kPi);  // biharmonic2d
    }
    case FsaForm::windowed_erf: {
      const double t = r / eps;
      const double xi = split_window(r, k.window_lo(eps), k.window_hi(eps));
      const double c = sf::erfc(t) + sf::erf(t) * xi;
      return c == 0.0 ? 0.0 : kernel_value(k, r) * c;
    }
  }
  throw std::logic_error("residual_value: unreachable");
}

double residual_ft_k_switch(const KernelDescriptor& k, double eps) {
  switch (k.id) {
    case KernelId::biharmonic2d:
    case KernelId::biharmonic3d:
      // Closed form cancels like t^2 near 0; the series converges fast up to
      // t = (k eps)^2/4 = 1/2, so switch there.
      return std::sqrt(2.0) / eps;
    default:
      return 1e-3 / eps;
  }
}

namespace detail {

double residual_ft_series(const KernelDescriptor& k, double kk, double eps) {
  kk = std::fabs(kk);
  const double e2 = eps * eps;
  switch (k.id) {
    case KernelId::poisson2d:
    case KernelId::coulomb3d: {
      // (1 - e^-t)/k^2 = (eps^2/4) sum (-t)^n/(n+1)!,  t = k^2 eps^2/4.
      const double t = kk * kk * e2 / 4.0;
      double term = 1.0, sum = 1.0;
      for (int n = 1; n < 30; ++n) {
        term *= -t / (n + 1.0);
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
      }
      return e2 / 4.0 * sum;
    }
    case KernelId::coulomb2d: {
      // erf(k eps/2)/k = (eps/sqrt(pi)) sum (-u)^n/(n!(2n+1)), u = (k eps/2)^2.
      const double u = kk * eps / 2.0 * (kk * eps / 2.0);
      double term = 1.0, sum = 1.0;
      for (int n = 1; n < 30; ++n) {
        term *= -u / n;
        sum += term / (2.0 * n + 1.0);
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
      }
      return eps / kSqrtPi * sum;
    }
    case KernelId::biharmonic2d:
    case KernelId::biharmonic3d: {
      // [e^-t (1 + t + a2 t^2) - 1]/k^4 with a2 = 1 (2D), 2 (3D):
      //   (eps^4/16) sum_{n>=2} c_n t^(n-2),
      //   c_n = sum_{j=0..2} a_j (-1)^(n-j)/(n-j)!.
      const double a2 = (k.id == KernelId::biharmonic2d) ? 1.0 : 2.0;
      const double t = kk * kk * e2 / 4.0;
      double sum = 0.0, tpow = 1.0;
      double fact[44];
      fact[0] = 1.0;
      for (int i = 1; i < 44; ++i) fact[i] = fact[i - 1] * i;
      for (int n = 2; n < 42; ++n) {
        double cn = ((n % 2 == 0) ? 1.0 : -1.0) / fact[n];
        cn += ((n % 2 == 0) ? -1.0 : 1.0) / fact[n - 1];
        cn += a2 * ((n % 2 == 0) ? 1.0 : -1.0) / fact[n - 2];
        sum += cn * tpow;
        if (std::fabs(cn * tpow) < 1e-18 * std::fabs(sum) && n > 4) break;
        tpow *= t;
      }
      return e2 * e2 / 16.0 * sum;
    }
    default:
      throw std::logic_error("residual_ft_series: kernel has no analytic form");
  }
}

double residual_ft_closed(const KernelDescriptor& k, double kk, double eps) {
  kk = std::fabs(kk);
  const double k2 = kk * kk;
  const double t = k2 * eps * eps / 4.0;
  switch (k.id) {
    case KernelId::poisson2d:
    case KernelId::coulomb3d:
      return -std::expm1(-t) / k2;
    case KernelId::coulomb2d:
      return sf::erf(kk * eps / 2.0) / kk;
    case KernelId::biharmonic2d:
      return (std::exp(-t) * (1.0 + t + t * t) - 1.0) / (k2 * k2);
    case KernelId::biharmonic3d:
      return (std::exp(-t) * (1.0 + t + 2.0 * t * t) - 1.0) / (k2 * k2);
    default:
      throw std::logic_error("residual_ft_closed: kernel has no analytic form");
  }
}

}  // namespace detail

double residual_quadrature_cutoff(const KernelDescriptor& k, double eps,
                                  double r0_hint) {
  double cut = r0_hint + 40.0 * eps;
  if (k.fsa_form == FsaForm::windowed_erf)
    cut = std::max(cut, k.window_hi(eps) + 40.0 * eps);
  return cut;
}

double residual_ft_quadrature(const KernelDescriptor& k, double kk, double eps,
                              double r0_hint) {
  kk = std::fabs(kk);
  const double cut = residual_quadrature_cutoff(k, eps, r0_hint);
  auto fr = [&](double r) -> double {
    const double v = residual_value(k, r, eps);
    if (v == 0.0) return 0.0;
    if (k.dim == 2) return v * sf::bessel_j0(kk * r) * r;
    return v * sinc(kk * r) * r * r;
  };
  // Near-field leg in the log variable r = e^s: the log-type singularities
  // of the 2D kernels at the origin become analytic there, so the doubling
  // check converges spectrally instead of at a fixed algebraic rate.
  double ra = std::min(cut / 4.0, eps);
  if (kk > 0.0) ra = std::min(ra, 0.5 / kk);
  auto fs = [&](double s) {
    const double r = std::exp(s);
    return fr(r) * r;
  };
  // Below r ~ 1e-120 the integrand mass is < 1e-230 for every kernel here.
  const double near = quad::integrate_doubling(fs, std::log(1e-120),
                                               std::log(ra), 1e-14, 32);
  // Far leg: at least ~2 panels per oscillation of J0(kr) / sin(kr).
  const int panels =
      std::max(16, static_cast<int>(std::ceil(kk * (cut - ra) / kPi)) * 2);
  const double far = quad::integrate_doubling(fr, ra, cut, 1e-14, panels);
  return (k.dim == 2 ? 2.0 : 4.0) * kPi * (near + far);
}

double residual_ft(const KernelDescriptor& k, double kk, double eps) {
  kk = std::fabs(kk);
  if (k.residual_ft_mode == ResidualFtMode::radial_quadrature)
    return residual_ft_quadrature(k, kk, eps);
  if (kk < residual_ft_k_switch(k, eps))
    return detail::residual_ft_series(k, kk, eps);
  return detail::residual_ft_closed(k, kk, eps);
}

}  // namespace fsa
