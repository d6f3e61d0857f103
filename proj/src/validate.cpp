#include "fsa/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <unordered_map>
#include <utility>

#include "fsa/detail/lattice.hpp"
#include "fsa/errors.hpp"
#include "fsa/plan.hpp"
#include "fsa/quadrature.hpp"
#include "fsa/specfun.hpp"

namespace fsa {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtPi = 1.772453850905516027298167483341145183;

double norm3(const std::array<double, 3>& x) {
  return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}

using RadialFn = std::function<double(double)>;

// References are evaluated pointwise on grids where each radius repeats with
// high multiplicity; memoize on the exact r^2 bits.
std::function<double(std::array<double, 3>)> memoize_radial(RadialFn f) {
  auto cache = std::make_shared<std::unordered_map<double, double>>();
  return [f = std::move(f), cache](std::array<double, 3> x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    auto it = cache->find(r2);
    if (it != cache->end()) return it->second;
    const double v = f(std::sqrt(r2));
    cache->emplace(r2, v);
    return v;
  };
}

// Coulomb potential of exp(-r^2/sigma^2) in 3D and its radial derivatives,
// assembled from phi(r) = (sqrt(pi) sigma^3 / 4) erf(r/sigma) / r.
struct Coulomb3dGaussian {
  double sigma;

  double phi(double r) const {
    const double u = (r / sigma) * (r / sigma);
    if (u < 1e-8) {
      // (sigma^2/2) sum (-u)^n / (n! (2n+1))
      return 0.5 * sigma * sigma * (1.0 - u / 3.0 + u * u / 10.0);
    }
    return 0.25 * kSqrtPi * sigma * sigma * sigma * sf::erf(r / sigma) / r;
  }
  // A = phi'/r, D = (phi'' - phi'/r)/r^2; series a_m = (-1)^(m+1)/(m!(2m+3)).
  double A(double r) const {
    const double u = (r / sigma) * (r / sigma);
    if (u < 2.5e-3) return series_A(u);
    const double e = std::exp(-u);
    const double s3 = sigma * sigma * sigma;
    return 0.5 * sigma * sigma * e / (r * r) -
           0.25 * kSqrtPi * s3 * sf::erf(r / sigma) / (r * r * r);
  }
  double D(double r) const {
    const double u = (r / sigma) * (r / sigma);
    if (u < 2.5e-3) return 2.0 / (sigma * sigma) * series_dA(u);
    const double e = std::exp(-u);
    const double s2 = sigma * sigma;
    const double B = 0.75 * kSqrtPi * s2 * sigma * sf::erf(r / sigma) /
                         (r * r * r) -
                     e * (1.0 + 1.5 * s2 / (r * r));
    return B / (r * r);
  }

 private:
  static double series_A(double u) {
    double term = -1.0, sum = 0.0;  // term = (-1)^(m+1) / m!
    for (int m = 0; m < 14; ++m) {
      sum += term / (2.0 * m + 3.0);
      term *= -u / (m + 1.0);
      if (std::fabs(term) < 1e-19) break;
    }
    return sum;
  }
  // dA/du = sum_{m>=1} m a_m u^(m-1), a_m = (-1)^(m+1)/(m!(2m+3)).
  static double series_dA(double u) {
    double sum = 0.0;
    double t = 1.0;  // u^(m-1)
    double fact = 1.0;
    for (int m = 1; m < 16; ++m) {
      fact *= m;
      const double am = ((m % 2 == 0) ? -1.0 : 1.0) / (fact * (2.0 * m + 3.0));
      sum += m * am * t;
      t *= u;
      if (std::fabs(m * am * t) < 1e-19) break;
    }
    return sum;
  }
};

double gaussian_tail_radius(double sigma) {
  // exp(-(s/sigma)^2) < 1e-26 beyond ~7.8 sigma
  return 8.0 * sigma;
}

}  // namespace

double error_norm(const Field& phi_num, const Field& phi_ref) {
  if (!(phi_num.grid == phi_ref.grid))
    throw GridMismatchError("error_norm: fields on different grids");
  double num = 0.0, den = 0.0;
#pragma omp parallel for schedule(static) reduction(max : num, den)
  for (std::int64_t i = 0;
       i < static_cast<std::int64_t>(phi_num.values.size()); ++i) {
    const auto s = static_cast<std::size_t>(i);
    num = std::max(num, std::fabs(phi_num.values[s] - phi_ref.values[s]));
    den = std::max(den, std::fabs(phi_ref.values[s]));
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return num / den;
}

Field evaluate_reference(const ReferenceSolution& ref, const GridSpec& grid) {
  Field f = make_field(grid);
  const int n = grid.n;
  if (grid.domain.dim == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        f.at(i, j) = ref.phi({grid.coord(0, i), grid.coord(1, j), 0.0});
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          f.at(i, j, l) = ref.phi(
              {grid.coord(0, i), grid.coord(1, j), grid.coord(2, l)});
  }
  return f;
}

ReferenceSolution reference_case2(const KernelDescriptor& k, double sigma,
                                  const Domain& dom,
                                  std::array<double, 3> x0) {
  const double s2 = sigma * sigma;
  if (k.id == KernelId::coulomb3d) {
    const double g2 = dom.gamma[2] * dom.gamma[2];
    auto phi0 = [s2, g2](std::array<double, 3> x) {
      return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] / g2) / s2);
    };
    const bool shifted = x0[0] != 0.0 || x0[1] != 0.0 || x0[2] != 0.0;
    return ReferenceSolution{
        [phi0, x0, shifted](std::array<double, 3> x) {
          double v = phi0(x);
          if (shifted) v += phi0({x[0] - x0[0], x[1] - x0[1], x[2] - x0[2]});
          return v;
        },
        "Green identity: density manufactured as -lap(Phi0), gaussian Phi0"};
  }
  if (k.id == KernelId::poisson2d) {
    const double g2 = dom.gamma[1] * dom.gamma[1];
    return ReferenceSolution{
        [s2, g2](std::array<double, 3> x) {
          return std::exp(-(x[0] * x[0] + x[1] * x[1] / g2) / s2);
        },
        "Green identity: density manufactured as -lap(Phi), gaussian Phi"};
  }
  throw std::invalid_argument(
      "reference_case2: defined for coulomb3d and poisson2d");
}

ReferenceSolution reference_radial(const KernelDescriptor& k, double sigma) {
  const double s2 = sigma * sigma;
  switch (k.id) {
    case KernelId::coulomb3d: {
      Coulomb3dGaussian c{sigma};
      return {memoize_radial([c](double r) { return c.phi(r); }),
              "closed form: (sqrt(pi) sigma^3/4) erf(r/sigma)/r"};
    }
    case KernelId::coulomb2d:
      return {memoize_radial([sigma, s2](double r) {
                const double u = r * r / (2.0 * s2);
                return 0.5 * kSqrtPi * sigma * sf::bessel_i0e(u);
              }),
              "closed form: (sqrt(pi) sigma/2) e^-u I0(u), u = r^2/(2 sigma^2)"};
    case KernelId::poisson2d:
      return {memoize_radial([sigma, s2](double r) {
                return -0.5 * s2 * detail::log_plus_half_e1(r, sigma);
              }),
              "closed form: -(sigma^2/2) ln r - (sigma^2/4) E1(r^2/sigma^2)"};
    case KernelId::biharmonic2d: {
      // Angular reduction of the 2D biharmonic kernel against a radial
      // density: Phi(r) = -(1/4) int s rho(s)
      //   [(r^2+s^2)(ln max(r,s) - 1) + min(r,s)^2] ds.
      const double smax = gaussian_tail_radius(sigma);
      auto f = [s2, smax](double r) {
        auto inner = [s2, r](double s) {
          const double rs2 = r * r + s * s;
          const double lo = std::min(r, s), hi = std::max(r, s);
          return s * std::exp(-s * s / s2) *
                 (rs2 * (std::log(hi) - 1.0) + lo * lo);
        };
        const double cut = std::clamp(r, 1e-3, smax);
        return -0.25 * (quad::integrate_adaptive(inner, 0.0, cut, 1e-14, 1e-16) +
                        quad::integrate_adaptive(inner, cut, smax, 1e-14, 1e-16));
      };
      return {memoize_radial(f),
              "radial quadrature of the angular-averaged 2D biharmonic kernel"};
    }
    case KernelId::biharmonic3d: {
      // Phi(r) = (1/(12 r)) [ int_0^r s rho (6 r^2 s + 2 s^3) ds
      //                     + int_r^inf s rho (2 r^3 + 6 r s^2) ds ].
      const double smax = gaussian_tail_radius(sigma);
      auto f = [s2, smax](double r) {
        if (r == 0.0) {
          auto inner = [s2](double s) {
            return 0.5 * s * s * s * std::exp(-s * s / s2);
          };
          return quad::integrate_adaptive(inner, 0.0, smax, 1e-14, 1e-16);
        }
        auto near = [s2, r](double s) {
          return s * std::exp(-s * s / s2) * (6.0 * r * r * s + 2.0 * s * s * s);
        };
        auto far = [s2, r](double s) {
          return s * std::exp(-s * s / s2) * (2.0 * r * r * r + 6.0 * r * s * s);
        };
        const double cut = std::min(r, smax);
        double v = quad::integrate_adaptive(near, 0.0, cut, 1e-14, 1e-16);
        if (r < smax) v += quad::integrate_adaptive(far, r, smax, 1e-14, 1e-16);
        return v / (12.0 * r);
      };
      return {memoize_radial(f),
              "radial quadrature of the spherically averaged |x| kernel"};
    }
    case KernelId::yukawa2d: {
      // Graf addition theorem: angular average of K0(lambda |x-y|) is
      // I0(lambda r_<) K0(lambda r_>).
      const double lam = k.params.lambda;
      const double smax = gaussian_tail_radius(sigma);
      auto f = [s2, lam, smax](double r) {
        auto inner = [s2, lam, r](double s) {
          const double lo = lam * std::min(r, s), hi = lam * std::max(r, s);
          const double bessel =
              hi == 0.0
                  ? 0.0
                  : sf::bessel_i0e(lo) * sf::bessel_k0e(hi) * std::exp(lo - hi);
          return s * std::exp(-s * s / s2) * bessel;
        };
        // log variable on the left piece: the K0 singularity at s = 0
        // (r below the kink) becomes analytic there
        const double cut = std::clamp(r, 1e-3, smax);
        auto inner_log = [&inner](double t) {
          const double s = std::exp(t);
          return inner(s) * s;
        };
        return quad::integrate_adaptive(inner_log, std::log(1e-140),
                                        std::log(cut), 1e-13, 1e-16) +
               quad::integrate_adaptive(inner, cut, smax, 1e-13, 1e-16);
      };
      return {memoize_radial(f),
              "radial quadrature via the I0 K0 angular average (Graf)"};
    }
    case KernelId::yukawa3d: {
      // Shell average of e^{-lambda u}/(4 pi u):
      // Phi(r) = (1/(lambda r)) [ e^{-lambda r} int_0^r s rho sinh(lambda s) ds
      //                        + sinh(lambda r) int_r^inf s rho e^{-lambda s} ds ].
      const double lam = k.params.lambda;
      const double smax = gaussian_tail_radius(sigma);
      auto f = [s2, lam, smax](double r) {
        if (r == 0.0) {
          auto inner = [s2, lam](double s) {
            return s * std::exp(-s * s / s2 - lam * s);
          };
          return quad::integrate_adaptive(inner, 0.0, smax, 1e-14, 1e-16);
        }
        auto near = [s2, lam](double s) {
          return s * std::exp(-s * s / s2) * std::sinh(lam * s);
        };
        auto far = [s2, lam](double s) {
          return s * std::exp(-s * s / s2 - lam * s);
        };
        const double cut = std::min(r, smax);
        double v = std::exp(-lam * r) *
                   quad::integrate_adaptive(near, 0.0, cut, 1e-14, 1e-16);
        if (r < smax)
          v += std::sinh(lam * r) * quad::integrate_adaptive(far, r, smax, 1e-14, 1e-16);
        return v / (lam * r);
      };
      return {memoize_radial(f), "radial quadrature of the shell-averaged "
                                 "screened Coulomb kernel"};
    }
    case KernelId::ddiq2d:
      throw std::invalid_argument(
          "reference_radial: use reference_ddi_quasi2d for the quasi-2D DDI");
  }
  throw std::logic_error("reference_radial: unreachable");
}

ReferenceSolution reference_gaussian_aniso(const KernelDescriptor& k,
                                           double sigma, const Domain& dom) {
  if (k.id != KernelId::coulomb2d && k.id != KernelId::coulomb3d)
    throw std::invalid_argument(
        "reference_gaussian_aniso: coulomb2d/coulomb3d only");
  const double gamma = dom.gamma[dom.dim - 1];
  if (gamma == 1.0) return reference_radial(k, sigma);
  const double s2 = sigma * sigma;
  const double q = s2 * (1.0 - gamma * gamma);

  if (k.id == KernelId::coulomb3d) {
    // One-parameter Gaussian average of the heat-kernel factorization,
    // mapped to the finite interval w in [0, 1/sigma]:
    // Phi = (sigma^3 gamma / 2) int_0^{1/sigma}
    //       e^{-rho_perp^2 w^2 - z^2 w^2/g(w)} / sqrt(g(w)) dw,
    // g(w) = 1 - sigma^2 (1-gamma^2) w^2.
    auto cache = std::make_shared<std::map<std::pair<double, double>, double>>();
    auto eval = [sigma, gamma, q, cache](std::array<double, 3> x) {
      const double rp2 = x[0] * x[0] + x[1] * x[1];
      const double z2 = x[2] * x[2];
      const auto key = std::make_pair(rp2, z2);
      if (auto it = cache->find(key); it != cache->end()) return it->second;
      auto f = [rp2, z2, q](double w) {
        const double w2 = w * w;
        const double g = 1.0 - q * w2;
        return std::exp(-rp2 * w2 - z2 * w2 / g) / std::sqrt(g);
      };
      const double v = 0.5 * sigma * sigma * sigma * gamma *
                       quad::integrate_adaptive(f, 0.0, 1.0 / sigma, 1e-14, 1e-17);
      cache->emplace(key, v);
      return v;
    };
    return {eval, "1D integral reduction of the anisotropic gaussian Coulomb "
                  "potential (heat-kernel factorization)"};
  }
  // coulomb2d, with the trig substitution absorbing the endpoint singularity:
  // Phi = (sigma gamma / sqrt(pi)) int_0^{pi/2}
  //       e^{-(x^2 + y^2/G) sin^2(phi)/sigma^2} / sqrt(G) dphi,
  // G = 1 - (1-gamma^2) sin^2(phi).
  auto cache = std::make_shared<std::map<std::pair<double, double>, double>>();
  const double one_minus_g2 = 1.0 - gamma * gamma;
  auto eval = [sigma, gamma, s2, one_minus_g2, cache](std::array<double, 3> x) {
    const double x2 = x[0] * x[0], y2 = x[1] * x[1];
    const auto key = std::make_pair(x2, y2);
    if (auto it = cache->find(key); it != cache->end()) return it->second;
    auto f = [x2, y2, s2, one_minus_g2](double phi) {
      const double sp = std::sin(phi);
      const double sp2 = sp * sp;
      const double G = 1.0 - one_minus_g2 * sp2;
      return std::exp(-(x2 + y2 / G) * sp2 / s2) / std::sqrt(G);
    };
    const double v = sigma * gamma / kSqrtPi *
                     quad::integrate_adaptive(f, 0.0, 0.5 * kPi, 1e-14, 1e-17);
    cache->emplace(key, v);
    return v;
  };
  return {eval, "1D integral reduction of the anisotropic gaussian 2D Coulomb "
                "potential"};
}

ReferenceSolution reference_ddi3d(double sigma, const DipoleConfig& cfg) {
  Coulomb3dGaussian c{sigma};
  const double s2 = sigma * sigma;
  const double mn =
      cfg.m[0] * cfg.n[0] + cfg.m[1] * cfg.n[1] + cfg.m[2] * cfg.n[2];
  auto n = cfg.n, m = cfg.m;
  auto eval = [c, s2, mn, n, m](std::array<double, 3> x) {
    const double r = norm3(x);
    const double rho = std::exp(-r * r / s2);
    const double nx = n[0] * x[0] + n[1] * x[1] + n[2] * x[2];
    const double mx = m[0] * x[0] + m[1] * x[1] + m[2] * x[2];
    const double dnm = mn * c.A(r) + nx * mx * c.D(r);
    return -mn * rho - 3.0 * dnm;
  };
  return {eval, "directional second derivatives of the closed-form gaussian "
                "Coulomb potential"};
}

ReferenceSolution reference_ddi_quasi2d(double sigma, const DipoleConfig& cfg) {
  if (std::fabs(cfg.n[0]) > 1e-14 || std::fabs(cfg.n[1]) > 1e-14)
    throw std::invalid_argument(
        "reference_ddi_quasi2d: implemented for n = (0, 0, n3)");
  const double eta = cfg.eta;
  const double n3 = cfg.n[2];
  const double s2 = sigma * sigma;
  const double alpha = 0.25 * s2 - 0.5 * eta * eta;
  if (!(alpha > 0.0))
    throw std::invalid_argument(
        "reference_ddi_quasi2d: needs sigma^2 > 2 eta^2");
  // Phi(r) = -(3/2) n3^2 (sigma^2/2) int_0^kmax k^2 erfcx(eta k/sqrt(2))
  //          e^{-sigma^2 k^2/4} J0(k r) dk
  const double kmax = std::sqrt(60.0 / alpha);
  auto f = [eta, n3, s2, kmax](double r) {
    auto integrand = [eta, s2, r](double kk) {
      return kk * kk * sf::erfcx(eta * kk / std::sqrt(2.0)) *
             std::exp(-0.25 * s2 * kk * kk) * sf::bessel_j0(kk * r);
    };
    const int panels =
        std::max(32, 2 * static_cast<int>(std::ceil(kmax * r / kPi)));
    return -0.75 * n3 * n3 * s2 *
           quad::integrate_doubling(integrand, 0.0, kmax, 5e-14, panels);
  };
  return {memoize_radial(f),
          "1D Hankel integral of the explicit quasi-2D spectral product"};
}

Field direct_sum_oracle(const KernelDescriptor& k, const GridSpec& grid,
                        double eps, const Field& rho) {
  if (grid.n > 16)
    throw Error("direct_sum_oracle: size guard N <= 16");
  if (!(rho.grid == grid))
    throw GridMismatchError("direct_sum_oracle: grid mismatch");
  const std::vector<double> t1 = build_regular_tensor(k, grid, eps);
  const std::vector<double> t2 = build_fourier_tensor(k, grid, eps);
  const int n = grid.n;
  const int n2 = 2 * n;
  Field out = make_field(grid);
  auto tensor_at = [&](int di, int dj, int dl) {
    const std::size_t idx =
        grid.domain.dim == 2
            ? static_cast<std::size_t>((di + n2) % n2) * n2 + (dj + n2) % n2
            : (static_cast<std::size_t>((di + n2) % n2) * n2 +
               (dj + n2) % n2) *
                      n2 +
                  (dl + n2) % n2;
    return t1[idx] + t2[idx];
  };
  if (grid.domain.dim == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int ip = 0; ip < n; ++ip)
          for (int jp = 0; jp < n; ++jp)
            sum += tensor_at(i - ip, j - jp, 0) * rho.at(ip, jp);
        out.at(i, j) = sum;
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          double sum = 0.0;
          for (int ip = 0; ip < n; ++ip)
            for (int jp = 0; jp < n; ++jp)
              for (int lp = 0; lp < n; ++lp)
                sum += tensor_at(i - ip, j - jp, l - lp) * rho.at(ip, jp, lp);
          out.at(i, j, l) = sum;
        }
  }
  return out;
}

}  // namespace fsa
