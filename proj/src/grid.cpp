#include "fsa/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "fsa/errors.hpp"

namespace fsa {

Domain Domain::make(int dim, double L, std::array<double, 3> gamma) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("Domain: dim in {2,3}");
  if (!(L > 0.0)) throw std::invalid_argument("Domain: L > 0");
  if (gamma[0] != 1.0) throw std::invalid_argument("Domain: gamma_1 must be 1");
  for (int j = 0; j < dim; ++j)
    if (!(gamma[j] > 0.0 && gamma[j] <= 1.0))
      throw std::invalid_argument("Domain: 0 < gamma_j <= 1");
  Domain d;
  d.dim = dim;
  d.L = L;
  d.gamma = gamma;
  if (dim == 2) d.gamma[2] = 1.0;
  return d;
}

double Domain::r0() const {
  double m = 2.0 * L * gamma[0];
  for (int j = 1; j < dim; ++j) m = std::min(m, 2.0 * L * gamma[j]);
  return m;
}

double Domain::gamma_f() const {
  double g = 1.0;
  for (int j = 0; j < dim; ++j) g /= gamma[j];
  return g;
}

GridSpec GridSpec::make(const Domain& d, int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("GridSpec: N must be even and >= 2");
  GridSpec g;
  g.domain = d;
  g.n = n;
  for (int j = 0; j < d.dim; ++j) g.h[j] = 2.0 * d.L * d.gamma[j] / n;
  return g;
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int j = 0; j < domain.dim; ++j) s *= static_cast<std::size_t>(n);
  return s;
}

bool GridSpec::operator==(const GridSpec& o) const {
  return domain.dim == o.domain.dim && domain.L == o.domain.L &&
         domain.gamma == o.domain.gamma && n == o.n;
}

Field make_field(const GridSpec& g) {
  Field f;
  f.grid = g;
  f.values.assign(g.size(), 0.0);
  return f;
}

DensityPreset parse_density_spec(const std::string& spec) {
  DensityPreset p;
  std::string name = spec;
  std::string args;
  if (auto pos = spec.find(':'); pos != std::string::npos) {
    name = spec.substr(0, pos);
    args = spec.substr(pos + 1);
  }
  if (name == "gaussian")
    p.kind = DensityPresetKind::gaussian;
  else if (name == "shifted-laplacian")
    p.kind = DensityPresetKind::shifted_laplacian;
  else if (name == "laplacian-aniso-2d")
    p.kind = DensityPresetKind::laplacian_aniso_2d;
  else
    throw std::invalid_argument("unknown density preset: " + name);

  // key=value pairs separated by ','; vector components by '/'.
  std::size_t start = 0;
  while (start < args.size()) {
    auto end = args.find(',', start);
    if (end == std::string::npos) end = args.size();
    const std::string kv = args.substr(start, end - start);
    start = end + 1;
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("density spec: expected key=value, got " + kv);
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    if (key == "sigma") {
      p.sigma = std::stod(val);
    } else if (key == "x0") {
      std::size_t s = 0;
      for (int j = 0; j < 3 && s <= val.size(); ++j) {
        auto slash = val.find('/', s);
        if (slash == std::string::npos) slash = val.size();
        p.x0[j] = std::stod(val.substr(s, slash - s));
        s = slash + 1;
      }
    } else {
      throw std::invalid_argument("density spec: unknown key " + key);
    }
  }
  if (!(p.sigma > 0.0)) throw std::invalid_argument("density: sigma > 0");
  return p;
}

double case2_density_component(const std::array<double, 3>& x, double sigma,
                               double gamma3) {
  const double s2 = sigma * sigma;
  const double g2 = gamma3 * gamma3;
  const double phi0 =
      std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] / g2) / s2);
  return phi0 * (4.0 / s2 + 2.0 / (g2 * s2) - 4.0 * x[0] * x[0] / (s2 * s2) -
                 4.0 * x[1] * x[1] / (s2 * s2) -
                 4.0 * x[2] * x[2] / (g2 * g2 * s2 * s2));
}

double density_value(const DensityPreset& p, const Domain& dom,
                     const std::array<double, 3>& x) {
  const double s2 = p.sigma * p.sigma;
  switch (p.kind) {
    case DensityPresetKind::gaussian: {
      double q = 0.0;
      for (int j = 0; j < dom.dim; ++j) {
        const double xj = x[j] / dom.gamma[j];
        q += xj * xj;
      }
      return std::exp(-q / s2);
    }
    case DensityPresetKind::shifted_laplacian: {
      if (dom.dim != 3)
        throw std::invalid_argument("shifted-laplacian preset is 3D");
      const std::array<double, 3> xs{x[0] - p.x0[0], x[1] - p.x0[1],
                                     x[2] - p.x0[2]};
      return case2_density_component(x, p.sigma, dom.gamma[2]) +
             case2_density_component(xs, p.sigma, dom.gamma[2]);
    }
    case DensityPresetKind::laplacian_aniso_2d: {
      if (dom.dim != 2)
        throw std::invalid_argument("laplacian-aniso-2d preset is 2D");
      const double g2 = dom.gamma[1] * dom.gamma[1];
      const double phi = std::exp(-(x[0] * x[0] + x[1] * x[1] / g2) / s2);
      return phi * (2.0 / s2 + 2.0 / (g2 * s2) -
                    4.0 * x[0] * x[0] / (s2 * s2) -
                    4.0 * x[1] * x[1] / (g2 * g2 * s2 * s2));
    }
  }
  throw std::logic_error("density_value: unreachable");
}

Field sample_density(const DensityPreset& preset, const GridSpec& grid) {
  Field f = make_field(grid);
  const int n = grid.n;
  const Domain& dom = grid.domain;
  if (dom.dim == 2) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        f.at(i, j) = density_value(preset, dom,
                                   {grid.coord(0, i), grid.coord(1, j), 0.0});
  } else {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          f.at(i, j, k) =
              density_value(preset, dom,
                            {grid.coord(0, i), grid.coord(1, j), grid.coord(2, k)});
  }
  if (!density_support_ok(f))
    std::cerr << "warning: density not compactly supported on the grid "
                 "(boundary layer above 1e-14 of the peak)\n";
  return f;
}

bool density_support_ok(const Field& f) {
  const int n = f.grid.n;
  const int dim = f.grid.domain.dim;
  double peak = 0.0;
  for (double v : f.values) peak = std::max(peak, std::fabs(v));
  if (peak == 0.0) return true;
  double edge = 0.0;
  auto is_edge = [&](int i) { return i == 0 || i == n - 1; };
  if (dim == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (is_edge(i) || is_edge(j))
          edge = std::max(edge, std::fabs(f.at(i, j)));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (is_edge(i) || is_edge(j) || is_edge(k))
            edge = std::max(edge, std::fabs(f.at(i, j, k)));
  }
  return edge < 1e-14 * peak;
}

namespace {

constexpr char kMagic[4] = {'F', 'S', 'A', 'D'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& in, const char* what) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw MalformedFileError(std::string("field file: truncated ") + what);
  return v;
}

}  // namespace

void write_field(const Field& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out.write(kMagic, 4);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid.domain.dim));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(f.grid.n));
  put<double>(out, f.grid.domain.L);
  for (int j = 0; j < f.grid.domain.dim; ++j) put<double>(out, f.grid.domain.gamma[j]);
  out.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!out) throw Error("write failed: " + path);
}

Field read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw MalformedFileError("field file: bad magic");
  const auto version = get<std::uint32_t>(in, "version");
  if (version != kVersion)
    throw MalformedFileError("field file: unsupported version");
  const auto dim = get<std::uint32_t>(in, "dim");
  if (dim != 2 && dim != 3) throw MalformedFileError("field file: bad dim");
  const auto n = get<std::uint64_t>(in, "N");
  const auto L = get<double>(in, "L");
  std::array<double, 3> gamma{1.0, 1.0, 1.0};
  for (std::uint32_t j = 0; j < dim; ++j) gamma[j] = get<double>(in, "gamma");
  const Domain dom = Domain::make(static_cast<int>(dim), L, gamma);
  Field f = make_field(GridSpec::make(dom, static_cast<int>(n)));
  in.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!in || static_cast<std::size_t>(in.gcount()) !=
                 f.values.size() * sizeof(double))
    throw MalformedFileError("field file: truncated payload");
  return f;
}

}  // namespace fsa
