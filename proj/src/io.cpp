#include "dhl/io.hpp"

#include "dhl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace dhl::io {

std::string hexfloat(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const ProjPoint& p) {
  return json::array({to_json(p.u()), to_json(p.v()), to_json(p.w())});
}

json to_json(const CPoly& p) {
  json a = json::array();
  for (Eigen::Index k = 0; k < p.coeffs().size(); ++k) a.push_back(to_json(p.coeffs()[k]));
  return a;
}

json to_json(const RationalSlice& s) {
  return {{"pU", to_json(s.pU)}, {"pV", to_json(s.pV)}, {"pW", to_json(s.pW)}, {"logScale", s.logScale}};
}

namespace {
std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  return f;
}
}  // namespace

void write_measure_csv(const std::string& path, const EmpiricalMeasure& m) {
  auto f = open_out(path);
  f << "re,im,weight,re_hex,im_hex,weight_hex\n";
  for (std::size_t k = 0; k < m.points.size(); ++k) {
    const Complex z = m.points[k];
    f << decimal(z.real()) << ',' << decimal(z.imag()) << ',' << decimal(m.weights[k]) << ',' << hexfloat(z.real())
      << ',' << hexfloat(z.imag()) << ',' << hexfloat(m.weights[k]) << '\n';
  }
}

void write_points_csv(const std::string& path, const std::vector<Complex>& pts) {
  auto f = open_out(path);
  f << "re,im,re_hex,im_hex\n";
  for (const auto& z : pts)
    f << decimal(z.real()) << ',' << decimal(z.imag()) << ',' << hexfloat(z.real()) << ',' << hexfloat(z.imag()) << '\n';
}

void write_poly_csv(const std::string& path, const CPoly& p, double logScale) {
  auto f = open_out(path);
  f << "# logScale " << decimal(logScale) << ' ' << hexfloat(logScale) << '\n';
  f << "index,re,im,re_hex,im_hex\n";
  for (Eigen::Index k = 0; k < p.coeffs().size(); ++k) {
    const Complex c = p.coeffs()[k];
    f << k << ',' << decimal(c.real()) << ',' << decimal(c.imag()) << ',' << hexfloat(c.real()) << ','
      << hexfloat(c.imag()) << '\n';
  }
}

void write_histogram_csv(const std::string& path, const DensityTable& h) {
  auto f = open_out(path);
  f << "bin_center,density,mass,bin_center_hex,density_hex\n";
  for (std::size_t k = 0; k < h.binCenter.size(); ++k)
    f << decimal(h.binCenter[k]) << ',' << decimal(h.density[k]) << ',' << decimal(h.mass[k]) << ','
      << hexfloat(h.binCenter[k]) << ',' << hexfloat(h.density[k]) << '\n';
}

void write_grid_csv(const std::string& path, const PotentialGrid& g) {
  auto f = open_out(path);
  f << "# G of the unnormalized slice lift s -> (pU(s), pV(s), pW(s)); equals the pluripotential on the slice\n";
  f << "# rect " << g.rect.xmin << ' ' << g.rect.xmax << ' ' << g.rect.ymin << ' ' << g.rect.ymax << " nx " << g.nx
    << " ny " << g.ny << " tol " << g.tol << '\n';
  f << "i,j,re,im,G,tailBound,level,flag,G_hex\n";
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const auto& v = g.at(i, j);
      const Complex s = g.param(i, j);
      f << i << ',' << j << ',' << decimal(s.real()) << ',' << decimal(s.imag()) << ',' << decimal(v.value) << ','
        << decimal(v.tailBound) << ',' << v.levelUsed << ',' << int(g.flags[static_cast<std::size_t>(j) * g.nx + i])
        << ',' << hexfloat(v.value) << '\n';
    }
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  auto f = open_out(path);
  for (std::size_t k = 0; k < header.size(); ++k) f << (k ? "," : "") << header[k];
  for (std::size_t k = 0; k < header.size(); ++k) f << ',' << header[k] << "_hex";
  f << '\n';
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) f << (k ? "," : "") << decimal(r[k]);
    for (const double v : r) f << ',' << hexfloat(v);
    f << '\n';
  }
}

void write_json(const std::string& path, const json& j) {
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

std::uint8_t gray_of(Outcome o) {
  switch (o) {
    case Outcome::ToE: return 255;
    case Outcome::ToEPrime: return 0;
    case Outcome::Unresolved: return 128;
    case Outcome::ToBeta0: return 200;
    case Outcome::ToBeta1: return 60;
  }
  return 128;
}

void write_pgm(const std::string& path, int nx, int ny, const std::vector<std::uint8_t>& px) {
  auto f = open_out(path, true);
  f << "P5\n" << nx << ' ' << ny << "\n255\n";
  f.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
}

void write_raster_pgm(const std::string& path, const Raster& r) {
  std::vector<std::uint8_t> px(r.cls.size());
  std::transform(r.cls.begin(), r.cls.end(), px.begin(), [](std::uint8_t c) { return gray_of(static_cast<Outcome>(c)); });
  write_pgm(path, r.nx, r.ny, px);
}

void write_raster_ppm(const std::string& path, const Raster& r) {
  std::vector<std::uint8_t> rgb(r.cls.size() * 3);
  for (std::size_t k = 0; k < r.cls.size(); ++k)
    rgb[3 * k] = rgb[3 * k + 1] = rgb[3 * k + 2] = gray_of(static_cast<Outcome>(r.cls[k]));
  for (auto [i, j] : r.overlay) {
    const std::size_t k = static_cast<std::size_t>(j) * r.nx + i;
    rgb[3 * k] = 255;
    rgb[3 * k + 1] = 0;
    rgb[3 * k + 2] = 0;
  }
  auto f = open_out(path, true);
  f << "P6\n" << r.nx << ' ' << r.ny << "\n255\n";
  f.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
}

void write_grid_pgm(const std::string& path, const PotentialGrid& g, double lo, double hi) {
  std::vector<std::uint8_t> px(static_cast<std::size_t>(g.nx) * g.ny);
  // image row 0 is the top edge (ymax)
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double v = g.at(i, g.ny - 1 - j).value;
      const double t = hi > lo ? (v - lo) / (hi - lo) : 0.0;
      px[static_cast<std::size_t>(j) * g.nx + i] =
          std::isfinite(v) ? static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(t, 0.0, 1.0))) : 0;
    }
  write_pgm(path, g.nx, g.ny, px);
}

}  // namespace dhl::io
