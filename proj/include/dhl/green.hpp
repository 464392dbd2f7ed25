#pragma once

#include "dhl/double_double.hpp"
#include "dhl/geometry.hpp"
#include "dhl/roots.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dhl {

// twice the sampled sup of |log|R^(X)|| over the unit sphere (sampled sup 7.853)
inline constexpr double kLogNormBound = 15.71;

struct GreenValue {
  double value = 0.0;
  double tailBound = 0.0;
  int levelUsed = 0;
  bool widened = false;  // orbit passed close to a+/a-, bound constant enlarged
};

GreenValue green_potential(const Vec3& x, double tol);
// fixed number of series terms
GreenValue green_potential_levels(const Vec3& x, int levels);

double free_energy_per_bond(Complex z, Complex t, int n);

struct HermDecayRow {
  int n = 0;
  double meanAbs = 0.0, stdErr = 0.0, maxAbs = 0.0, maxSigned = 0.0;
  double upperBound = 0.0;  // M 4^-n
  std::vector<double> tailFraction;
};

struct HermDecayTable {
  std::vector<double> rGrid;
  std::vector<HermDecayRow> rows;
  int excluded = 0;
  int samples = 0;
  double M = 0.0;  // log of the form's norm
  double fittedGamma = 0.0;
};

HermDecayTable herm_norm_decay(int samples, int nMax, const LinearForm& y, std::uint64_t seed,
                               const std::vector<double>& rGrid = {});

struct Rect {
  double xmin = -2.0, xmax = 2.0, ymin = -2.0, ymax = 2.0;
};

struct PotentialGrid {
  RationalSlice slice;
  Rect rect;
  int nx = 0, ny = 0;
  double tol = 0.0;
  std::vector<GreenValue> samples;  // row-major, row = y index
  std::vector<unsigned char> flags;  // 1 if indeterminate or bound above tol

  Complex param(int i, int j) const;
  const GreenValue& at(int i, int j) const { return samples[static_cast<std::size_t>(j) * nx + i]; }
};

PotentialGrid potential_grid(const RationalSlice& slice, const Rect& rect, int nx, int ny, double tol);

struct DensityGrid {
  int nx = 0, ny = 0;
  std::vector<double> mass;  // row-major over the full grid, zero on the border
  double clippedNegative = 0.0;  // fraction of |negative| mass relative to positive mass
};

DensityGrid laplacian_density(const PotentialGrid& grid);

struct EquidistResult {
  double distance = 0.0;
  int used = 0;
  int dropped = 0;
};

std::vector<Complex> default_probe_set();
EquidistResult equidistribution_distance(const RationalSlice& slice, int n, const std::vector<Complex>& probes,
                                         std::optional<Precision> prec = std::nullopt);

}  // namespace dhl
