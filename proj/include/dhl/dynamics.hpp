#pragma once

#include "dhl/geometry.hpp"
#include "dhl/green.hpp"
#include "dhl/renorm.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace dhl {

enum class Outcome : std::uint8_t { ToE, ToEPrime, Unresolved, ToBeta0, ToBeta1 };
const char* to_string(Outcome o);

struct OrbitVerdict {
  Outcome outcome = Outcome::Unresolved;
  int stepsUsed = 0;
  double finalDistance = 1.0;
  bool indeterminate = false;
};

struct ClassifyOptions {
  bool lineAttractors = false;  // also detect beta0, beta1 (superattracting inside U = W)
  double enterRadius = 1e-6;
  int confirmSteps = 3;
  double contraction = 16.0;    // d_{k+1} <= K d_k^2
};

OrbitVerdict classify_orbit(const ProjPoint& x, int budget, const ClassifyOptions& opt = {});

// --- solid cylinders
// [1 : sqrt(c xi) : xi], c in [0,1], |xi| < 1
ProjPoint sc_point(double c, Complex xi);
bool in_sc(const ProjPoint& x);
bool in_sc_prime(const ProjPoint& x);

struct CylinderCounts {
  std::string name;
  int samples = 0, toE = 0, toEPrime = 0, unresolved = 0, other = 0;
  double resolvedFraction() const { return samples ? double(toE + toEPrime + other) / samples : 0.0; }
};

struct CylinderReport {
  std::vector<CylinderCounts> sets;  // SC, SC', phys |z|<1, phys |z|>1
  bool mirrorExact = true;           // rho(SC) verdicts equal swapped SC verdicts
};

CylinderReport solid_cylinder_suite(int samples, std::uint64_t seed, int budget = 500);

// --- rasters
struct Raster {
  int nx = 0, ny = 0;
  Rect rect;
  std::vector<std::uint8_t> cls;                // Outcome per pixel, row 0 at ymax
  std::vector<std::pair<int, int>> overlay;     // marked pixels
  double tc = 0.0;                              // julia_1d only

  Complex pixel(int i, int j) const;
  std::uint8_t at(int i, int j) const { return cls[static_cast<std::size_t>(j) * nx + i]; }
};

// 1D map classes: ToBeta0 = basin of 0, ToBeta1 = basin of 1
Outcome classify_fisher(Complex t, int budget);
double fisher_critical_point(int budget = 400);
Raster julia_1d(const Rect& rect, int nx, int ny, int budget);

struct SliceRasterOptions {
  ClassifyOptions classify;
  int overlayLevel = -1;  // mark roots of pU - pW after this many advances
};
Raster julia_slice_2d(const RationalSlice& slice, const Rect& rect, int nx, int ny, int budget,
                      const SliceRasterOptions& opt = {});
// share of overlay marks within `radius` pixels of the J band (Unresolved or basin boundary)
double overlay_hit_fraction(const Raster& r, int radius);
// intersection over union of the Unresolved pixels
double unresolved_iou(const Raster& a, const Raster& b);

// --- critical locus and folds
struct CurveResidual {
  std::string name;
  double maxDet = 0.0;         // on the curve
  double minControlDet = 0.0;  // at chordal distance 0.1
  int samples = 0;
};
struct CriticalReport {
  std::vector<CurveResidual> curves;
  double conicMinDet = 0.0;
};
CriticalReport critical_locus_residuals(int samplesPerCurve, std::uint64_t seed);

// unit point at chordal distance ~r from the curve point x, along the normal
Vec3 transverse_point(const CriticalCurve& c, const Vec3& x, double r);

struct FoldFit {
  double slope = 0.0, r2 = 0.0;
};
FoldFit fold_exponent(const CriticalCurve& c, Complex baseParam, const std::vector<double>& radii = {});

// --- power map area lemma, area normalized so the unit disk has area 1
struct Disk {
  Complex center;
  double radius;
};
struct AreaResult {
  double areaX = 0.0, areaPre = 0.0, sigmaX = 0.0, sigmaPre = 0.0;
  double bound = 0.0;  // areaX^(1/d) + 3 sigma
  bool holds = true;
};
AreaResult power_map_area_mc(int d, const std::vector<Disk>& disks, long samples, std::uint64_t seed);
std::vector<Disk> random_disk_union(int count, std::mt19937_64& rng);

// --- measure of maximal entropy
struct MmeCloud {
  std::vector<Vec3> points;
  int infiniteFiberResamples = 0;
  int degenerateSteps = 0;
};
// keeps every `thin`-th chain state; thin >= 2 so a forward push never lands on a stored sample
MmeCloud mme_sample(int count, int burnIn, std::uint64_t seed, int chains = 16,
                    const ProjPoint& start = normalize(2.0, 1.0, 3.0), int thin = 2);
double lyapunov_proxy(const MmeCloud& cloud);
double unresolved_fraction(const MmeCloud& cloud, int budget);
double forward_push_tv(const MmeCloud& cloud, int binsPerAxis = 6);

// --- algebraic stability
enum class MapKind { Mig, Phys };
struct StabilityLine {
  int degree = 0;
  int commonRoots = 0;  // with multiplicity
  int uniqueCommon = 0;
  int effectiveDegree = 0;
  bool inconclusive = false;
  // relative Newton distance of cluster centroids
  double minDistNonCommon = 0.0, maxDistCommon = 0.0;
};
struct StabilityReport {
  MapKind map = MapKind::Mig;
  int n = 0;
  std::vector<StabilityLine> lines;
  int linesWithCommon() const;
};
StabilityReport stability_check(MapKind map, int n, std::uint64_t seed, int lines = 3);

}  // namespace dhl
